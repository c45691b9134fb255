""" qnest/cli.py

Date: 2026-10-18

This file is part of qnest, a deterministic state-vector engine for
transferring, copying and nesting qubits. This file implements the
command line front end.

Usage:
  qnest [-v] [--precision N] dsiht (--inline LIST | --generator FILE)
  qnest transfer --from FILE --to FILE
  qnest nest --a V --b V --shots N --seed S [--histogram FILE]
  qnest copycheck --a V --b V [--c V --d V] [--sweep N] [--hand]
  qnest verify [--golden FILE]
Common: --output FILE (primary artifact, default stdout), --format.

Exit codes: 0 ok, 1 validation, 2 I/O (and usage), 3 verification failed.
Nothing is written when validation fails.

qnest is free software; you can redistribute it and/or modify
it under the terms of the GNU Lesser General Public License as published by
the Free Software Foundation; either version 2.1 of the License, or
(at your option) any later version.

qnest is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU Lesser General Public License for more details.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
# for unittests
import io
import tempfile
import unittest
from contextlib import redirect_stdout, redirect_stderr
# numpy
import numpy as np
# qnest
from .formutil import parse_floats, fmt_number, fmt_degrees, fmt_vector, \
    fmt_matrix, dump_json
from .shotrng import ShotStream, check_seed
from .statevec import QError, StateVector, Qubit, from_amplitudes, \
    QERR_NORM, QERR_PARSE, QERR_RANGE, QERR_DOCUMENT
from .heaptx import dsiht_chain, chain_matrix, transfer_unitary
from . import nesting, cloninglab, verify

__all__ = ('RunConfig', 'main', 'run', 'EXIT_OK', 'EXIT_VALIDATION',
           'EXIT_IO', 'EXIT_VERIFY')

log = logging.getLogger(__name__)

EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_VERIFY = range(4)
DEFAULT_PRECISION = 4
INPUT_TOL = 1e-3      # amplitudes typed with 4 decimals
TRANSCRIPT_LABEL = 1  # spawned stream of the transcript run


@dataclass(frozen=True)
class RunConfig:
    """ Parsed command line; one per process."""
    command: str
    output: str = None
    fmt: str = None
    precision: int = DEFAULT_PRECISION
    verbose: int = 0
    inline: str = None
    generator: str = None
    source: str = None
    target: str = None
    a: float = None
    b: float = None
    c: float = None
    d: float = None
    shots: int = None
    seed: int = None
    histogram: str = None
    renormalize: bool = False
    sweep: int = None
    hand: bool = False
    golden: str = None

    @classmethod
    def from_args(cls, ns):
        fields = cls.__dataclass_fields__
        args = {k: v for k, v in vars(ns).items() if k in fields}
        if args.get('fmt') is None:
            # sweeps are tables
            if args.get('sweep') is not None:
                args['fmt'] = 'csv'
            else:
                args['fmt'] = getattr(ns, 'default_fmt', None)
        return cls(**args)


def _parser():
    parser = argparse.ArgumentParser(
        prog='qnest',
        description='Deterministic state-vector engine: heap transforms, '
                    'qubit copiers and the nesting circuit.')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='INFO with -v, DEBUG with -vv (on stderr)')
    parser.add_argument('--precision', type=int, default=DEFAULT_PRECISION,
                        help='decimals in text output (default 4)')
    sub = parser.add_subparsers(dest='command', required=True)

    def command(name, summary, formats):
        p = sub.add_parser(name, help=summary)
        p.add_argument('--output', help='output file (default stdout)')
        if formats:
            p.add_argument('--format', dest='fmt', choices=formats,
                           help='default %s' % formats[0])
            p.set_defaults(default_fmt=formats[0])
        return p

    p = command('dsiht', 'rotation chain and matrix of a heap transform',
                ('json', 'text'))
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument('--inline', help='comma separated amplitudes')
    src.add_argument('--generator', help='state JSON file')

    p = command('transfer', 'unitary taking one state to another',
                ('json', 'text'))
    p.add_argument('--from', dest='source', required=True,
                   help='state JSON file')
    p.add_argument('--to', dest='target', required=True,
                   help='state JSON file')

    p = command('nest', 'run the nesting circuit and sample M', ())
    p.add_argument('--a', type=float, required=True)
    p.add_argument('--b', type=float, required=True)
    p.add_argument('--shots', type=int, required=True)
    p.add_argument('--seed', type=int)
    p.add_argument('--histogram', help='histogram CSV file (default stdout)')
    p.add_argument('--renormalize', action='store_true',
                   help='divide (a, b) by its norm')

    p = command('copycheck', 'fidelity of a qubit copier',
                ('json', 'text', 'csv'))
    p.add_argument('--a', type=float)
    p.add_argument('--b', type=float)
    p.add_argument('--c', type=float)
    p.add_argument('--d', type=float)
    p.add_argument('--sweep', type=int,
                   help='fidelity over N test angles (CSV)')
    p.add_argument('--hand', action='store_true',
                   help='use the hand-built Hadamard copier')

    p = command('verify', 'run the reproduction suite', ())
    p.add_argument('--golden', help='JSON file overriding golden fixtures')
    return parser


def _setup_logging(verbose):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(stream=sys.stderr, level=level,
                        format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger('qnest').setLevel(level)


def _load_json(path):
    with open(path, 'r') as f:
        return json.load(f)


def _emit(text, path):
    _emit_all((text, path))


def _emit_all(*outputs):
    """ Write (text, path) pairs; all files are opened before any write.

    A path of None means stdout. If a file cannot be opened, the files
    already opened by this call are removed.
    """
    handles = []
    try:
        for text, path in outputs:
            handles.append(None if path is None
                           else open(path, 'w', newline=''))
    except OSError:
        for f in handles:
            if f is not None:
                f.close()
                if os.path.exists(f.name):
                    os.remove(f.name)
        raise
    for (text, path), f in zip(outputs, handles):
        if f is None:
            sys.stdout.write(text)
        else:
            with f:
                f.write(text)


def _lenient_vector(text):
    """ Amplitudes typed by hand; renormalized within INPUT_TOL."""
    try:
        values = parse_floats(text)
    except ValueError as e:
        raise QError(QERR_PARSE, str(e))
    norm2 = float(np.dot(values, values))
    if abs(norm2 - 1) > INPUT_TOL:
        raise QError(QERR_NORM, "sum of squares %.6g" % norm2)
    if norm2 != 1:
        log.info("renormalizing input, sum of squares %.6g", norm2)
    return from_amplitudes(values, renormalize=True)


def _lenient_qubit(a, b, name):
    if a is None or b is None:
        raise QError(QERR_DOCUMENT, "%s needs both amplitudes" % name)
    norm2 = a*a + b*b
    if abs(norm2 - 1) > INPUT_TOL:
        raise QError(QERR_NORM, "%s: a^2 + b^2 = %.6g" % (name, norm2))
    return Qubit.normalized(a, b)


def cmd_dsiht(config):
    if config.inline is not None:
        generator = _lenient_vector(config.inline)
    else:
        generator = StateVector.from_doc(_load_json(config.generator))
    chain = dsiht_chain(generator.amplitudes)
    matrix = chain_matrix(chain)
    log.info("%d rotations on dimension %d", len(chain), chain.dim)
    if config.fmt == 'text':
        lines = ["generator %s" % fmt_vector(generator.amplitudes,
                                              config.precision),
                 "rotations (degrees)"]
        lines += ["  (%d,%d) %s" % (r.p, r.q, fmt_degrees(r.angle).rjust(7))
                  for r in chain.rotations]
        lines += ["matrix", fmt_matrix(matrix.entries, config.precision)]
        text = '\n'.join(lines) + '\n'
    else:
        text = dump_json({"generator": generator.to_doc(),
                          "chain": chain.to_doc(),
                          "matrix": matrix.to_doc()})
    _emit(text, config.output)
    return EXIT_OK


def cmd_transfer(config):
    source = StateVector.from_doc(_load_json(config.source))
    target = StateVector.from_doc(_load_json(config.target))
    u = transfer_unitary(source.amplitudes, target.amplitudes)
    residual = float(np.linalg.norm(u.apply(source.amplitudes) -
                                    target.amplitudes))
    if config.fmt == 'text':
        text = fmt_matrix(u.entries, config.precision) + '\n'
    else:
        text = dump_json(u.to_doc())
    _emit(text, config.output)
    note = "residual %.3e\n" % residual
    (sys.stdout if config.output else sys.stderr).write(note)
    return EXIT_OK


def cmd_nest(config):
    if config.seed is None:
        raise QError(QERR_RANGE, "--seed is required for sampling")
    try:
        check_seed(config.seed)
    except ValueError as e:
        raise QError(QERR_RANGE, str(e))
    if config.renormalize:
        q = Qubit.normalized(config.a, config.b)
    else:
        q = Qubit(config.a, config.b)
    hist = nesting.sample(q, config.shots, config.seed)
    run = nesting.run_pipeline(q, ShotStream(config.seed)
                               .spawn(TRANSCRIPT_LABEL))
    doc = nesting.transcript(run)
    doc["histogram"] = hist.to_doc()
    _emit_all((dump_json(doc), config.output),
              (hist.to_csv(), config.histogram))
    return EXIT_OK


def cmd_copycheck(config):
    if config.hand:
        s = 2 ** -0.5
        source = (Qubit(s, s) if config.a is None and config.b is None
                  else _lenient_qubit(config.a, config.b, "--a/--b"))
        copier = cloninglab.hadamard_copier()
    else:
        source = _lenient_qubit(config.a, config.b, "--a/--b")
        copier = cloninglab.copier_for(source)
    if config.sweep is not None:
        points = cloninglab.fidelity_sweep(copier, config.sweep, source)
        if config.fmt == 'json':
            text = dump_json({"copier": copier.to_doc(),
                              "built_for": source.to_doc(),
                              "points": [{"angle_degrees": p.angle_degrees,
                                          "fidelity": p.fidelity,
                                          "exact": p.exact}
                                         for p in points]})
        else:
            text = cloninglab.sweep_csv(points, config.precision)
        log.info("exact at %s degrees", cloninglab.exact_angles(points))
        _emit(text, config.output)
        return EXIT_OK
    if config.c is None and config.d is None:
        test = source
    else:
        test = _lenient_qubit(config.c, config.d, "--c/--d")
    report = cloninglab.clone_fidelity(copier, test, source)
    if config.fmt == 'json':
        text = dump_json(report.to_doc())
    else:
        p = config.precision
        rows = [("fidelity", fmt_number(report.fidelity, p)),
                ("overlap", fmt_number(report.overlap, p)),
                ("exact", "yes" if report.exact else "no")]
        if config.fmt == 'csv':
            text = "quantity,value\n" + ''.join("%s,%s\n" % r for r in rows)
        else:
            text = ''.join("%s %s\n" % r for r in rows)
    _emit(text, config.output)
    return EXIT_OK


def cmd_verify(config):
    golden = None
    if config.golden is not None:
        golden = _load_json(config.golden)
        if not isinstance(golden, dict):
            raise QError(QERR_DOCUMENT, "golden file must hold a mapping")
    results = verify.run_suite(golden)
    _emit('\n'.join(verify.report_lines(results)) + '\n', config.output)
    return EXIT_OK if verify.all_passed(results) else EXIT_VERIFY


COMMANDS = {
    'dsiht': cmd_dsiht,
    'transfer': cmd_transfer,
    'nest': cmd_nest,
    'copycheck': cmd_copycheck,
    'verify': cmd_verify,
}


def main(argv=None):
    """ Run one command; return the exit code."""
    try:
        ns = _parser().parse_args(argv)
    except SystemExit as e:
        return e.code
    config = RunConfig.from_args(ns)
    _setup_logging(config.verbose)
    try:
        return COMMANDS[config.command](config)
    except QError as e:
        sys.stderr.write("qnest %s: error: %s\n" % (config.command, e))
        return EXIT_VALIDATION
    except (OSError, json.JSONDecodeError) as e:
        sys.stderr.write("qnest %s: I/O error: %s\n" % (config.command, e))
        return EXIT_IO


def run():
    """ Console script entry point."""
    sys.exit(main())


# Unitary tests
class TestCli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = self.tmp.name

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.dir, name)

    def call(self, *argv):
        """ Return (exit code, stdout, stderr)."""
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def write_state(self, name, amps):
        with open(self.path(name), 'w') as f:
            json.dump(StateVector(amps).to_doc(), f)
        return self.path(name)

    def read(self, name):
        with open(self.path(name)) as f:
            return f.read()

    def test_dsiht_bell(self):
        code, out, err = self.call('dsiht', '--inline', '0.7071,0,0,0.7071',
                                   '--format', 'text')
        self.assertEqual(code, EXIT_OK)
        self.assertIn("(0,3)  -45.00", out)
        self.assertIn("-0.7071", out)
        code, out, err = self.call('dsiht', '--inline', '0.7071,0,0,0.7071')
        doc = json.loads(out)
        degrees = [r["degrees"] for r in doc["chain"]["rotations"]]
        self.assertEqual(len(degrees), 3)
        self.assertAlmostEqual(degrees[2], -45.0, places=9)

    def test_dsiht_identity(self):
        code, out, err = self.call('dsiht', '--inline', '1,0,0,0')
        self.assertEqual(code, EXIT_OK)
        rows = json.loads(out)["matrix"]["rows"]
        self.assertTrue(np.array_equal(rows, np.eye(4)))

    def test_dsiht_angles(self):
        code, out, err = self.call('--precision', '2', 'dsiht', '--inline',
                                   '0.36,0.48,0.48,0.64', '--format', 'text')
        self.assertEqual(code, EXIT_OK)
        for a in ("-53.13", "-38.66", "-39.79"):
            self.assertIn(a, out)

    def test_dsiht_file(self):
        self.write_state('g.json', [0.5] * 4)
        code, out, err = self.call('dsiht', '--generator', self.path('g.json'),
                                   '--output', self.path('chain.json'))
        self.assertEqual((code, out), (EXIT_OK, ''))
        doc = json.loads(self.read('chain.json'))
        self.assertEqual(doc["matrix"]["dim"], 4)

    def test_dsiht_errors(self):
        self.assertEqual(self.call('dsiht', '--inline', '1,0,0')[0],
                         EXIT_VALIDATION)
        self.assertEqual(self.call('dsiht', '--inline', '1,1,0,0')[0],
                         EXIT_VALIDATION)
        self.assertEqual(self.call('dsiht', '--inline', '1,x')[0],
                         EXIT_VALIDATION)
        self.assertEqual(self.call('dsiht', '--generator',
                                   self.path('missing.json'))[0], EXIT_IO)
        with open(self.path('bad.json'), 'w') as f:
            f.write('{"qubits": 2,')
        self.assertEqual(self.call('dsiht', '--generator',
                                   self.path('bad.json'))[0], EXIT_IO)
        self.assertEqual(self.call('dsiht')[0], 2)

    def test_transfer(self):
        s = 2 ** -0.5
        src = self.write_state('bell.json', [s, 0, 0, s])
        dst = self.write_state('uniform.json', [0.5] * 4)
        code, out, err = self.call('transfer', '--from', src, '--to', dst,
                                   '--output', self.path('u.json'))
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("residual "))
        self.assertLess(float(out.split()[1]), 1e-10)
        rows = json.loads(self.read('u.json'))["rows"]
        golden = verify.GOLDEN["bell_uniform_transfer"]
        self.assertLess(np.max(np.abs(np.array(rows) - golden)), 5e-5)

    def test_transfer_same(self):
        src = self.write_state('a.json', [0.6, 0.8])
        code, out, err = self.call('transfer', '--from', src, '--to', src)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["dim"], 2)
        self.assertLess(float(err.split()[1]), 1e-12)

    def test_transfer_errors(self):
        src = self.write_state('a.json', [0.6, 0.8])
        dst = self.write_state('b.json', [0.5] * 4)
        code, out, err = self.call('transfer', '--from', src, '--to', dst,
                                   '--output', self.path('u.json'))
        self.assertEqual(code, EXIT_VALIDATION)
        self.assertFalse(os.path.exists(self.path('u.json')))
        with open(self.path('c.json'), 'w') as f:
            json.dump({"qubits": 1, "amplitudes": [1, 1]}, f)
        self.assertEqual(self.call('transfer', '--from', src, '--to',
                                   self.path('c.json'))[0], EXIT_VALIDATION)

    def test_nest(self):
        args = ('nest', '--a', '0.6', '--b', '0.8', '--shots', '10000',
                '--seed', '42')
        code, out, err = self.call(*(args + ('--output', self.path('t1.json'),
                                             '--histogram',
                                             self.path('h1.csv'))))
        self.assertEqual(code, EXIT_OK)
        lines = self.read('h1.csv').splitlines()
        self.assertEqual(lines[0], "outcome,count,frequency")
        f0 = float(lines[1].split(',')[2])
        self.assertTrue(0.485 <= f0 <= 0.515)
        self.call(*(args + ('--output', self.path('t2.json'),
                            '--histogram', self.path('h2.csv'))))
        self.assertEqual(self.read('t1.json'), self.read('t2.json'))
        self.assertEqual(self.read('h1.csv'), self.read('h2.csv'))

    def test_nest_transcript(self):
        code, out, err = self.call('nest', '--a', '1', '--b', '0', '--shots',
                                   '1', '--seed', '7', '--output',
                                   self.path('t.json'), '--histogram',
                                   self.path('h.csv'))
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(self.read('t.json'))
        s = 2 ** -0.5
        self.assertLess(np.max(np.abs(np.array(doc["xi"]["amplitudes"]) -
                                      [s, 0, 0, 0, s, 0, 0, 0])), 1e-12)
        self.assertEqual(doc["histogram"]["shots"], 1)
        self.assertEqual(len(self.read('h.csv').splitlines()), 3)

    def test_nest_errors(self):
        code, out, err = self.call('nest', '--a', '0.6', '--b', '0.8',
                                   '--shots', '10', '--output',
                                   self.path('t.json'))
        self.assertEqual(code, EXIT_VALIDATION)
        self.assertIn("--seed", err)
        self.assertFalse(os.path.exists(self.path('t.json')))
        self.assertEqual(self.call('nest', '--a', '0.6', '--b', '0.8',
                                   '--shots', '0', '--seed', '1')[0],
                         EXIT_VALIDATION)
        self.assertEqual(self.call('nest', '--a', '0.6', '--b', '0.6',
                                   '--shots', '5', '--seed', '1')[0],
                         EXIT_VALIDATION)
        code, out, err = self.call('nest', '--a', '0.6', '--b', '0.6',
                                   '--shots', '5', '--seed', '1',
                                   '--renormalize')
        self.assertEqual(code, EXIT_OK)

    def test_nest_unwritable_histogram(self):
        code, out, err = self.call('nest', '--a', '0.6', '--b', '0.8',
                                   '--shots', '10', '--seed', '3',
                                   '--output', self.path('t.json'),
                                   '--histogram',
                                   self.path(os.path.join('no', 'h.csv')))
        self.assertEqual(code, EXIT_IO)
        self.assertFalse(os.path.exists(self.path('t.json')))

    def test_copycheck_hand(self):
        code, out, err = self.call('copycheck', '--a', '0.7071', '--b',
                                   '0.7071', '--c', '1', '--d', '0',
                                   '--hand', '--format', 'text')
        self.assertEqual(code, EXIT_OK)
        self.assertIn("fidelity 0.5000", out)
        self.assertIn("exact no", out)

    def test_copycheck_source(self):
        code, out, err = self.call('copycheck', '--a', '0.6', '--b', '0.8')
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertTrue(doc["exact"])
        self.assertAlmostEqual(doc["fidelity"], 1.0, places=9)

    def test_copycheck_sweep(self):
        code, out, err = self.call('copycheck', '--a', '0.6', '--b', '0.8',
                                   '--sweep', '360', '--format', 'csv')
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "angle_degrees,fidelity,exact")
        self.assertEqual(len(lines), 361)

    def test_copycheck_sweep_default_csv(self):
        code, out, err = self.call('copycheck', '--a', '0.6', '--b', '0.8',
                                   '--sweep', '360')
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "angle_degrees,fidelity,exact")
        self.assertEqual(len(lines), 361)
        code, out, err = self.call('copycheck', '--a', '0.6', '--b', '0.8',
                                   '--sweep', '8', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(json.loads(out)["points"]), 8)

    def test_copycheck_errors(self):
        self.assertEqual(self.call('copycheck', '--a', '0.6')[0],
                         EXIT_VALIDATION)
        self.assertEqual(self.call('copycheck', '--a', '0.6', '--b', '0.8',
                                   '--c', '1')[0], EXIT_VALIDATION)
        self.assertEqual(self.call('copycheck', '--a', '0.6', '--b', '0.8',
                                   '--sweep', '1')[0], EXIT_VALIDATION)

    def test_verify(self):
        code, out, err = self.call('verify')
        self.assertEqual(code, EXIT_OK)
        self.assertIn("PASS  Bell->uniform transfer matrix max|d| < 5e-5",
                      out)
        bad = [list(r) for r in verify.GOLDEN["bell_uniform_transfer"]]
        bad[0][0] = 0.6577
        with open(self.path('golden.json'), 'w') as f:
            json.dump({"bell_uniform_transfer": bad}, f)
        code, out, err = self.call('verify', '--golden',
                                   self.path('golden.json'))
        self.assertEqual(code, EXIT_VERIFY)
        self.assertIn("FAIL  Bell->uniform transfer matrix", out)
        self.assertEqual(self.call('verify', '--golden',
                                   self.path('none.json'))[0], EXIT_IO)
        with open(self.path('text.json'), 'w') as f:
            json.dump({"bell_heap": [["x"] * 4] * 4}, f)
        code, out, err = self.call('verify', '--golden',
                                   self.path('text.json'))
        self.assertEqual(code, EXIT_VERIFY)
        self.assertIn("FAIL  Bell heap matrix", out)

    def test_config(self):
        ns = _parser().parse_args(['nest', '--a', '1', '--b', '0',
                                   '--shots', '3', '--seed', '5'])
        config = RunConfig.from_args(ns)
        self.assertEqual((config.command, config.shots, config.seed),
                         ('nest', 3, 5))
        self.assertEqual(config.precision, DEFAULT_PRECISION)

if __name__ == '__main__':
    unittest.main()
