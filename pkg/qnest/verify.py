""" qnest/verify.py

Date: 2026-10-18

This file is part of qnest, a deterministic state-vector engine for
transferring, copying and nesting qubits. This file implements the
reproduction suite: golden matrices printed to 4 decimals and the
numerical claims about transfers, copiers and the nesting circuit,
checked against the engine at run time.

Each criterion is a function of the golden fixtures returning
(passed, measured, bound). run_suite() evaluates them in order; a
golden mapping passed to it overrides fixtures by name.

qnest is free software; you can redistribute it and/or modify
it under the terms of the GNU Lesser General Public License as published by
the Free Software Foundation; either version 2.1 of the License, or
(at your option) any later version.

qnest is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU Lesser General Public License for more details.
"""

import logging
import math
import unittest
from dataclasses import dataclass
# numpy
import numpy as np
# qnest
from .statevec import QError, Qubit, tensor, basis_state, project, \
    random_state, DERIVED_TOL, QERR_DOCUMENT
from .heaptx import dsiht_chain, chain_matrix, apply_chain, \
    transfer_unitary, random_unit, UNITARY_TOL
from .gates import Gate
from .nesting import build_xi, measure_and_extract, sample
from .shotrng import ShotStream
from . import cloninglab

__all__ = ('GOLDEN', 'CRITERIA', 'CheckResult', 'run_suite', 'all_passed',
           'report_lines', 'GOLDEN_TOL')

log = logging.getLogger(__name__)

GOLDEN_TOL = 5e-5        # fixtures printed to 4 decimals
ANGLE_TOL = 0.01         # degrees
SHOT_TOL = 0.015         # 3 sigma of 10000 fair draws
PROPERTY_DIMS = (2, 4, 8)

GOLDEN = {
    "bell_heap": [[0.7071, 0, 0, 0.7071],
                  [0, 1, 0, 0],
                  [0, 0, 1, 0],
                  [-0.7071, 0, 0, 0.7071]],
    "uniform_heap": [[0.5, 0.5, 0.5, 0.5],
                     [-0.7071, 0.7071, 0, 0],
                     [-0.4082, -0.4082, 0.8165, 0],
                     [-0.2887, -0.2887, -0.2887, 0.8660]],
    "uniform_heap_factors": [
        [[0.8660, 0, 0, 0.5],
         [0, 1, 0, 0],
         [0, 0, 1, 0],
         [-0.5, 0, 0, 0.8660]],
        [[0.8165, 0, 0.5774, 0],
         [0, 1, 0, 0],
         [-0.5774, 0, 0.8165, 0],
         [0, 0, 0, 1]],
        [[0.7071, 0.7071, 0, 0],
         [-0.7071, 0.7071, 0, 0],
         [0, 0, 1, 0],
         [0, 0, 0, 1]]],
    "bell_uniform_transfer": [[0.5577, -0.7071, -0.4082, 0.1494],
                              [0.5577, 0.7071, -0.4082, 0.1494],
                              [0.5577, 0, 0.8165, 0.1494],
                              [-0.2588, 0, 0, 0.9659]],
    "three_four_copier": [[0.5159, -0.80, 0.0631, -0.2999],
                          [0.6878, 0.60, 0.0841, -0.3998],
                          [-0.3367, 0, 0.8525, -0.3998],
                          [0.3840, 0, 0.5120, 0.7684]],
    "three_four_angles": [53.13, 38.66, 39.79],
    "strong_copier": [list(r) for r in cloninglab.STRONG_COPIER_ROWS],
}

SQRT_HALF = 1 / math.sqrt(2)
BELL = [SQRT_HALF, 0, 0, SQRT_HALF]
UNIFORM = [0.5] * 4
THREE_FOUR = (0.6, 0.8)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    bound: float
    detail: str = ''

    def line(self):
        s = "%s  %s: measured %s, bound %s" % (
            "PASS" if self.passed else "FAIL", self.name,
            "%.3g" % self.measured, "%.3g" % self.bound)
        if self.detail:
            s += " (%s)" % self.detail
        return s


def _fixture(golden, name, ndim):
    """ golden[name] as a float array of ndim dimensions."""
    try:
        value = np.asarray(golden[name], dtype=float)
    except (TypeError, ValueError) as e:
        raise QError(QERR_DOCUMENT, "golden %s: %s" % (name, e))
    if value.ndim != ndim:
        raise QError(QERR_DOCUMENT, "golden %s has %d dimensions, not %d"
                     % (name, value.ndim, ndim))
    return value


def _golden_deviation(matrix, golden, name):
    rows = _fixture(golden, name, 2)
    if rows.shape != matrix.entries.shape:
        raise QError(QERR_DOCUMENT, "golden matrix of shape %s" %
                     (rows.shape,))
    return matrix.max_deviation(rows)


def _within(measured, bound):
    return measured <= bound, measured, bound


def check_bell_heap(golden):
    m = chain_matrix(dsiht_chain(BELL))
    return _within(_golden_deviation(m, golden, "bell_heap"), GOLDEN_TOL)


def check_uniform_heap(golden):
    chain = dsiht_chain(UNIFORM)
    dev = _golden_deviation(chain_matrix(chain), golden, "uniform_heap")
    factors = _fixture(golden, "uniform_heap_factors", 3)
    if factors.shape != (len(chain), chain.dim, chain.dim):
        raise QError(QERR_DOCUMENT, "golden factors of shape %s for %d "
                     "rotations" % (factors.shape, len(chain)))
    for f, rows in zip(chain.factors(), factors):
        dev = max(dev, float(np.max(np.abs(f - rows))))
    return _within(dev, GOLDEN_TOL)


def check_bell_uniform_transfer(golden):
    u = transfer_unitary(BELL, UNIFORM)
    return _within(_golden_deviation(u, golden, "bell_uniform_transfer"),
                   GOLDEN_TOL)


def check_three_four_copier(golden):
    u = cloninglab.copier_for(THREE_FOUR)
    return _within(_golden_deviation(u, golden, "three_four_copier"),
                   GOLDEN_TOL)


def check_three_four_angles(golden):
    y = cloninglab.doubled_state(THREE_FOUR).amplitudes
    degrees = [abs(d) for d in dsiht_chain(y).degrees()]
    want = _fixture(golden, "three_four_angles", 1)
    if len(want) != len(degrees):
        raise QError(QERR_DOCUMENT, "%d golden angles for %d rotations"
                     % (len(want), len(degrees)))
    return _within(max(abs(d - w) for d, w in zip(degrees, want)),
                   ANGLE_TOL)


def check_strong_copier(golden):
    residual, det_gap = cloninglab.check_strong_copier(
        _fixture(golden, "strong_copier", 2))
    bound = cloninglab.FIXTURE_CLAIM_TOL
    return _within(max(residual, det_gap), bound)


def check_hadamard_copier(golden):
    u = cloninglab.hadamard_copier()
    s = SQRT_HALF
    dev = max(float(np.max(np.abs(u.apply([s, 0, s, 0]) - 0.5))),
              float(np.max(np.abs(u.apply([s, 0, -s, 0]) -
                                  np.array([0.5, -0.5, -0.5, 0.5])))))
    return _within(dev, DERIVED_TOL)


def check_factorizations(golden):
    a = cloninglab.bell_uniform_matrix()
    dev = a.max_deviation(np.linalg.multi_dot(
        cloninglab.bell_uniform_factors()))
    u = cloninglab.hadamard_copier()
    dev = max(dev, u.max_deviation(a.entries.dot(cloninglab.CNOT_P1)))
    return _within(dev, DERIVED_TOL)


def check_nesting(golden):
    rng = np.random.default_rng(2024)
    stream = ShotStream(2024)
    dev = 0.0
    for i in range(1000):
        q = Qubit.from_angle(rng.uniform(0, 2*math.pi))
        xi = build_xi(q)
        closed = SQRT_HALF * np.array([q.a, 0, q.b, 0, q.a, 0, q.b, 0])
        dev = max(dev, float(np.max(np.abs(xi.amplitudes - closed))))
        if np.any(xi.amplitudes[1::2] != 0):
            return False, math.inf, DERIVED_TOL
        p0, _ = project(xi, 1, 0)
        dev = max(dev, abs(p0 - 0.5))
        m, doubled, _ = measure_and_extract(xi, stream)
        ideal = tensor(basis_state(1, m), q.as_state())
        dev = max(dev, float(np.max(np.abs(doubled.amplitudes -
                                           ideal.amplitudes))))
    return _within(dev, DERIVED_TOL)


def check_sampling(golden):
    hist = sample(Qubit(*THREE_FOUR), 10000, 42)
    again = sample(Qubit(*THREE_FOUR), 10000, 42)
    if hist.to_csv() != again.to_csv():
        return False, math.inf, SHOT_TOL
    return _within(abs(hist.frequency(0) - 0.5), SHOT_TOL)


def check_cnot_counterexample(golden):
    fidelity, gap = cloninglab.cnot_counterexample()
    if gap < 0.5 - DERIVED_TOL:
        return False, gap, 0.5
    return _within(abs(fidelity - 0.5), DERIVED_TOL)


def check_no_universal_copier(golden):
    """ copier_for(q) copies q and fails 10 degrees away, 100 random q."""
    rng = np.random.default_rng(10)
    worst_self = 0.0
    for i in range(100):
        t = rng.uniform(0, 2*math.pi)
        q = Qubit.from_angle(t)
        u = cloninglab.copier_for(q)
        worst_self = max(worst_self,
                         abs(cloninglab.clone_fidelity(u, q).fidelity - 1))
        off = min(cloninglab.clone_fidelity(u, Qubit.from_angle(t + d))
                  .fidelity for d in (math.radians(10), -math.radians(10)))
        if off > 1 - 1e-6:
            return False, off, 1 - 1e-6
    return _within(worst_self, cloninglab.EXACT_TOL)


def check_unitarity(golden):
    rng = np.random.default_rng(1)
    dev = 0.0
    for dim in PROPERTY_DIMS:
        for i in range(50):
            u = transfer_unitary(random_unit(rng, dim), random_unit(rng, dim))
            dev = max(dev, float(np.max(np.abs(
                u.entries.T.dot(u.entries) - np.eye(dim)))))
    return _within(dev, UNITARY_TOL)


def check_chain_oracle(golden):
    rng = np.random.default_rng(2)
    dev = 0.0
    for dim in PROPERTY_DIMS:
        for i in range(50):
            chain = dsiht_chain(random_unit(rng, dim))
            v = random_unit(rng, dim)
            dev = max(dev, float(np.max(np.abs(
                apply_chain(chain, v) - chain_matrix(chain).apply(v)))))
    return _within(dev, DERIVED_TOL)


def _property_gates(n):
    gates = [Gate.hadamard(k) for k in range(1, n+1)]
    if n >= 2:
        gates += [Gate.cnot(1, n), Gate.cnot(n, 1)]
    if n >= 3:
        gates += [Gate.xor_cnot(1, 2, 3), Gate.toffoli(1, 2, 3)]
    return gates


def check_involutions(golden):
    rng = np.random.default_rng(3)
    dev = 0.0
    for dim in PROPERTY_DIMS:
        n = dim.bit_length() - 1
        for i in range(20):
            st = random_state(rng, n)
            for g in _property_gates(n):
                dev = max(dev, float(np.max(np.abs(
                    g.apply(g.apply(st)).amplitudes - st.amplitudes))))
    return _within(dev, DERIVED_TOL)


def check_norms(golden):
    rng = np.random.default_rng(4)
    dev = 0.0
    for dim in PROPERTY_DIMS:
        n = dim.bit_length() - 1
        for i in range(20):
            st = random_state(rng, n)
            for g in _property_gates(n):
                out = g.apply(st).amplitudes
                dev = max(dev, abs(float(np.dot(out, out)) - 1))
    return _within(dev, DERIVED_TOL)


def check_completeness(golden):
    rng = np.random.default_rng(5)
    dev = 0.0
    for dim in PROPERTY_DIMS:
        n = dim.bit_length() - 1
        for i in range(20):
            st = random_state(rng, n)
            for k in range(1, n+1):
                p0, _ = project(st, k, 0)
                p1, _ = project(st, k, 1)
                dev = max(dev, abs(p0 + p1 - 1))
    return _within(dev, DERIVED_TOL)


CRITERIA = [
    ("Bell heap matrix max|d| < 5e-5", check_bell_heap),
    ("uniform heap matrix and factors max|d| < 5e-5", check_uniform_heap),
    ("Bell->uniform transfer matrix max|d| < 5e-5",
     check_bell_uniform_transfer),
    ("three-four copier matrix max|d| < 5e-5", check_three_four_copier),
    ("three-four angle magnitudes max|d| < 0.01 deg",
     check_three_four_angles),
    ("strong copier |Ux - y| and |det - 1| <= 1e-3", check_strong_copier),
    ("Hadamard copier on both Hadamard qubits", check_hadamard_copier),
    ("Hadamard copier = A P1 and A factorization", check_factorizations),
    ("nesting circuit, 1000 random qubits", check_nesting),
    ("10000 shots, seed 42, |f0 - 0.5| <= 0.015", check_sampling),
    ("CNOT copy of Hadamard qubit, overlap^2 = 0.5",
     check_cnot_counterexample),
    ("copier_for exact on source, fails 10 deg away",
     check_no_universal_copier),
    ("unitarity of transfers", check_unitarity),
    ("rotation chain vs dense matrix", check_chain_oracle),
    ("gate involutions", check_involutions),
    ("norm preservation", check_norms),
    ("projection completeness", check_completeness),
]


def run_suite(golden=None, criteria=None):
    """ Evaluate criteria in order; return list of CheckResult.
golden   - mapping overriding GOLDEN entries by name
criteria - subset of CRITERIA (default all)"""
    fixtures = dict(GOLDEN)
    if golden:
        unknown = set(golden) - set(GOLDEN)
        if unknown:
            raise QError(QERR_DOCUMENT, "unknown golden fixtures %s"
                         % ', '.join(sorted(unknown)))
        fixtures.update(golden)
    results = []
    for name, check in (CRITERIA if criteria is None else criteria):
        try:
            passed, measured, bound = check(fixtures)
            res = CheckResult(name, bool(passed), float(measured),
                              float(bound))
        except QError as e:
            res = CheckResult(name, False, math.inf, math.nan, str(e))
        log.info(res.line())
        results.append(res)
    return results


def all_passed(results):
    return all(r.passed for r in results)


def report_lines(results):
    lines = [r.line() for r in results]
    npass = sum(r.passed for r in results)
    lines.append("%d of %d criteria passed" % (npass, len(results)))
    return lines


# Unitary tests
class TestVerify(unittest.TestCase):
    def test_suite_passes(self):
        results = run_suite()
        self.assertEqual(len(results), len(CRITERIA))
        for r in results:
            self.assertTrue(r.passed, r.line())
        self.assertTrue(all_passed(results))
        self.assertEqual(report_lines(results)[-1],
                         "%d of %d criteria passed" % (len(CRITERIA),
                                                       len(CRITERIA)))

    def test_corrupted_fixture(self):
        bad = [list(r) for r in GOLDEN["bell_uniform_transfer"]]
        bad[3][3] = 0.9759
        subset = CRITERIA[:3]
        results = run_suite({"bell_uniform_transfer": bad}, subset)
        self.assertEqual([r.passed for r in results], [True, True, False])
        self.assertTrue(results[2].line().startswith(
            "FAIL  Bell->uniform transfer matrix"))
        self.assertAlmostEqual(results[2].measured, 0.01, places=3)

    def test_malformed_fixture(self):
        results = run_suite({"strong_copier": [[1, 1], [0, 1]]},
                            [CRITERIA[5]])
        self.assertFalse(results[0].passed)
        self.assertTrue(results[0].detail)
        results = run_suite({"three_four_angles": [53.13]}, [CRITERIA[4]])
        self.assertFalse(results[0].passed)
        self.assertRaises(QError, run_suite, {"no_such_matrix": []})

    def test_non_numeric_fixture(self):
        cases = [({"bell_heap": [["x"] * 4] * 4}, 0),
                 ({"uniform_heap_factors": [[1, 0], [0, 1]]}, 1),
                 ({"uniform_heap_factors": [np.eye(2).tolist()] * 3}, 1),
                 ({"three_four_copier": [[1, 0], [0]]}, 3),
                 ({"three_four_angles": 5}, 4),
                 ({"strong_copier": "identity"}, 5)]
        for golden, index in cases:
            results = run_suite(golden, [CRITERIA[index]])
            self.assertFalse(results[0].passed, golden)
            self.assertIn("golden", results[0].detail)

    def test_line_format(self):
        r = CheckResult("x", True, 1e-13, 1e-12)
        self.assertEqual(r.line(), "PASS  x: measured 1e-13, bound 1e-12")

if __name__ == '__main__':
    unittest.main()
