""" qnest/nesting.py

Date: 2026-10-18

This file is part of qnest, a deterministic state-vector engine for
transferring, copying and nesting qubits. This file implements the
three-qubit nesting circuit: a qubit |phi> = a|0> + b|1> is entangled
with two ancillas by CNOT, Hadamard, CNOT and 2-XOR gates, the first
qubit is measured, and the doubled-qubit state |M>|phi> is extracted.

Stages, qubit 1 first (msb-first):
  psi = CNOT(|phi>|0>)                  = a|00> + b|11>
  chi = CNOT(1,3) (H|0>) psi            = (a|000> + b|011> + a|101> + b|110>)/sqrt2
  xi  = 2-XOR(1,2 -> 3) chi             = (a|000> + b|010> + a|100> + b|110>)/sqrt2
Measuring qubit 1 of xi gives M = 0 or 1 with probability 1/2 each
for every (a, b); the remaining qubits are |M>|phi> and a residual |0>.

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
from .formutil import csv_text, fmt_number
from .shotrng import ShotStream, check_seed
from .statevec import QError, StateVector, Qubit, MeasurementRecord, \
    basis_state, tensor, inner, project, measure, ORDERING, DERIVED_TOL, \
    QERR_DIMENSION, QERR_STRUCTURE, QERR_SHOTS, QERR_RANGE
from .gates import Gate, apply_cnot, run_circuit, circuit_to_doc

__all__ = ('NestingRun', 'ShotHistogram', 'circuit', 'stages', 'build_xi',
           'measure_and_extract', 'run_pipeline', 'recovered_qubit',
           'sample', 'doubled_qubit_measurement', 'transcript')

log = logging.getLogger(__name__)

STRUCTURE_TOL = 1e-12   # P(third qubit = 1) allowed in xi
DOUBLED_TOL = 1e-9      # outer-square check of doubled states
MEASURED_QUBIT = 1


@dataclass(frozen=True)
class NestingRun:
    """ One pass through the circuit, every stage kept."""
    input: Qubit
    psi: StateVector
    chi: StateVector
    xi: StateVector
    record: MeasurementRecord
    extracted: StateVector
    residual: StateVector

    @property
    def outcome(self):
        return self.record.outcome


@dataclass(frozen=True)
class ShotHistogram:
    """ Counts of the measured bit M over repeated runs."""
    shots: int
    counts: tuple
    seed: int

    def __post_init__(self):
        assert sum(self.counts) == self.shots, "counts do not sum to shots"

    def frequency(self, outcome):
        return self.counts[outcome] / self.shots

    def to_csv(self):
        return csv_text(('outcome', 'count', 'frequency'),
                        [(m, self.counts[m], fmt_number(self.frequency(m), 6))
                         for m in (0, 1)])

    def to_doc(self):
        return {"shots": self.shots, "seed": self.seed,
                "counts": list(self.counts)}


def _as_qubit(q):
    if isinstance(q, Qubit):
        return q
    a, b = q
    return Qubit(a, b)


def circuit():
    """ Gate list taking |0>|phi>|0> to xi."""
    return [Gate.cnot(2, 3), Gate.hadamard(1), Gate.cnot(1, 3),
            Gate.xor_cnot(1, 2, 3)]


def stages(q):
    """ Return (psi, chi, xi) for qubit q."""
    q = _as_qubit(q)
    zero = basis_state(1, 0)
    psi = apply_cnot(tensor(q.as_state(), zero), 1, 2)
    log.debug("psi = %r", psi)
    gates = circuit()
    chi = run_circuit(tensor(zero, psi), gates[1:3])
    log.debug("chi = %r", chi)
    xi = gates[3].apply(chi)
    log.debug("xi = %r", xi)
    return psi, chi, xi


def build_xi(q):
    """ The nested three-qubit state (a|000>+b|010>+a|100>+b|110>)/sqrt2."""
    return stages(q)[2]


def _check_xi(xi):
    if xi.num_qubits != 3:
        raise QError(QERR_DIMENSION, "nested state has 3 qubits, got %d"
                     % xi.num_qubits)
    p1, _ = project(xi, 3, 1)
    if p1 > STRUCTURE_TOL:
        raise QError(QERR_STRUCTURE, "third qubit is 1 with probability %.3g"
                     % p1)


def _measure_xi(xi, rng):
    _check_xi(xi)
    record = measure(xi, MEASURED_QUBIT, rng)
    # drop the third qubit, known to be |0>
    doubled = StateVector(record.post_state.amplitudes[0::2])
    log.debug("M = %d, doubled = %r", record.outcome, doubled)
    return record, doubled, basis_state(1, 0)


def measure_and_extract(xi, rng):
    """ Measure qubit 1 of xi.
Return (M, doubled, residual): doubled is |M>|phi> on two qubits,
residual the third qubit |0>."""
    record, doubled, residual = _measure_xi(xi, rng)
    return record.outcome, doubled, residual


def run_pipeline(q, rng):
    """ Build xi for q, measure, extract; return NestingRun."""
    q = _as_qubit(q)
    psi, chi, xi = stages(q)
    record, doubled, residual = _measure_xi(xi, rng)
    return NestingRun(q, psi, chi, xi, record, doubled, residual)


def recovered_qubit(doubled, outcome):
    """ Read (a, b) back from the slots of |M>|phi>."""
    if doubled.num_qubits != 2:
        raise QError(QERR_DIMENSION, "doubled state has 2 qubits, got %d"
                     % doubled.num_qubits)
    if outcome not in (0, 1):
        raise QError(QERR_RANGE, "outcome must be 0 or 1, got %r" % outcome)
    a, b = doubled.amplitudes[2*outcome:2*outcome+2]
    return Qubit(a, b)


def sample(q, shots, seed):
    """ Histogram of M over shots runs with the stream seeded by seed."""
    if isinstance(shots, bool) or not isinstance(shots, int) or shots < 1:
        raise QError(QERR_SHOTS, "got %r" % (shots,))
    try:
        check_seed(seed)
    except ValueError as e:
        raise QError(QERR_RANGE, str(e))
    q = _as_qubit(q)
    xi = build_xi(q)
    rng = ShotStream(seed)
    counts = [0, 0]
    for i in range(shots):
        m, _, _ = measure_and_extract(xi, rng)
        counts[m] += 1
    hist = ShotHistogram(shots, tuple(counts), seed)
    log.info("%d shots, seed %d: M=0 %d, M=1 %d", shots, seed, *counts)
    return hist


def doubled_qubit_measurement(phi2, rng):
    """ Measure qubit 1 of a doubled state a^2|00>+ab|01>+ab|10>+b^2|11>.
Return (bit, post_state): 0 with probability a^2 collapsing to
a|00>+b|01>, 1 with probability b^2 collapsing to a|10>+b|11> (up to
a global sign)."""
    if phi2.num_qubits != 2:
        raise QError(QERR_DIMENSION, "doubled state has 2 qubits, got %d"
                     % phi2.num_qubits)
    v = phi2.amplitudes
    a = math.sqrt(max(v[0], 0.0))
    b = v[1] / a if a > 0 else math.sqrt(max(v[3], 0.0))
    dev = float(np.max(np.abs(np.kron([a, b], [a, b]) - v)))
    if dev > DOUBLED_TOL:
        raise QError(QERR_STRUCTURE, "not a doubled qubit, deviation %.3g"
                     % dev)
    record = measure(phi2, 1, rng)
    return record.outcome, record.post_state


def transcript(run):
    """ JSON document of a NestingRun."""
    rec = recovered_qubit(run.extracted, run.outcome)
    return {"ordering": ORDERING,
            "input": run.input.to_doc(),
            "circuit": circuit_to_doc(circuit()),
            "psi": run.psi.to_doc(),
            "chi": run.chi.to_doc(),
            "xi": run.xi.to_doc(),
            "measurement": run.record.to_doc(),
            "extracted": run.extracted.to_doc(),
            "residual": run.residual.to_doc(),
            "recovered": rec.to_doc()}


# Unitary tests
class FixedDraw(object):
    """ Stream stub returning a constant uniform() (tests only)."""
    def __init__(self, u):
        self.u = u

    def uniform(self):
        return self.u


class TestNesting(unittest.TestCase):
    s = 1 / math.sqrt(2)

    def closed_form(self, a, b):
        return self.s * np.array([a, 0, b, 0, a, 0, b, 0])

    def test_three_four(self):
        xi = build_xi(Qubit(0.6, 0.8))
        self.assertTrue(xi.allclose(self.closed_form(0.6, 0.8)))

    def test_stages(self):
        a, b, s = 0.6, 0.8, self.s
        psi, chi, xi = stages((a, b))
        self.assertTrue(psi.allclose([a, 0, 0, b]))
        self.assertTrue(chi.allclose([a*s, 0, 0, b*s, 0, a*s, b*s, 0]))

    def test_basis_input(self):
        xi = build_xi(Qubit(1, 0))
        self.assertTrue(xi.allclose([self.s, 0, 0, 0, self.s, 0, 0, 0]))

    def test_hadamard_input(self):
        xi = build_xi(Qubit(self.s, self.s))
        self.assertTrue(xi.allclose([0.5, 0, 0.5, 0, 0.5, 0, 0.5, 0]))

    def test_non_unit(self):
        self.assertRaises(QError, build_xi, (0.6, 0.6))

    def test_random_inputs(self):
        rng = np.random.default_rng(11)
        stream = ShotStream(5)
        for i in range(1000):
            t = rng.uniform(0, 2*math.pi)
            q = Qubit.from_angle(t)
            xi = build_xi(q)
            self.assertLess(np.max(np.abs(xi.amplitudes -
                                          self.closed_form(q.a, q.b))),
                            DERIVED_TOL)
            self.assertTrue(np.all(xi.amplitudes[1::2] == 0))
            p0, _ = project(xi, 1, 0)
            self.assertLess(abs(p0 - 0.5), DERIVED_TOL)
            m, doubled, residual = measure_and_extract(xi, stream)
            ideal = tensor(basis_state(1, m), q.as_state())
            self.assertLess(abs(inner(doubled, ideal) - 1), DERIVED_TOL)
            self.assertTrue(doubled.allclose(ideal))
            self.assertTrue(residual.allclose([1, 0], 0))

    def test_pipeline_oracle(self):
        gates = circuit()
        total = np.eye(8)
        for g in gates:
            total = g.matrix(3).dot(total)
        rng = np.random.default_rng(12)
        zero = np.array([1.0, 0.0])
        for i in range(100):
            q = Qubit.from_angle(rng.uniform(0, 2*math.pi))
            start = np.kron(zero, np.kron(q.as_vector(), zero))
            self.assertLess(np.max(np.abs(total.dot(start) -
                                          build_xi(q).amplitudes)),
                            DERIVED_TOL)

    def test_branches(self):
        a, b = 0.6, 0.8
        xi = build_xi((a, b))
        m, doubled, _ = measure_and_extract(xi, FixedDraw(0.25))
        self.assertEqual(m, 0)
        self.assertTrue(doubled.allclose([a, b, 0, 0]))
        m, doubled, _ = measure_and_extract(xi, FixedDraw(0.75))
        self.assertEqual(m, 1)
        self.assertTrue(doubled.allclose([0, 0, a, b]))
        self.assertEqual(recovered_qubit(doubled, 1), Qubit(a, b))

    def test_basis_branches(self):
        xi = build_xi((1, 0))
        for u in (0.1, 0.9):
            m, doubled, _ = measure_and_extract(xi, FixedDraw(u))
            self.assertTrue(doubled.allclose(basis_state(2, 2*m)))

    def test_structure_errors(self):
        with self.assertRaises(QError) as cm:
            measure_and_extract(basis_state(3, 1), FixedDraw(0.5))
        self.assertEqual(cm.exception.reason, QERR_STRUCTURE)
        with self.assertRaises(QError) as cm:
            measure_and_extract(basis_state(2, 0), FixedDraw(0.5))
        self.assertEqual(cm.exception.reason, QERR_DIMENSION)

    def test_run_pipeline(self):
        run = run_pipeline(Qubit(0.6, 0.8), ShotStream(42))
        self.assertLess(abs(run.record.probability - 0.5), DERIVED_TOL)
        self.assertEqual(recovered_qubit(run.extracted, run.outcome).b,
                         run.extracted.amplitudes[2*run.outcome + 1])
        doc = transcript(run)
        self.assertEqual(doc["measurement"]["qubit"], 1)
        self.assertEqual(len(doc["circuit"]), 4)
        self.assertEqual(doc, transcript(run_pipeline(Qubit(0.6, 0.8),
                                                      ShotStream(42))))

    def test_sample(self):
        hist = sample(Qubit(0.6, 0.8), 10000, 42)
        self.assertEqual(sum(hist.counts), 10000)
        self.assertTrue(0.485 <= hist.frequency(0) <= 0.515)
        self.assertEqual(hist, sample(Qubit(0.6, 0.8), 10000, 42))
        csv = hist.to_csv()
        self.assertTrue(csv.startswith("outcome,count,frequency\n0,"))
        self.assertEqual(len(csv.splitlines()), 3)

    def test_sample_small(self):
        self.assertEqual(sample((1, 0), 1, 7).shots, 1)
        hist = sample((1, 0), 100, 3)
        self.assertEqual(sum(hist.counts), 100)
        self.assertTrue(hist.counts[0] > 0 and hist.counts[1] > 0)
        with self.assertRaises(QError) as cm:
            sample((1, 0), 0, 7)
        self.assertEqual(cm.exception.reason, QERR_SHOTS)
        self.assertRaises(QError, sample, (1, 0), 10, -1)

    def test_doubled_measurement(self):
        a, b = 0.6, 0.8
        phi2 = tensor(Qubit(a, b).as_state(), Qubit(a, b).as_state())
        self.assertAlmostEqual(project(phi2, 1, 0)[0], 0.36, places=12)
        bit, post = doubled_qubit_measurement(phi2, FixedDraw(0.35))
        self.assertEqual(bit, 0)
        self.assertTrue(post.allclose([a, b, 0, 0]))
        bit, post = doubled_qubit_measurement(phi2, FixedDraw(0.37))
        self.assertEqual(bit, 1)
        self.assertTrue(post.allclose([0, 0, a, b]))
        bit, post = doubled_qubit_measurement(basis_state(2, 0),
                                              FixedDraw(0.999))
        self.assertEqual(bit, 0)
        s = self.s
        bit, post = doubled_qubit_measurement(StateVector([0.5]*4),
                                              FixedDraw(0.7))
        self.assertEqual(bit, 1)
        self.assertTrue(post.allclose([0, 0, s, s]))

    def test_doubled_measurement_errors(self):
        with self.assertRaises(QError) as cm:
            doubled_qubit_measurement(StateVector([self.s, 0, 0, self.s]),
                                      FixedDraw(0.5))
        self.assertEqual(cm.exception.reason, QERR_STRUCTURE)
        self.assertRaises(QError, doubled_qubit_measurement,
                          basis_state(3, 0), FixedDraw(0.5))

if __name__ == '__main__':
    unittest.main()
