""" qnest/statevec.py

Date: 2026-10-18

This file is part of qnest, a deterministic state-vector engine for
transferring, copying and nesting qubits. This file implements the core
value types: n-qubit real-amplitude states, single qubits, tensor and
inner products, and projective measurement of one qubit.

Ordering: the first ket symbol is the most significant bit of the basis
index, so |phi>|0> = a|00> + b|10> = (a, 0, b, 0). Qubit positions are
1-based, position k corresponds to bit (n - k) of the index.

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
from .formutil import is_pow2, log2int

__all__ = ('QError', 'StateVector', 'Qubit', 'MeasurementRecord',
           'basis_state', 'from_amplitudes', 'tensor', 'inner', 'project',
           'measure', 'bit_reversed', 'qubit_mask', 'ket_label',
           'ORDERING', 'NORM_TOL', 'DERIVED_TOL')

log = logging.getLogger(__name__)

ORDERING = "msb-first"
NORM_TOL = 1e-9       # on construction
DERIVED_TOL = 1e-12   # on derived quantities
MAX_QUBITS = 20

(QERR_LENGTH, QERR_NORM, QERR_ZERO_NORM, QERR_RANGE, QERR_DIMENSION,
 QERR_OVERLAP, QERR_BIJECTION, QERR_UNITARY, QERR_STRUCTURE, QERR_SHOTS,
 QERR_PARSE, QERR_DOCUMENT) = range(12)


class QError(ValueError):
    """ Validation error; reason is one of QERR_* constants."""
    reasons = {
        QERR_LENGTH: "length is not a power of two",
        QERR_NORM: "vector is not normalized",
        QERR_ZERO_NORM: "zero norm",
        QERR_RANGE: "index or position out of range",
        QERR_DIMENSION: "dimension mismatch",
        QERR_OVERLAP: "qubit positions overlap",
        QERR_BIJECTION: "index map is not a bijection",
        QERR_UNITARY: "matrix is not unitary",
        QERR_STRUCTURE: "state does not have the expected structure",
        QERR_SHOTS: "number of shots must be positive",
        QERR_PARSE: "cannot parse value",
        QERR_DOCUMENT: "malformed document"}

    def __init__(self, reason, detail=''):
        ValueError.__init__(self, reason, detail)
        self.reason = reason
        self.detail = detail

    def __str__(self):
        s = QError.reasons[self.reason]
        if self.detail:
            s += ": " + self.detail
        return s


def _qubit_count(length):
    if length < 2 or not is_pow2(length):
        raise QError(QERR_LENGTH, "got %d amplitudes" % length)
    n = log2int(length)
    if n > MAX_QUBITS:
        raise QError(QERR_RANGE, "%d qubits, at most %d" % (n, MAX_QUBITS))
    return n


def qubit_mask(n, k):
    """ Bit mask of 1-based qubit position k in an n-qubit index."""
    if not 1 <= k <= n:
        raise QError(QERR_RANGE, "qubit %d of %d" % (k, n))
    return 1 << (n - k)


def ket_label(index, n):
    """ '|010>' for index 2 of a 3-qubit register."""
    return '|' + format(index, '0%db' % n) + '>'


class StateVector(object):
    """ Normalized real-amplitude vector over n qubits, msb-first ordering.
Immutable: amplitudes is a read-only numpy array."""
    ordering = ORDERING

    def __init__(self, amplitudes, tol=NORM_TOL):
        amps = np.array(amplitudes, dtype=float)
        if amps.ndim != 1:
            raise QError(QERR_LENGTH, "amplitudes must be a flat sequence")
        n = _qubit_count(len(amps))
        if not np.all(np.isfinite(amps)):
            raise QError(QERR_NORM, "non-finite amplitude")
        norm2 = float(np.dot(amps, amps))
        if abs(norm2 - 1.0) > tol:
            raise QError(QERR_NORM, "sum of squares %.12g" % norm2)
        amps.flags.writeable = False
        self.num_qubits = n
        self.amplitudes = amps

    @property
    def dim(self):
        return len(self.amplitudes)

    def probabilities(self):
        return self.amplitudes ** 2

    def allclose(self, other, tol=DERIVED_TOL):
        """ Same qubit count and max amplitude difference <= tol."""
        other = np.asarray(getattr(other, 'amplitudes', other), dtype=float)
        return other.shape == self.amplitudes.shape and \
            float(np.max(np.abs(self.amplitudes - other))) <= tol

    def to_doc(self):
        return {"qubits": self.num_qubits,
                "amplitudes": [float(x) for x in self.amplitudes],
                "ordering": ORDERING}

    @classmethod
    def from_doc(cls, doc):
        """ Build from {"qubits": n, "amplitudes": [...], "ordering": ...}"""
        try:
            n = doc["qubits"]
            amps = doc["amplitudes"]
            ordering = doc.get("ordering", ORDERING)
        except (KeyError, TypeError, AttributeError):
            raise QError(QERR_DOCUMENT, "state needs qubits and amplitudes")
        if ordering != ORDERING:
            raise QError(QERR_DOCUMENT, "unsupported ordering %r" % ordering)
        if not isinstance(amps, list) or \
           not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                   for x in amps):
            raise QError(QERR_DOCUMENT, "amplitudes must be numbers")
        state = cls(amps)
        if state.num_qubits != n:
            raise QError(QERR_DIMENSION, "qubits %r vs %d amplitudes"
                         % (n, len(amps)))
        return state

    def __len__(self):
        return len(self.amplitudes)

    def __repr__(self):
        terms = ["%+.4f%s" % (x, ket_label(i, self.num_qubits))
                 for i, x in enumerate(self.amplitudes) if x != 0]
        return "StateVector(%s)" % ' '.join(terms)


@dataclass(frozen=True)
class Qubit:
    """ a|0> + b|1> with real amplitudes, a**2 + b**2 = 1 +- NORM_TOL"""
    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise QError(QERR_NORM, "non-finite amplitude")
        if abs(a*a + b*b - 1.0) > NORM_TOL:
            raise QError(QERR_NORM, "a^2 + b^2 = %.12g" % (a*a + b*b))
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)

    @classmethod
    def from_angle(cls, t):
        """ (cos t, sin t)"""
        return cls(math.cos(t), math.sin(t))

    @classmethod
    def normalized(cls, a, b):
        """ Qubit proportional to (a, b)."""
        r = math.hypot(a, b)
        if r == 0:
            raise QError(QERR_ZERO_NORM, "a = b = 0")
        return cls(a / r, b / r)

    def as_vector(self):
        return np.array([self.a, self.b])

    def as_state(self):
        return StateVector(self.as_vector())

    def to_doc(self):
        return {"a": self.a, "b": self.b}


@dataclass(frozen=True)
class MeasurementRecord:
    """ Outcome of measuring one qubit (position is 1-based)."""
    qubit_index: int
    outcome: int
    probability: float
    post_state: StateVector

    def to_doc(self):
        return {"qubit": self.qubit_index, "outcome": self.outcome,
                "probability": self.probability,
                "post_state": self.post_state.to_doc()}


def basis_state(n, index):
    """ Unit vector |index> in an n-qubit register."""
    if not 1 <= n <= MAX_QUBITS:
        raise QError(QERR_RANGE, "%d qubits" % n)
    if not 0 <= index < (1 << n):
        raise QError(QERR_RANGE, "basis index %d for %d qubits" % (index, n))
    amps = np.zeros(1 << n)
    amps[index] = 1.0
    return StateVector(amps)


def from_amplitudes(values, renormalize=False):
    """ StateVector from a real sequence.
renormalize - divide by the Euclidean norm first; otherwise the norm
              must be 1 within NORM_TOL"""
    amps = np.array(values, dtype=float)
    if amps.ndim != 1:
        raise QError(QERR_LENGTH, "amplitudes must be a flat sequence")
    _qubit_count(len(amps))
    if renormalize:
        norm = float(np.linalg.norm(amps))
        if norm == 0 or not math.isfinite(norm):
            raise QError(QERR_ZERO_NORM, "cannot renormalize")
        amps = amps / norm
    return StateVector(amps)


def tensor(u, v):
    """ u (x) v; u occupies the high-order index bits."""
    if u.num_qubits + v.num_qubits > MAX_QUBITS:
        raise QError(QERR_RANGE, "register too large")
    return StateVector(np.kron(u.amplitudes, v.amplitudes))


def inner(u, v):
    """ Real inner product sum(u_i * v_i)."""
    if u.num_qubits != v.num_qubits:
        raise QError(QERR_DIMENSION, "%d vs %d qubits"
                     % (u.num_qubits, v.num_qubits))
    return float(np.dot(u.amplitudes, v.amplitudes))


def _outcome_mask(state, qubit_index, outcome):
    if outcome not in (0, 1):
        raise QError(QERR_RANGE, "outcome must be 0 or 1, got %r" % outcome)
    n = state.num_qubits
    mask = qubit_mask(n, qubit_index)
    bits = (np.arange(state.dim) & mask) != 0
    return bits if outcome else ~bits


def project(state, qubit_index, outcome):
    """ Project qubit qubit_index (1-based) onto outcome.
Return (probability, post_state); post_state is None when probability is 0."""
    sel = _outcome_mask(state, qubit_index, outcome)
    kept = np.where(sel, state.amplitudes, 0.0)
    prob = float(np.dot(kept, kept))
    if prob == 0.0:
        return 0.0, None
    post = StateVector(kept / math.sqrt(prob))
    return min(prob, 1.0), post


def measure(state, qubit_index, rng):
    """ Measure one qubit, drawing the outcome from rng.uniform().
Return MeasurementRecord with the collapsed state."""
    p0, post0 = project(state, qubit_index, 0)
    if rng.uniform() < p0:
        return MeasurementRecord(qubit_index, 0, p0, post0)
    p1, post1 = project(state, qubit_index, 1)
    assert post1 is not None, "outcome 1 drawn with zero probability"
    return MeasurementRecord(qubit_index, 1, p1, post1)


def bit_reversed(state):
    """ Re-index so the first ket symbol becomes the least significant bit.
Used to compare with index lists written in lsb-first order."""
    n = state.num_qubits
    idx = np.arange(state.dim)
    rev = np.zeros_like(idx)
    for k in range(n):
        rev |= ((idx >> k) & 1) << (n - 1 - k)
    amps = np.empty(state.dim)
    amps[rev] = state.amplitudes
    return StateVector(amps)


# Unitary tests
def random_state(rng, n):
    """ Random real unit vector over n qubits (tests only)."""
    v = rng.standard_normal(1 << n)
    return StateVector(v / np.linalg.norm(v))


class TestStateVector(unittest.TestCase):
    def setUp(self):
        self.a, self.b = 0.6, 0.8
        self.rng = np.random.default_rng(2026)
        s = 1/math.sqrt(2)
        a, b = self.a, self.b
        self.xi = StateVector([a*s, 0, b*s, 0, a*s, 0, b*s, 0])

    def test_basis_state(self):
        self.assertEqual(list(basis_state(1, 0).amplitudes), [1, 0])
        self.assertEqual(list(basis_state(1, 1).amplitudes), [0, 1])
        e6 = basis_state(3, 6).amplitudes
        self.assertEqual(e6[6], 1.0)
        self.assertEqual(float(np.sum(np.abs(e6))), 1.0)
        with self.assertRaises(QError) as cm:
            basis_state(2, 4)
        self.assertEqual(cm.exception.reason, QERR_RANGE)

    def test_from_amplitudes(self):
        s = 1/math.sqrt(2)
        self.assertEqual(from_amplitudes([s, 0, 0, s]).num_qubits, 2)
        self.assertTrue(from_amplitudes([1, 1], renormalize=True)
                        .allclose([s, s]))
        for values, renorm, reason in (([1, 0, 0], False, QERR_LENGTH),
                                       ([0, 0], True, QERR_ZERO_NORM),
                                       ([1, 1], False, QERR_NORM),
                                       ([1], False, QERR_LENGTH)):
            with self.assertRaises(QError) as cm:
                from_amplitudes(values, renorm)
            self.assertEqual(cm.exception.reason, reason)

    def test_immutable(self):
        st = basis_state(2, 0)
        with self.assertRaises(ValueError):
            st.amplitudes[0] = 0.5

    def test_qubit(self):
        self.assertRaises(QError, Qubit, 1, 1)
        q = Qubit.normalized(3, 4)
        self.assertAlmostEqual(q.a, 0.6, places=15)
        self.assertRaises(QError, Qubit.normalized, 0, 0)
        self.assertTrue(Qubit.from_angle(math.pi/2).as_state()
                        .allclose([0, 1]))

    def test_tensor(self):
        a, b = self.a, self.b
        q = Qubit(a, b).as_state()
        zero = basis_state(1, 0)
        self.assertEqual(list(tensor(q, zero).amplitudes), [a, 0, b, 0])
        self.assertTrue(tensor(q, q).allclose([a*a, a*b, a*b, b*b]))
        self.assertEqual(list(tensor(zero, zero).amplitudes), [1, 0, 0, 0])

    def test_tensor_with_zero_exact(self):
        zero = basis_state(1, 0)
        for t in self.rng.uniform(0, 2*math.pi, 200):
            q = Qubit.from_angle(t)
            self.assertEqual(list(tensor(q.as_state(), zero).amplitudes),
                             [q.a, 0.0, q.b, 0.0])

    def test_tensor_norm(self):
        for n1, n2 in ((1, 1), (1, 2), (2, 1), (2, 2)):
            for i in range(20):
                w = tensor(random_state(self.rng, n1),
                           random_state(self.rng, n2))
                self.assertLess(abs(float(np.dot(w.amplitudes,
                                                 w.amplitudes)) - 1), 1e-12)

    def test_inner(self):
        s = 1/math.sqrt(2)
        bell = StateVector([s, 0, 0, s])
        uniform = StateVector([0.5]*4)
        self.assertAlmostEqual(inner(bell, uniform), s, places=15)
        self.assertAlmostEqual(inner(bell, bell), 1.0, places=15)
        self.assertEqual(inner(basis_state(1, 0), basis_state(1, 1)), 0.0)
        with self.assertRaises(QError) as cm:
            inner(bell, basis_state(1, 0))
        self.assertEqual(cm.exception.reason, QERR_DIMENSION)

    def test_project_doubled(self):
        a, b = self.a, self.b
        q = Qubit(a, b).as_state()
        prob, post = project(tensor(q, q), 1, 0)
        self.assertAlmostEqual(prob, a*a, places=12)
        self.assertTrue(post.allclose([a, b, 0, 0]))

    def test_project_xi(self):
        a, b = self.a, self.b
        prob, post = project(self.xi, 1, 0)
        self.assertAlmostEqual(prob, 0.5, places=12)
        self.assertTrue(post.allclose([a, 0, b, 0, 0, 0, 0, 0]))

    def test_project_zero(self):
        self.assertEqual(project(basis_state(1, 0), 1, 1), (0.0, None))
        self.assertRaises(QError, project, basis_state(1, 0), 2, 0)
        self.assertRaises(QError, project, basis_state(1, 0), 1, 2)

    def test_completeness(self):
        for n in (1, 2, 3):
            for i in range(30):
                st = random_state(self.rng, n)
                for k in range(1, n+1):
                    p0 = project(st, k, 0)[0]
                    p1 = project(st, k, 1)[0]
                    self.assertLess(abs(p0 + p1 - 1), 1e-12)

    def test_collapse_idempotent(self):
        for i in range(30):
            st = random_state(self.rng, 3)
            for k in (1, 2, 3):
                for m in (0, 1):
                    post = project(st, k, m)[1]
                    self.assertAlmostEqual(project(post, k, m)[0], 1.0,
                                           places=12)

    def test_measure(self):
        from .shotrng import ShotStream
        rec = measure(self.xi, 1, ShotStream(3))
        self.assertIn(rec.outcome, (0, 1))
        self.assertAlmostEqual(rec.probability, 0.5, places=12)
        self.assertAlmostEqual(project(rec.post_state, 1, rec.outcome)[0],
                               1.0, places=12)
        rec = measure(basis_state(1, 0), 1, ShotStream(3))
        self.assertEqual((rec.outcome, rec.probability), (0, 1.0))

    def test_measure_frequency(self):
        from .shotrng import ShotStream
        rng = ShotStream(42)
        zeros = sum(1 - measure(self.xi, 1, rng).outcome
                    for i in range(10000))
        self.assertLessEqual(abs(zeros / 10000 - 0.5), 0.015)

    def test_bit_reversed(self):
        st = basis_state(3, 1)   # |001>
        self.assertEqual(bit_reversed(st).amplitudes[4], 1.0)
        st = random_state(self.rng, 3)
        self.assertTrue(bit_reversed(bit_reversed(st)).allclose(st, 0))

    def test_doc(self):
        st = random_state(self.rng, 2)
        self.assertTrue(StateVector.from_doc(st.to_doc()).allclose(st, 0))
        for doc in ({"qubits": 1}, {"qubits": 1, "amplitudes": [1, 0],
                                    "ordering": "lsb-first"},
                    {"qubits": 2, "amplitudes": [1, 0]},
                    {"qubits": 1, "amplitudes": ["1", 0]}):
            self.assertRaises(QError, StateVector.from_doc, doc)

    def test_ket_label(self):
        self.assertEqual(ket_label(2, 3), '|010>')

if __name__ == '__main__':
    unittest.main()
