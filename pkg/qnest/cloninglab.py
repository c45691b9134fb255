""" qnest/cloninglab.py

Date: 2026-10-18

This file is part of qnest, a deterministic state-vector engine for
transferring, copying and nesting qubits. This file implements copier
unitaries for known qubits and the measurements showing where copying
works and where it fails.

A copier for the qubit q = (a, b) is a 4x4 unitary U with
  U (q (x) |0>) = U (a, 0, b, 0)' = (a^2, ab, ab, b^2)' = q (x) q
Such U exists for every known q (copier_for builds one from two heap
transforms); no single U does it for every q, which the fidelity
sweeps make visible.

Hand-built matrices kept as constants:
  A (Bell -> uniform)  = (1/sqrt2)[1 0 1 0; 0 1 0 1; 0 -1 0 1; 1 0 -1 0]
  U (Hadamard copier)  = (1/sqrt2)[1 0 0 1; 0 1 1 0; 0 -1 1 0; 1 0 0 -1]
with U = A P1, P1 the CNOT swapping basis states 2 and 3.

qnest is free software; you can redistribute it and/or modify
it under the terms of the GNU Lesser General Public License as published by
the Free Software Foundation; either version 2.1 of the License, or
(at your option) any later version.

qnest is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU Lesser General Public License for more details.
"""

import math
import unittest
from dataclasses import dataclass
# numpy, scipy
import numpy as np
from scipy.linalg import block_diag
# qnest
from .formutil import csv_text, fmt_number
from .statevec import QError, StateVector, Qubit, tensor, DERIVED_TOL, \
    QERR_DIMENSION, QERR_RANGE
from .heaptx import UnitaryMatrix, transfer_unitary
from .gates import cnot_matrix

__all__ = ('CopierReport', 'SweepPoint', 'doubled_state', 'copier_input',
           'copier_for', 'hadamard_copier', 'bell_uniform_matrix',
           'bell_uniform_factors', 'hadamard_copier_factors',
           'kronecker_sum', 'CNOT_P1', 'cnot_copier',
           'check_hadamard_factorization', 'clone_fidelity',
           'fidelity_sweep', 'no_cloning_sweep', 'exact_angles', 'sweep_csv',
           'cnot_counterexample', 'strong_heap_copier',
           'check_strong_copier', 'EXACT_TOL')

EXACT_TOL = 1e-9        # fidelity >= 1 - EXACT_TOL counts as a copy
FIXTURE_TOL = 5e-4      # unitarity of 4-decimal fixtures
FIXTURE_CLAIM_TOL = 1e-3

SQRT_HALF = 1 / math.sqrt(2)

# swap of basis states 2 and 3: CNOT, control 1, target 2
CNOT_P1 = np.array([[1, 0, 0, 0],
                    [0, 1, 0, 0],
                    [0, 0, 0, 1],
                    [0, 0, 1, 0]], dtype=float)

# left and right permutations around the core H2 (+) A2
_P_LEFT = np.array([[1, 0, 0, 0],
                    [0, 0, 1, 0],
                    [0, 0, 0, 1],
                    [0, 1, 0, 0]], dtype=float)
_P_RIGHT_A = np.array([[1, 0, 0, 0],
                       [0, 0, 1, 0],
                       [0, 1, 0, 0],
                       [0, 0, 0, 1]], dtype=float)
_P_RIGHT_U = np.array([[1, 0, 0, 0],
                       [0, 0, 0, 1],
                       [0, 1, 0, 0],
                       [0, 0, 1, 0]], dtype=float)

_H2 = SQRT_HALF * np.array([[1, 1], [1, -1]])
_A2 = SQRT_HALF * np.array([[1, 1], [-1, 1]])

# five-rotation copier of (3/5, 4/5), printed to 4 decimals
STRONG_COPIER_ROWS = ((-0.4240, -0.3748, 0.7680, -0.2999),
                      (0.7680, -0.4998, 0.0240, -0.3998),
                      (0.2880, 0.7809, 0.3840, -0.3998),
                      (0.3840, 0.0, 0.5120, 0.7684))


@dataclass(frozen=True)
class CopierReport:
    """ Copier tested on one qubit.
overlap  - <test (x) test | copier (test (x) |0>)>
fidelity - overlap squared"""
    copier: UnitaryMatrix
    built_for: Qubit
    tested_on: Qubit
    overlap: float
    fidelity: float
    exact: bool

    def to_doc(self):
        return {"copier": self.copier.to_doc(),
                "built_for": (self.built_for.to_doc()
                              if self.built_for is not None else None),
                "tested_on": self.tested_on.to_doc(),
                "overlap": self.overlap,
                "fidelity": self.fidelity,
                "exact": self.exact}


@dataclass(frozen=True)
class SweepPoint:
    angle_degrees: float
    fidelity: float
    exact: bool


def _as_qubit(q):
    if isinstance(q, Qubit):
        return q
    a, b = q
    return Qubit(a, b)


def doubled_state(q):
    """ q (x) q = (a^2, ab, ab, b^2)"""
    s = _as_qubit(q).as_state()
    return tensor(s, s)


def copier_input(q):
    """ q (x) |0> = (a, 0, b, 0)"""
    q = _as_qubit(q)
    return StateVector([q.a, 0.0, q.b, 0.0])


def copier_for(q):
    """ Unitary U with U (q (x) |0>) = q (x) q, by two heap transforms."""
    return transfer_unitary(copier_input(q).amplitudes,
                            doubled_state(q).amplitudes)


def hadamard_copier():
    """ Hand-built copier of both Hadamard qubits (|0> +- |1>)/sqrt2."""
    return UnitaryMatrix(SQRT_HALF * np.array([[1, 0, 0, 1],
                                               [0, 1, 1, 0],
                                               [0, -1, 1, 0],
                                               [1, 0, 0, -1]]))


def bell_uniform_matrix():
    """ A with A (|00> + |11>)/sqrt2 = (|00> + |01> + |10> + |11>)/2"""
    return UnitaryMatrix(SQRT_HALF * np.array([[1, 0, 1, 0],
                                               [0, 1, 0, 1],
                                               [0, -1, 0, 1],
                                               [1, 0, -1, 0]]))


def kronecker_sum(a, b):
    """ Block-diagonal a (+) b."""
    a = getattr(a, 'entries', a)
    b = getattr(b, 'entries', b)
    return block_diag(a, b)


def bell_uniform_factors():
    """ (P_left, H2 (+) A2, P_right) with product A."""
    return _P_LEFT, kronecker_sum(_H2, _A2), _P_RIGHT_A


def hadamard_copier_factors():
    """ (P_left, H2 (+) A2, P_right) with product the Hadamard copier."""
    return _P_LEFT, kronecker_sum(_H2, _A2), _P_RIGHT_U


def cnot_copier():
    """ Linear extension of basis copying |i>|0> -> |i>|i>: the CNOT."""
    return UnitaryMatrix(cnot_matrix(2, 1, 2))


def check_hadamard_factorization(a=None, p1=None, tol=DERIVED_TOL):
    """ True iff the Hadamard copier equals a p1 entrywise within tol
(defaults: bell_uniform_matrix() and CNOT_P1)."""
    a = bell_uniform_matrix() if a is None else a
    p1 = CNOT_P1 if p1 is None else p1
    a = np.asarray(getattr(a, 'entries', a), dtype=float)
    p1 = np.asarray(getattr(p1, 'entries', p1), dtype=float)
    return hadamard_copier().max_deviation(a.dot(p1)) <= tol


def clone_fidelity(copier, test, built_for=None):
    """ Test a copier on qubit test; return CopierReport."""
    if not isinstance(copier, UnitaryMatrix):
        copier = UnitaryMatrix(copier)
    if copier.dim != 4:
        raise QError(QERR_DIMENSION, "copier must be 4x4, got %dx%d"
                     % (copier.dim, copier.dim))
    test = _as_qubit(test)
    out = copier.apply(copier_input(test).amplitudes)
    overlap = float(np.dot(doubled_state(test).amplitudes, out))
    fidelity = min(overlap * overlap, 1.0)
    return CopierReport(copier, built_for, test, overlap, fidelity,
                        fidelity >= 1 - EXACT_TOL)


def fidelity_sweep(copier, grid, built_for=None):
    """ Fidelity of copier on (cos t, sin t), t = 2 pi k / grid."""
    if isinstance(grid, bool) or not isinstance(grid, int) or grid < 2:
        raise QError(QERR_RANGE, "grid needs at least 2 points, got %r"
                     % (grid,))
    if not isinstance(copier, UnitaryMatrix):
        copier = UnitaryMatrix(copier)
    points = []
    for k in range(grid):
        t = 2 * math.pi * k / grid
        r = clone_fidelity(copier, Qubit.from_angle(t), built_for)
        points.append(SweepPoint(360.0 * k / grid, r.fidelity, r.exact))
    return points


def no_cloning_sweep(source, grid):
    """ fidelity_sweep of copier_for(source)."""
    source = _as_qubit(source)
    return fidelity_sweep(copier_for(source), grid, source)


def exact_angles(points):
    return [p.angle_degrees for p in points if p.exact]


def sweep_csv(points, precision=4):
    """ CSV with header angle_degrees,fidelity,exact"""
    return csv_text(('angle_degrees', 'fidelity', 'exact'),
                    [(fmt_number(p.angle_degrees, precision),
                      fmt_number(p.fidelity, 12), int(p.exact))
                     for p in points])


def cnot_counterexample(q=None):
    """ CNOT (q (x) |0>) against q (x) q, default q = (|0> + |1>)/sqrt2.
Return (squared overlap, max-norm distance)."""
    q = Qubit(SQRT_HALF, SQRT_HALF) if q is None else _as_qubit(q)
    out = cnot_copier().apply(copier_input(q).amplitudes)
    ideal = doubled_state(q).amplitudes
    overlap = float(np.dot(out, ideal))
    return overlap * overlap, float(np.max(np.abs(out - ideal)))


def strong_heap_copier():
    """ The printed five-rotation copier of (3/5, 4/5), 4 decimals."""
    return UnitaryMatrix(STRONG_COPIER_ROWS, tol=FIXTURE_TOL)


def check_strong_copier(rows=STRONG_COPIER_ROWS):
    """ Check the printed claims of the strong copier fixture.
Return (max|Ux - y|, |det U - 1|); raise QError if not unitary at
FIXTURE_TOL."""
    u = UnitaryMatrix(rows, tol=FIXTURE_TOL)
    q = Qubit(0.6, 0.8)
    residual = float(np.max(np.abs(u.apply(copier_input(q).amplitudes) -
                                   doubled_state(q).amplitudes)))
    return residual, abs(u.det() - 1)


# Unitary tests
class TestCopiers(unittest.TestCase):
    s = SQRT_HALF
    THREE_FOUR = ((0.5159, -0.80, 0.0631, -0.2999),
                  (0.6878, 0.60, 0.0841, -0.3998),
                  (-0.3367, 0.0, 0.8525, -0.3998),
                  (0.3840, 0.0, 0.5120, 0.7684))

    def test_doubled_state(self):
        self.assertTrue(doubled_state((0.6, 0.8)).allclose(
            np.array([9, 12, 12, 16]) / 25))
        self.assertTrue(doubled_state((1, 0)).allclose([1, 0, 0, 0], 0))
        a, b = 0.28, 0.96
        self.assertTrue(doubled_state(Qubit(a, b)).allclose(
            [a*a, a*b, a*b, b*b]))

    def test_copier_three_four(self):
        u = copier_for(Qubit(0.6, 0.8))
        self.assertLess(u.max_deviation(self.THREE_FOUR), 5e-5)
        self.assertLess(np.max(np.abs(
            u.apply([0.6, 0, 0.8, 0]) - np.array([9, 12, 12, 16]) / 25)),
            1e-10)

    def test_copier_basis(self):
        u = copier_for((1, 0))
        self.assertLess(u.max_deviation(np.eye(4)), 1e-15)

    def test_copier_hadamard(self):
        s = self.s
        u = copier_for((s, s))
        self.assertLess(np.max(np.abs(u.apply([s, 0, s, 0]) - 0.5)), 1e-10)

    def test_copier_random(self):
        rng = np.random.default_rng(21)
        for i in range(1000):
            q = Qubit.from_angle(rng.uniform(0, 2*math.pi))
            u = copier_for(q)
            out = u.apply(copier_input(q).amplitudes)
            self.assertLess(np.max(np.abs(out -
                                          doubled_state(q).amplitudes)),
                            1e-10)

    def test_hadamard_copier(self):
        s = self.s
        u = hadamard_copier()
        self.assertLess(np.max(np.abs(u.apply([s, 0, s, 0]) - 0.5)),
                        DERIVED_TOL)
        self.assertLess(np.max(np.abs(u.apply([s, 0, -s, 0]) -
                                      np.array([0.5, -0.5, -0.5, 0.5]))),
                        DERIVED_TOL)
        self.assertLess(np.max(np.abs(u.apply([1, 0, 0, 0]) -
                                      np.array([s, 0, 0, s]))), DERIVED_TOL)
        self.assertAlmostEqual(abs(u.det()), 1.0, places=12)
        self.assertAlmostEqual(u.det(), -1.0, places=12)

    def test_bell_uniform(self):
        s = self.s
        a = bell_uniform_matrix()
        self.assertLess(np.max(np.abs(a.apply([s, 0, 0, s]) - 0.5)),
                        DERIVED_TOL)
        self.assertAlmostEqual(a.det(), 1.0, places=12)
        self.assertLess(np.max(np.abs(a.entries.dot(a.entries.T) -
                                      np.eye(4))), DERIVED_TOL)
        inverse = s * np.array([[1, 0, 0, 1], [0, 1, -1, 0],
                                [1, 0, 0, -1], [0, 1, 1, 0]])
        self.assertLess(a.transpose().max_deviation(inverse), DERIVED_TOL)

    def test_factorizations(self):
        s = self.s
        left, core, right = bell_uniform_factors()
        self.assertLess(bell_uniform_matrix().max_deviation(
            np.linalg.multi_dot([left, core, right])), DERIVED_TOL)
        self.assertTrue(np.array_equal(core[:2, 2:], np.zeros((2, 2))))
        self.assertLess(np.max(np.abs(
            core - s * np.array([[1, 1, 0, 0], [1, -1, 0, 0],
                                 [0, 0, 1, 1], [0, 0, -1, 1]]))), DERIVED_TOL)
        left, core, right = hadamard_copier_factors()
        self.assertLess(hadamard_copier().max_deviation(
            np.linalg.multi_dot([left, core, right])), DERIVED_TOL)

    def test_kronecker_sum(self):
        m = kronecker_sum(np.eye(1), 2 * np.eye(2))
        self.assertTrue(np.array_equal(m, np.diag([1.0, 2.0, 2.0])))

    def test_hadamard_factorization(self):
        self.assertTrue(check_hadamard_factorization())
        a = np.array(bell_uniform_matrix().entries)
        a[1, 1] += 1e-6
        self.assertFalse(check_hadamard_factorization(a))
        self.assertFalse(check_hadamard_factorization(p1=np.eye(4)))
        self.assertTrue(np.array_equal(CNOT_P1, cnot_copier().entries))

    def test_clone_fidelity(self):
        s = self.s
        r = clone_fidelity(cnot_copier(), (s, s))
        self.assertAlmostEqual(r.fidelity, 0.5, places=12)
        self.assertFalse(r.exact)
        q = Qubit(0.6, 0.8)
        r = clone_fidelity(copier_for(q), q, q)
        self.assertTrue(r.exact)
        self.assertAlmostEqual(r.fidelity, 1.0, places=9)
        self.assertTrue(clone_fidelity(hadamard_copier(), (s, -s)).exact)
        r = clone_fidelity(hadamard_copier(), (1, 0))
        self.assertAlmostEqual(r.fidelity, 0.5, places=12)
        self.assertAlmostEqual(r.overlap, s, places=12)
        self.assertEqual(r.to_doc()["tested_on"], {"a": 1.0, "b": 0.0})

    def test_clone_fidelity_errors(self):
        self.assertRaises(QError, clone_fidelity, [[1, 1], [0, 1]], (1, 0))
        self.assertRaises(QError, clone_fidelity, np.eye(8), (1, 0))
        self.assertRaises(QError, clone_fidelity, np.eye(4), (1, 1))

    def test_hadamard_sweep(self):
        points = fidelity_sweep(hadamard_copier(), 360)
        self.assertEqual(len(points), 360)
        self.assertEqual(exact_angles(points), [45.0, 135.0, 225.0, 315.0])
        for p in points:
            t = math.radians(p.angle_degrees)
            c, s = math.cos(t), math.sin(t)
            self.assertAlmostEqual(p.fidelity, c*c * (1 + 2*s*s)**2 / 2,
                                   places=12)

    def test_basis_sweep(self):
        points = no_cloning_sweep((1, 0), 8)
        self.assertEqual(exact_angles(points), [0.0, 180.0])
        for p in points:
            self.assertAlmostEqual(p.fidelity,
                                   math.cos(math.radians(p.angle_degrees))**2,
                                   places=12)
        self.assertRaises(QError, no_cloning_sweep, (1, 0), 1)

    def test_three_four_sweep(self):
        points = no_cloning_sweep((0.6, 0.8), 360)
        self.assertTrue(all(0 <= p.fidelity <= 1 for p in points))
        self.assertTrue(points[0].fidelity < 1 - 1e-6)
        csv = sweep_csv(points)
        lines = csv.splitlines()
        self.assertEqual(lines[0], "angle_degrees,fidelity,exact")
        self.assertEqual(len(lines), 361)
        self.assertTrue(lines[1].startswith("0.0000,"))
        self.assertTrue(lines[1].endswith(",0"))

    def test_no_universal_copier(self):
        rng = np.random.default_rng(6)
        for i in range(100):
            t = rng.uniform(0, 2*math.pi)
            q = Qubit.from_angle(t)
            u = copier_for(q)
            self.assertLess(abs(clone_fidelity(u, q).fidelity - 1), 1e-9)
            off = [clone_fidelity(u, Qubit.from_angle(t + d)).fidelity
                   for d in (math.radians(10), -math.radians(10))]
            self.assertLessEqual(min(off), 1 - 1e-6)

    def test_cnot_counterexample(self):
        fid, gap = cnot_counterexample()
        self.assertAlmostEqual(fid, 0.5, places=12)
        self.assertGreaterEqual(gap, 0.5 - 1e-12)
        s = self.s
        fid, gap = cnot_counterexample((s, -s))
        self.assertAlmostEqual(fid, 0.0, places=12)
        self.assertAlmostEqual(gap, 0.5 + s, places=12)
        fid, gap = cnot_counterexample((1, 0))
        self.assertAlmostEqual(fid, 1.0, places=12)
        self.assertEqual(gap, 0.0)

    def test_bell_copier_relation(self):
        # U (1,0,0,1)' = (1,1,1,1)'/sqrt2 for the Bell -> uniform transfer
        s = self.s
        u = transfer_unitary([s, 0, 0, s], [0.5] * 4)
        self.assertLess(np.max(np.abs(u.apply([1, 0, 0, 1]) - s)), 1e-10)

    def test_strong_copier(self):
        residual, det_gap = check_strong_copier()
        self.assertLessEqual(residual, 1e-3)
        self.assertLessEqual(det_gap, 1e-3)
        self.assertEqual(strong_heap_copier().dim, 4)
        bad = [list(r) for r in STRONG_COPIER_ROWS]
        bad[0][0] = 0.4240
        self.assertRaises(QError, check_strong_copier, bad)

if __name__ == '__main__':
    unittest.main()
