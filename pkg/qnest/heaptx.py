""" qnest/heaptx.py

Date: 2026-10-18

This file is part of qnest, a deterministic state-vector engine for
transferring, copying and nesting qubits. This file implements discrete
signal-induced heap transforms (DsiHT): chains of Givens rotations
generated by a unit vector, and the transfer unitaries built from two
such chains.

A rotation on plane (p, q) by angle t acts on components (x_p, x_q) as
  [cos t  -sin t] [x_p]
  [sin t   cos t] [x_q]
The chain generated by g uses the pivot path (0,1), (0,2), ..., (0,N-1);
each rotation moves component q into component 0, so the chain maps g to
e_0 = (1, 0, ..., 0). Two chains H_x, H_y give U = H_y' H_x with U x = y.

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
from .statevec import QError, Qubit, QERR_NORM, QERR_RANGE, \
    QERR_DIMENSION, QERR_UNITARY, QERR_DOCUMENT, NORM_TOL, DERIVED_TOL

__all__ = ('GivensRotation', 'RotationChain', 'UnitaryMatrix',
           'givens_angle', 'dsiht_chain', 'apply_chain', 'apply_chain_inverse',
           'chain_matrix', 'transfer_unitary', 'single_qubit_transfer',
           'basis_transfer', 'UNITARY_TOL', 'DET_TOL')

log = logging.getLogger(__name__)

UNITARY_TOL = 1e-10
DET_TOL = 1e-9


class UnitaryMatrix(object):
    """ Dense square real matrix with U'U = I within tol per entry.
tol   - unitarity tolerance; printed fixtures use a looser one
check - False skips the test (products of checked matrices)"""

    def __init__(self, entries, tol=UNITARY_TOL, check=True):
        m = np.array(entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise QError(QERR_DIMENSION, "matrix must be square, got %s"
                         % (m.shape,))
        if not np.all(np.isfinite(m)):
            raise QError(QERR_UNITARY, "non-finite entry")
        if check:
            dev = float(np.max(np.abs(m.T.dot(m) - np.eye(len(m)))))
            if dev > tol:
                raise QError(QERR_UNITARY, "max|U'U - I| = %.3g" % dev)
        m.flags.writeable = False
        self.entries = m

    @property
    def dim(self):
        return len(self.entries)

    def det(self):
        return float(np.linalg.det(self.entries))

    def transpose(self):
        return UnitaryMatrix(self.entries.T, check=False)

    def __matmul__(self, other):
        other = getattr(other, 'entries', other)
        return UnitaryMatrix(self.entries.dot(other), check=False)

    def apply(self, v):
        """ Matrix-vector product on a plain vector."""
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise QError(QERR_DIMENSION, "vector of length %d for %dx%d"
                         % (len(v), self.dim, self.dim))
        return self.entries.dot(v)

    def max_deviation(self, other):
        """ max |self - other| entrywise."""
        other = np.asarray(getattr(other, 'entries', other), dtype=float)
        if other.shape != self.entries.shape:
            raise QError(QERR_DIMENSION, "%s vs %s"
                         % (other.shape, self.entries.shape))
        return float(np.max(np.abs(self.entries - other)))

    def rows(self):
        return [[float(x) for x in row] for row in self.entries]

    def to_doc(self):
        return {"dim": self.dim, "rows": self.rows()}

    @classmethod
    def from_doc(cls, doc, tol=UNITARY_TOL):
        try:
            dim, rows = doc["dim"], doc["rows"]
        except (KeyError, TypeError):
            raise QError(QERR_DOCUMENT, "matrix needs dim and rows")
        if not isinstance(rows, list) or len(rows) != dim or \
           not all(isinstance(r, list) and len(r) == dim for r in rows):
            raise QError(QERR_DOCUMENT, "rows must be %r lists of %r numbers"
                         % (dim, dim))
        return cls(rows, tol)

    def __repr__(self):
        return "UnitaryMatrix(%s)" % self.rows()


@dataclass(frozen=True)
class GivensRotation:
    """ Rotation by angle (radians) on coordinate plane (p, q), p < q."""
    p: int
    q: int
    angle: float

    def __post_init__(self):
        if not 0 <= self.p < self.q:
            raise QError(QERR_RANGE, "plane (%d, %d)" % (self.p, self.q))

    @property
    def plane(self):
        return (self.p, self.q)

    @property
    def degrees(self):
        return math.degrees(self.angle)

    def matrix(self, dim):
        """ Dense dim x dim factor."""
        if self.q >= dim:
            raise QError(QERR_RANGE, "plane %s in dimension %d"
                         % (self.plane, dim))
        c, s = math.cos(self.angle), math.sin(self.angle)
        g = np.eye(dim)
        g[self.p, self.p], g[self.p, self.q] = c, -s
        g[self.q, self.p], g[self.q, self.q] = s, c
        return g

    def rotate(self, v, sign=1):
        """ Rotate numpy array v in place (sign=-1 rotates back)."""
        c, s = math.cos(self.angle), sign * math.sin(self.angle)
        x, y = v[self.p], v[self.q]
        v[self.p] = c*x - s*y
        v[self.q] = s*x + c*y


@dataclass(frozen=True)
class RotationChain:
    """ Ordered rotations on dimension dim; the first listed acts first."""
    dim: int
    rotations: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise QError(QERR_RANGE, "dimension %d" % self.dim)
        object.__setattr__(self, 'rotations', tuple(self.rotations))
        for r in self.rotations:
            if r.q >= self.dim:
                raise QError(QERR_RANGE, "plane %s in dimension %d"
                             % (r.plane, self.dim))

    def __len__(self):
        return len(self.rotations)

    def degrees(self):
        return [r.degrees for r in self.rotations]

    def factors(self):
        """ Dense factors in written order: last applied rotation first,
so that their product equals chain_matrix(self)."""
        return [r.matrix(self.dim) for r in reversed(self.rotations)]

    def inverse(self):
        """ Chain undoing this one: reverse order, negated angles."""
        return RotationChain(self.dim,
                             [GivensRotation(r.p, r.q, -r.angle)
                              for r in reversed(self.rotations)])

    def to_doc(self):
        return {"dim": self.dim,
                "rotations": [{"plane": [r.p, r.q], "degrees": r.degrees}
                              for r in self.rotations]}

    @classmethod
    def from_doc(cls, doc):
        try:
            rots = [GivensRotation(int(r["plane"][0]), int(r["plane"][1]),
                                   math.radians(float(r["degrees"])))
                    for r in doc["rotations"]]
            return cls(int(doc["dim"]), rots)
        except (KeyError, TypeError, IndexError, ValueError) as e:
            if isinstance(e, QError):
                raise
            raise QError(QERR_DOCUMENT, "chain: %s" % e)


def givens_angle(x, y):
    """ Angle of the rotation taking (x, y) to (sqrt(x^2+y^2), 0).
Returns -atan2(y, x); (0, 0) gives 0. For x = 0 this is -sign(y)*pi/2,
which keeps the pivot nonnegative where the literal pi/2 rule would not."""
    if x == 0 and y == 0:
        return 0.0
    angle = -math.atan2(y, x)
    if x == 0:
        log.debug("x = 0, y = %g: angle %.2f deg instead of 90",
                  y, math.degrees(angle))
    return angle + 0.0   # no negative zero


def _as_vector(v):
    v = np.array(getattr(v, 'amplitudes', v), dtype=float)
    if v.ndim != 1:
        raise QError(QERR_DIMENSION, "expected a flat vector")
    return v


def _check_unit(v, label):
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > NORM_TOL:
        raise QError(QERR_NORM, "%s has norm %.12g" % (label, norm))


def dsiht_chain(generator):
    """ Rotation chain of the heap transform generated by a unit vector.
Pivot path (0,1), (0,2), ..., (0,N-1); zero components give explicit
zero-angle rotations, so the chain always has N-1 rotations."""
    v = _as_vector(generator)
    if len(v) < 1:
        raise QError(QERR_DIMENSION, "empty generator")
    _check_unit(v, "generator")
    rotations = []
    for q in range(1, len(v)):
        rot = GivensRotation(0, q, givens_angle(v[0], v[q]))
        rot.rotate(v)
        rotations.append(rot)
    return RotationChain(len(v), rotations)


def _check_dim(chain, v):
    if len(v) != chain.dim:
        raise QError(QERR_DIMENSION, "vector of length %d for chain of "
                     "dimension %d" % (len(v), chain.dim))


def apply_chain(chain, v):
    """ Apply the rotations in order; two components touched per rotation."""
    v = _as_vector(v)
    _check_dim(chain, v)
    for rot in chain.rotations:
        rot.rotate(v)
    return v


def apply_chain_inverse(chain, v):
    """ Apply the transposed chain: reverse order, negated angles."""
    v = _as_vector(v)
    _check_dim(chain, v)
    for rot in reversed(chain.rotations):
        rot.rotate(v, -1)
    return v


def chain_matrix(chain):
    """ Dense product of the chain's factors."""
    m = np.eye(chain.dim)
    for rot in chain.rotations:
        m = rot.matrix(chain.dim).dot(m)
    return UnitaryMatrix(m)


def transfer_unitary(source, target):
    """ U = H_target' H_source, so that U source = target."""
    x, y = _as_vector(source), _as_vector(target)
    if len(x) != len(y):
        raise QError(QERR_DIMENSION, "%d vs %d" % (len(x), len(y)))
    # no rotation in dimension 1
    if len(x) == 1 and x[0] * y[0] < 0:
        raise QError(QERR_DIMENSION, "dimension 1 cannot map %g to %g"
                     % (x[0], y[0]))
    hx = chain_matrix(dsiht_chain(x))
    hy = chain_matrix(dsiht_chain(y))
    return UnitaryMatrix(hy.entries.T.dot(hx.entries))


def single_qubit_transfer(source, target):
    """ 2x2 unitary taking Qubit source to Qubit target by two rotations."""
    return transfer_unitary(source.as_vector(), target.as_vector())


def basis_transfer(generator, k):
    """ Unitary taking the generator to the basis vector e_k."""
    v = _as_vector(generator)
    if not 0 <= k < len(v):
        raise QError(QERR_RANGE, "basis index %d for dimension %d"
                     % (k, len(v)))
    e = np.zeros(len(v))
    e[k] = 1.0
    return transfer_unitary(v, e)


# Unitary tests
def random_unit(rng, dim):
    """ Random real unit vector (tests only)."""
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


class TestGivens(unittest.TestCase):
    def test_angles(self):
        self.assertAlmostEqual(math.degrees(givens_angle(0.5, 0.5)), -45)
        self.assertAlmostEqual(math.degrees(givens_angle(0.6, 0.8)),
                               -53.1301, places=4)
        self.assertEqual(givens_angle(0.3, 0), 0.0)
        self.assertEqual(math.copysign(1, givens_angle(0.3, 0)), 1.0)
        self.assertEqual("%.2f" % math.degrees(givens_angle(0.8660, 0.5)),
                         "-30.00")
        self.assertEqual(givens_angle(0, 0), 0.0)

    def test_zero_x(self):
        for y in (1.0, -1.0, 0.3):
            t = givens_angle(0.0, y)
            self.assertAlmostEqual(t, -math.copysign(math.pi/2, y))
            v = np.array([0.0, y])
            GivensRotation(0, 1, t).rotate(v)
            self.assertAlmostEqual(v[0], abs(y), places=15)
            self.assertAlmostEqual(v[1], 0.0, places=15)

    def test_all_quadrants(self):
        rng = np.random.default_rng(11)
        for x, y in rng.standard_normal((200, 2)):
            v = np.array([x, y])
            GivensRotation(0, 1, givens_angle(x, y)).rotate(v)
            self.assertAlmostEqual(v[0], math.hypot(x, y), places=12)
            self.assertAlmostEqual(v[1], 0.0, places=12)

    def test_plane(self):
        self.assertRaises(QError, GivensRotation, 2, 1, 0.0)
        self.assertRaises(QError, GivensRotation, 1, 1, 0.0)
        self.assertAlmostEqual(np.linalg.det(
            GivensRotation(0, 2, 0.7).matrix(4)), 1.0, places=12)


class TestChain(unittest.TestCase):
    BELL_HEAP = [[0.7071, 0, 0, 0.7071],
                 [0, 1, 0, 0],
                 [0, 0, 1, 0],
                 [-0.7071, 0, 0, 0.7071]]

    def setUp(self):
        self.rng = np.random.default_rng(7)
        s = 1/math.sqrt(2)
        self.bell = [s, 0, 0, s]
        self.uniform = [0.5]*4

    def test_bell(self):
        chain = dsiht_chain(self.bell)
        self.assertEqual(len(chain), 3)
        self.assertEqual([r.plane for r in chain.rotations],
                         [(0, 1), (0, 2), (0, 3)])
        self.assertEqual(chain.degrees()[:2], [0.0, 0.0])
        self.assertAlmostEqual(chain.degrees()[2], -45.0, places=12)
        self.assertLess(chain_matrix(chain).max_deviation(self.BELL_HEAP),
                        5e-5)

    def test_uniform(self):
        chain = dsiht_chain(self.uniform)
        for d, ref in zip(chain.degrees(), (-45, -35.2644, -30)):
            self.assertAlmostEqual(d, ref, places=4)
        m = chain_matrix(chain).entries
        self.assertTrue(np.allclose(m[0], [0.5]*4, atol=1e-12))
        self.assertTrue(np.allclose(apply_chain(chain, self.uniform),
                                    [1, 0, 0, 0], atol=1e-12))

    def test_doubled_generator(self):
        chain = dsiht_chain([0.36, 0.48, 0.48, 0.64])
        self.assertEqual(["%.2f" % d for d in chain.degrees()],
                         ["-53.13", "-38.66", "-39.79"])

    def test_basis_generator(self):
        chain = dsiht_chain([1, 0, 0, 0])
        self.assertEqual(chain.degrees(), [0.0, 0.0, 0.0])
        self.assertEqual(chain_matrix(chain).max_deviation(np.eye(4)), 0.0)

    def test_non_unit(self):
        with self.assertRaises(QError) as cm:
            dsiht_chain([1, 1, 0, 0])
        self.assertEqual(cm.exception.reason, QERR_NORM)

    def test_empty_chain(self):
        chain = RotationChain(4, [])
        v = random_unit(self.rng, 4)
        self.assertTrue(np.array_equal(apply_chain(chain, v), v))
        self.assertTrue(np.array_equal(apply_chain_inverse(chain, v), v))
        self.assertEqual(chain_matrix(chain).max_deviation(np.eye(4)), 0.0)

    def test_dimension_mismatch(self):
        chain = dsiht_chain(self.uniform)
        self.assertRaises(QError, apply_chain, chain, [1, 0])
        self.assertRaises(QError, apply_chain_inverse, chain, [1, 0])
        self.assertRaises(QError, RotationChain, 2,
                          [GivensRotation(0, 2, 0.1)])

    def test_generator_to_e0(self):
        for dim in (2, 4, 8):
            e0 = np.eye(dim)[0]
            for i in range(1000):
                g = random_unit(self.rng, dim)
                out = apply_chain(dsiht_chain(g), g)
                self.assertLess(np.max(np.abs(out - e0)), 1e-10)

    def test_inverse_round_trip(self):
        for i in range(100):
            dim = (2, 4, 8)[i % 3]
            chain = dsiht_chain(random_unit(self.rng, dim))
            v = random_unit(self.rng, dim)
            back = apply_chain_inverse(chain, apply_chain(chain, v))
            self.assertLess(np.max(np.abs(back - v)), 1e-12)
            w = apply_chain(chain.inverse(), apply_chain(chain, v))
            self.assertLess(np.max(np.abs(w - v)), 1e-12)

    def test_inverse_builds_generator(self):
        b = np.array(self.uniform)
        chain = dsiht_chain(b)
        self.assertTrue(np.allclose(apply_chain_inverse(chain, [1, 0, 0, 0]),
                                    b, atol=1e-12))

    def test_unitarity_and_det(self):
        for dim in (2, 4, 8):
            for i in range(50):
                m = chain_matrix(dsiht_chain(random_unit(self.rng, dim)))
                dev = np.max(np.abs(m.entries.T.dot(m.entries) - np.eye(dim)))
                self.assertLess(dev, 1e-10)
                self.assertLess(abs(m.det() - 1), DET_TOL)

    def test_sparse_dense_oracle(self):
        for dim in (2, 4, 8):
            for i in range(50):
                chain = dsiht_chain(random_unit(self.rng, dim))
                dense = chain_matrix(chain)
                v = self.rng.standard_normal(dim)
                self.assertLess(np.max(np.abs(apply_chain(chain, v) -
                                              dense.apply(v))), 1e-12)
                for k in range(dim):
                    e = np.eye(dim)[k]
                    self.assertLess(np.max(np.abs(apply_chain(chain, e) -
                                                  dense.entries[:, k])),
                                    1e-12)

    def test_factors(self):
        chain = dsiht_chain(self.uniform)
        prod = np.linalg.multi_dot(chain.factors())
        self.assertLess(chain_matrix(chain).max_deviation(prod), 1e-12)
        printed = [[0.8660, 0, 0, 0.5], [0, 1, 0, 0], [0, 0, 1, 0],
                   [-0.5, 0, 0, 0.8660]]
        self.assertLess(np.max(np.abs(chain.factors()[0] -
                                      np.array(printed))), 5e-5)

    def test_doc(self):
        chain = dsiht_chain(self.uniform)
        doc = chain.to_doc()
        self.assertEqual(doc["rotations"][0]["plane"], [0, 1])
        back = RotationChain.from_doc(doc)
        self.assertLess(chain_matrix(back).max_deviation(
            chain_matrix(chain)), 1e-12)
        self.assertRaises(QError, RotationChain.from_doc, {"dim": 4})
        self.assertRaises(QError, RotationChain.from_doc,
                          {"dim": 2, "rotations": [{"plane": [0, 3],
                                                    "degrees": 1}]})


class TestTransfer(unittest.TestCase):
    BELL_TO_UNIFORM = [[0.5577, -0.7071, -0.4082, 0.1494],
                       [0.5577, 0.7071, -0.4082, 0.1494],
                       [0.5577, 0, 0.8165, 0.1494],
                       [-0.2588, 0, 0, 0.9659]]
    THREE_FOUR = [[0.5159, -0.80, 0.0631, -0.2999],
                  [0.6878, 0.60, 0.0841, -0.3998],
                  [-0.3367, 0, 0.8525, -0.3998],
                  [0.3840, 0, 0.5120, 0.7684]]

    def setUp(self):
        self.rng = np.random.default_rng(5)

    def test_bell_to_uniform(self):
        s = 1/math.sqrt(2)
        u = transfer_unitary([s, 0, 0, s], [0.5]*4)
        self.assertLess(u.max_deviation(self.BELL_TO_UNIFORM), 5e-5)
        self.assertTrue(np.allclose(u.apply([s, 0, 0, s]), [0.5]*4,
                                    atol=1e-10))

    def test_three_four(self):
        x = np.array([3, 0, 4, 0]) / 5
        y = np.array([9, 12, 12, 16]) / 25
        u = transfer_unitary(x, y)
        self.assertLess(u.max_deviation(self.THREE_FOUR), 5e-5)
        self.assertLess(np.max(np.abs(u.apply(x) - y)), 1e-10)
        self.assertLess(abs(u.det() - 1), DET_TOL)

    def test_same(self):
        v = random_unit(self.rng, 4)
        u = transfer_unitary(v, v)
        self.assertLess(u.max_deviation(np.eye(4)), 1e-12)

    def test_random_pairs(self):
        for dim in (2, 4, 8):
            for i in range(100):
                a, b = random_unit(self.rng, dim), random_unit(self.rng, dim)
                u = transfer_unitary(a, b)
                self.assertLess(np.max(np.abs(u.apply(a) - b)), 1e-10)
                self.assertLess(abs(u.det() - 1), DET_TOL)
                v = transfer_unitary(b, a)
                self.assertLess(v.max_deviation(u.entries.T), 1e-12)

    def test_errors(self):
        self.assertRaises(QError, transfer_unitary, [1, 0], [1, 0, 0, 0])
        self.assertRaises(QError, transfer_unitary, [1, 1], [1, 0])

    def test_dimension_one(self):
        u = transfer_unitary([1.0], [1.0])
        self.assertEqual(u.max_deviation([[1.0]]), 0.0)
        with self.assertRaises(QError) as cm:
            transfer_unitary([1.0], [-1.0])
        self.assertEqual(cm.exception.reason, QERR_DIMENSION)

    def test_single_qubit(self):
        phi = Qubit(0.6, 0.8)
        t = single_qubit_transfer(phi, Qubit(1, 0))
        self.assertTrue(np.allclose(t.apply([0.6, 0.8]), [1, 0], atol=1e-12))
        u = single_qubit_transfer(phi, Qubit(0.8, 0.6))
        self.assertTrue(np.allclose(u.apply([0.6, 0.8]), [0.8, 0.6],
                                    atol=1e-12))
        self.assertLess(single_qubit_transfer(phi, phi)
                        .max_deviation(np.eye(2)), 1e-12)

    def test_basis_transfer(self):
        g = random_unit(self.rng, 4)
        for k in range(4):
            out = basis_transfer(g, k).apply(g)
            self.assertLess(np.max(np.abs(out - np.eye(4)[k])), 1e-10)
        self.assertRaises(QError, basis_transfer, g, 4)

    def test_matrix_checks(self):
        self.assertRaises(QError, UnitaryMatrix, [[1, 1], [0, 1]])
        self.assertRaises(QError, UnitaryMatrix, [[1, 0, 0]])
        m = UnitaryMatrix.from_doc({"dim": 2, "rows": [[0, 1], [1, 0]]})
        self.assertAlmostEqual(m.det(), -1.0)
        self.assertRaises(QError, UnitaryMatrix.from_doc,
                          {"dim": 2, "rows": [[0, 1]]})

if __name__ == '__main__':
    unittest.main()
