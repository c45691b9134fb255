""" qnest/gates.py

Date: 2026-10-18

This file is part of qnest, a deterministic state-vector engine for
transferring, copying and nesting qubits. This file implements gates
defined by their bit semantics (CNOT, Hadamard, 2-XOR, Toffoli, index
permutation, dense unitary) and their application to StateVectors.

Gates shuffle or mix amplitudes over index strides; dense 2^n x 2^n
matrices are built only by Gate.matrix(), as test oracles and for export.
Index lists of permutation gates depend on the qubit ordering: the 2-XOR
gate (c1=1, c2=2, t=3) is (2,3)(4,5) msb-first and (1,5)(2,6) lsb-first;
lsb_permutation() and translate_permutation() convert between the two.

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
# numpy
import numpy as np
# qnest
from .formutil import is_pow2
from .statevec import QError, StateVector, qubit_mask, basis_state, tensor, \
    QERR_RANGE, QERR_OVERLAP, QERR_BIJECTION, QERR_DIMENSION, QERR_DOCUMENT, \
    DERIVED_TOL
from .heaptx import UnitaryMatrix

__all__ = ('Gate', 'apply_cnot', 'apply_hadamard', 'apply_xor_cnot',
           'apply_toffoli', 'apply_permutation', 'apply_dense', 'run_circuit',
           'circuit_from_doc', 'circuit_to_doc', 'translate_permutation',
           'msb_permutation', 'lsb_permutation', 'format_cycles',
           'cnot_matrix', 'CNOT', 'HADAMARD', 'XOR_CNOT', 'TOFFOLI', 'PERM',
           'DENSE')

# gate kinds, as written in gate documents
CNOT = "cnot"
HADAMARD = "h"
XOR_CNOT = "xor_cnot"
TOFFOLI = "toffoli"
PERM = "perm"
DENSE = "dense"

SQRT_HALF = 1 / math.sqrt(2)
H2 = SQRT_HALF * np.array([[1, 1], [1, -1]])


def _check_positions(n, positions):
    if len(set(positions)) != len(positions):
        raise QError(QERR_OVERLAP, "positions %s" % (positions,))
    for k in positions:
        if not 1 <= k <= n:
            raise QError(QERR_RANGE, "qubit %d of %d" % (k, n))


def _gather(state, source):
    """ New state with amplitude i taken from index source[i]."""
    return StateVector(state.amplitudes[source])


def _flip_source(n, target, flip):
    """ Source indices for a gate flipping the target bit where flip(idx)."""
    idx = np.arange(1 << n)
    tmask = qubit_mask(n, target)
    return np.where(flip(idx), idx ^ tmask, idx)


def apply_cnot(state, control, target):
    """ Flip target iff control bit is 1."""
    n = state.num_qubits
    _check_positions(n, (control, target))
    cmask = qubit_mask(n, control)
    return _gather(state, _flip_source(n, target,
                                       lambda idx: (idx & cmask) != 0))


def apply_xor_cnot(state, c1, c2, target):
    """ 2-XOR: flip target iff bit(c1) XOR bit(c2) is 1."""
    n = state.num_qubits
    _check_positions(n, (c1, c2, target))
    m1, m2 = qubit_mask(n, c1), qubit_mask(n, c2)
    return _gather(state, _flip_source(
        n, target, lambda idx: ((idx & m1) != 0) ^ ((idx & m2) != 0)))


def apply_toffoli(state, c1, c2, target):
    """ Flip target iff both control bits are 1."""
    n = state.num_qubits
    _check_positions(n, (c1, c2, target))
    both = qubit_mask(n, c1) | qubit_mask(n, c2)
    return _gather(state, _flip_source(n, target,
                                       lambda idx: (idx & both) == both))


def apply_hadamard(state, k):
    """ Mix amplitude pairs differing in bit k by (1/sqrt2)[1 1; 1 -1]."""
    n = state.num_qubits
    _check_positions(n, (k,))
    amps = state.amplitudes.reshape(1 << (k-1), 2, 1 << (n-k))
    out = np.einsum('ij,ajb->aib', H2, amps)
    return StateVector(out.reshape(-1))


def _check_bijection(mapping):
    m = np.asarray(mapping)
    if m.ndim != 1 or not np.issubdtype(m.dtype, np.integer) or \
       not np.array_equal(np.sort(m), np.arange(len(m))):
        raise QError(QERR_BIJECTION, "map %s" % (list(mapping),))
    return m


def apply_permutation(state, mapping):
    """ Output amplitude at i is the input amplitude at mapping[i]."""
    m = _check_bijection(mapping)
    if len(m) != state.dim:
        raise QError(QERR_DIMENSION, "map of size %d on %d amplitudes"
                     % (len(m), state.dim))
    return _gather(state, m)


def apply_dense(state, matrix, span=None):
    """ Multiply by matrix acting on qubits span (contiguous, ascending;
default: the whole register)."""
    n = state.num_qubits
    u = getattr(matrix, 'entries', None)
    if u is None:
        u = UnitaryMatrix(matrix).entries
    if span is None:
        span = tuple(range(1, n+1))
    first, width = _check_span(n, span)
    if len(u) != 1 << width:
        raise QError(QERR_DIMENSION, "%dx%d matrix on %d qubits"
                     % (len(u), len(u), width))
    amps = state.amplitudes.reshape(1 << (first-1), 1 << width,
                                    1 << (n - first - width + 1))
    out = np.einsum('ij,ajb->aib', u, amps)
    return StateVector(out.reshape(-1))


def _check_span(n, span):
    span = tuple(span)
    if not span or list(span) != list(range(span[0], span[0] + len(span))):
        raise QError(QERR_RANGE, "span %s must be contiguous ascending"
                     % (span,))
    _check_positions(n, span)
    return span[0], len(span)


def _bits(i, n):
    return [(i >> (n - k)) & 1 for k in range(1, n+1)]


def _index(bits):
    i = 0
    for b in bits:
        i = 2*i + b
    return i


@dataclass(frozen=True)
class Gate:
    """ Semantic gate description; qubit positions are 1-based.
Build with the class methods cnot, hadamard, xor_cnot, toffoli,
permutation and dense."""
    kind: str
    qubits: tuple = ()
    mapping: tuple = None
    unitary: UnitaryMatrix = None

    @classmethod
    def cnot(cls, control, target):
        _check_positions(max(control, target, 1), (control, target))
        return cls(CNOT, (control, target))

    @classmethod
    def hadamard(cls, k):
        _check_positions(max(k, 1), (k,))
        return cls(HADAMARD, (k,))

    @classmethod
    def xor_cnot(cls, c1, c2, target):
        _check_positions(max(c1, c2, target, 1), (c1, c2, target))
        return cls(XOR_CNOT, (c1, c2, target))

    @classmethod
    def toffoli(cls, c1, c2, target):
        _check_positions(max(c1, c2, target, 1), (c1, c2, target))
        return cls(TOFFOLI, (c1, c2, target))

    @classmethod
    def permutation(cls, mapping):
        m = _check_bijection(mapping)
        if len(m) < 2 or not is_pow2(len(m)):
            raise QError(QERR_DIMENSION, "map of size %d" % len(m))
        return cls(PERM, mapping=tuple(int(x) for x in m))

    @classmethod
    def dense(cls, matrix, span):
        if not isinstance(matrix, UnitaryMatrix):
            matrix = UnitaryMatrix(matrix)
        span = tuple(span)
        first, width = _check_span(max(span + (1,)), span)
        if matrix.dim != 1 << width:
            raise QError(QERR_DIMENSION, "%dx%d matrix on %d qubits"
                         % (matrix.dim, matrix.dim, width))
        return cls(DENSE, span, unitary=matrix)

    def apply(self, state):
        if self.kind == CNOT:
            return apply_cnot(state, *self.qubits)
        if self.kind == HADAMARD:
            return apply_hadamard(state, *self.qubits)
        if self.kind == XOR_CNOT:
            return apply_xor_cnot(state, *self.qubits)
        if self.kind == TOFFOLI:
            return apply_toffoli(state, *self.qubits)
        if self.kind == PERM:
            return apply_permutation(state, self.mapping)
        if self.kind == DENSE:
            return apply_dense(state, self.unitary, self.qubits)
        raise QError(QERR_DOCUMENT, "unknown gate kind %r" % self.kind)

    def permutation_map(self, n):
        """ msb-first source list of a permutation-type gate on n qubits,
computed bit by bit (None for Hadamard and dense gates)."""
        if self.kind == PERM:
            if len(self.mapping) != 1 << n:
                raise QError(QERR_DIMENSION, "map of size %d on %d qubits"
                             % (len(self.mapping), n))
            return list(self.mapping)
        if self.kind not in (CNOT, XOR_CNOT, TOFFOLI):
            return None
        _check_positions(n, self.qubits)
        *controls, t = self.qubits
        source = []
        for i in range(1 << n):
            bits = _bits(i, n)
            cbits = [bits[c-1] for c in controls]
            if self.kind == CNOT:
                flip = cbits[0] == 1
            elif self.kind == XOR_CNOT:
                flip = cbits[0] != cbits[1]
            else:
                flip = cbits[0] == 1 and cbits[1] == 1
            if flip:
                bits[t-1] ^= 1
            source.append(_index(bits))
        return source

    def matrix(self, n):
        """ Brute-force dense 2^n x 2^n matrix of the gate."""
        src = self.permutation_map(n)
        if src is not None:
            m = np.zeros((1 << n, 1 << n))
            for i, j in enumerate(src):
                m[i, j] = 1.0
            return m
        if self.kind == HADAMARD:
            k = self.qubits[0]
            _check_positions(n, (k,))
            return np.kron(np.kron(np.eye(1 << (k-1)), H2),
                           np.eye(1 << (n-k)))
        first, width = _check_span(n, self.qubits)
        return np.kron(np.kron(np.eye(1 << (first-1)), self.unitary.entries),
                       np.eye(1 << (n - first - width + 1)))

    def to_doc(self):
        if self.kind == CNOT:
            return {"kind": CNOT, "control": self.qubits[0],
                    "target": self.qubits[1]}
        if self.kind == HADAMARD:
            return {"kind": HADAMARD, "qubit": self.qubits[0]}
        if self.kind in (XOR_CNOT, TOFFOLI):
            return {"kind": self.kind, "controls": list(self.qubits[:2]),
                    "target": self.qubits[2]}
        if self.kind == PERM:
            return {"kind": PERM, "map": list(self.mapping)}
        return {"kind": DENSE, "qubits": list(self.qubits),
                "rows": self.unitary.rows()}

    @classmethod
    def from_doc(cls, doc):
        try:
            kind = doc["kind"]
            if kind == CNOT:
                return cls.cnot(int(doc["control"]), int(doc["target"]))
            if kind == HADAMARD:
                return cls.hadamard(int(doc["qubit"]))
            if kind in (XOR_CNOT, TOFFOLI):
                c1, c2 = [int(c) for c in doc["controls"]]
                make = cls.xor_cnot if kind == XOR_CNOT else cls.toffoli
                return make(c1, c2, int(doc["target"]))
            if kind == PERM:
                return cls.permutation([int(x) for x in doc["map"]])
            if kind == DENSE:
                return cls.dense(doc["rows"], [int(k) for k in doc["qubits"]])
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, QError):
                raise
            raise QError(QERR_DOCUMENT, "gate %r: %s" % (doc, e))
        raise QError(QERR_DOCUMENT, "unknown gate kind %r" % (kind,))


def run_circuit(state, gates):
    """ Apply gates in order."""
    for g in gates:
        state = g.apply(state)
    return state


def circuit_to_doc(gates):
    return [g.to_doc() for g in gates]


def circuit_from_doc(doc):
    if not isinstance(doc, list):
        raise QError(QERR_DOCUMENT, "circuit must be a list of gates")
    return [Gate.from_doc(d) for d in doc]


def _reverse_bits(i, n):
    return _index(list(reversed(_bits(i, n))))


def translate_permutation(mapping, n):
    """ Convert an index list between msb-first and lsb-first ordering
(the translation is its own inverse)."""
    if len(mapping) != 1 << n:
        raise QError(QERR_DIMENSION, "map of size %d on %d qubits"
                     % (len(mapping), n))
    _check_bijection(mapping)
    out = [0] * len(mapping)
    for i, j in enumerate(mapping):
        out[_reverse_bits(i, n)] = _reverse_bits(j, n)
    return out


def msb_permutation(gate, n):
    """ Index list of a permutation-type gate in msb-first ordering."""
    src = gate.permutation_map(n)
    if src is None:
        raise QError(QERR_DOCUMENT, "%s gate is not a permutation"
                     % gate.kind)
    return src


def cnot_matrix(n, control, target):
    """ Dense 2^n x 2^n CNOT matrix."""
    return Gate.cnot(control, target).matrix(n)


def lsb_permutation(gate, n):
    """ Index list of a permutation-type gate in lsb-first ordering."""
    return translate_permutation(msb_permutation(gate, n), n)


def format_cycles(mapping):
    """ Cycle notation of an index list, fixed points omitted:
[0,5,6,3,4,1,2,7] -> '(1,5)(2,6)'"""
    seen = set()
    out = ''
    for start in range(len(mapping)):
        if start in seen or mapping[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        j = mapping[start]
        while j != start:
            cycle.append(j)
            seen.add(j)
            j = mapping[j]
        out += '(' + ','.join(str(c) for c in cycle) + ')'
    return out


# Unitary tests
class TestGates(unittest.TestCase):
    def setUp(self):
        from .statevec import random_state
        self.rng = np.random.default_rng(3)
        self.random_state = lambda n: random_state(self.rng, n)
        self.a, self.b = 0.6, 0.8
        a, b, s = self.a, self.b, SQRT_HALF
        # (a|000> + b|011> + a|101> + b|110>)/sqrt2
        self.chi = StateVector([a*s, 0, 0, b*s, 0, a*s, b*s, 0])
        self.xi = StateVector([a*s, 0, b*s, 0, a*s, 0, b*s, 0])

    def ket(self, label):
        return basis_state(len(label), int(label, 2))

    def test_cnot(self):
        a, b = self.a, self.b
        phi0 = StateVector([a, 0, b, 0])
        self.assertTrue(apply_cnot(phi0, 1, 2).allclose([a, 0, 0, b], 0))
        self.assertTrue(apply_cnot(self.ket('10'), 1, 2)
                        .allclose(self.ket('11'), 0))
        self.assertTrue(apply_cnot(self.ket('00'), 1, 2)
                        .allclose(self.ket('00'), 0))
        self.assertTrue(apply_cnot(self.ket('01'), 2, 1)
                        .allclose(self.ket('11'), 0))

    def test_cnot_errors(self):
        with self.assertRaises(QError) as cm:
            apply_cnot(self.ket('00'), 1, 1)
        self.assertEqual(cm.exception.reason, QERR_OVERLAP)
        with self.assertRaises(QError) as cm:
            apply_cnot(self.ket('00'), 1, 3)
        self.assertEqual(cm.exception.reason, QERR_RANGE)

    def test_hadamard(self):
        s = SQRT_HALF
        self.assertTrue(apply_hadamard(self.ket('0'), 1).allclose([s, s]))
        self.assertTrue(apply_hadamard(self.ket('1'), 1).allclose([s, -s]))
        st = self.random_state(3)
        for k in (1, 2, 3):
            self.assertTrue(apply_hadamard(apply_hadamard(st, k), k)
                            .allclose(st))
        self.assertRaises(QError, apply_hadamard, st, 4)

    def test_xor_cnot(self):
        self.assertTrue(apply_xor_cnot(self.chi, 1, 2, 3).allclose(self.xi, 0))
        self.assertTrue(apply_xor_cnot(self.ket('000'), 1, 2, 3)
                        .allclose(self.ket('000'), 0))
        self.assertTrue(apply_xor_cnot(self.ket('011'), 1, 2, 3)
                        .allclose(self.ket('010'), 0))
        self.assertRaises(QError, apply_xor_cnot, self.chi, 1, 1, 3)

    def test_xor_is_two_cnots(self):
        for i in range(1000):
            st = self.random_state(3)
            two = apply_cnot(apply_cnot(st, 2, 3), 1, 3)
            self.assertLess(np.max(np.abs(
                apply_xor_cnot(st, 1, 2, 3).amplitudes - two.amplitudes)),
                1e-14)

    def test_toffoli(self):
        self.assertTrue(apply_toffoli(self.ket('110'), 1, 2, 3)
                        .allclose(self.ket('111'), 0))
        self.assertTrue(apply_toffoli(self.ket('111'), 1, 2, 3)
                        .allclose(self.ket('110'), 0))
        self.assertTrue(apply_toffoli(self.ket('010'), 1, 2, 3)
                        .allclose(self.ket('010'), 0))

    def test_involutions(self):
        for i in range(100):
            st = self.random_state(3)
            for f, args in ((apply_cnot, (1, 3)), (apply_cnot, (3, 2)),
                            (apply_xor_cnot, (1, 2, 3)),
                            (apply_toffoli, (2, 3, 1))):
                self.assertTrue(f(f(st, *args), *args).allclose(st, 0))

    def test_permutation(self):
        st = self.random_state(3)
        self.assertTrue(apply_permutation(st, range(8)).allclose(st, 0))
        swap = [0, 1, 3, 2, 5, 4, 6, 7]
        self.assertTrue(apply_permutation(self.chi, swap)
                        .allclose(self.xi, 0))
        self.assertRaises(QError, apply_permutation, st, [0, 0, 1, 2, 3, 4,
                                                          5, 6])
        self.assertRaises(QError, apply_permutation, st, [1, 0])

    def test_printed_lsb_list(self):
        from .statevec import bit_reversed
        printed = [0, 5, 6, 3, 4, 1, 2, 7]
        out = apply_permutation(bit_reversed(self.chi), printed)
        self.assertTrue(out.allclose(bit_reversed(self.xi), 0))

    def test_renderings(self):
        xor = Gate.xor_cnot(1, 2, 3)
        self.assertEqual(xor.permutation_map(3), [0, 1, 3, 2, 5, 4, 6, 7])
        self.assertEqual(lsb_permutation(xor, 3), [0, 5, 6, 3, 4, 1, 2, 7])
        self.assertEqual(format_cycles(lsb_permutation(xor, 3)), '(1,5)(2,6)')
        self.assertEqual(format_cycles(xor.permutation_map(3)), '(2,3)(4,5)')
        tof = Gate.toffoli(1, 2, 3)
        self.assertEqual(format_cycles(tof.permutation_map(3)), '(6,7)')
        self.assertEqual(format_cycles(lsb_permutation(tof, 3)), '(3,7)')
        self.assertEqual(translate_permutation(
            translate_permutation([0, 5, 6, 3, 4, 1, 2, 7], 3), 3),
            [0, 5, 6, 3, 4, 1, 2, 7])
        self.assertEqual(msb_permutation(Gate.cnot(1, 2), 2), [0, 1, 3, 2])
        self.assertTrue(np.array_equal(
            cnot_matrix(2, 1, 2), [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1],
                                   [0, 0, 1, 0]]))
        self.assertRaises(QError, lsb_permutation, Gate.hadamard(1), 3)

    def test_dense(self):
        s = SQRT_HALF
        u = np.array([[0.5577, -0.7071, -0.4082, 0.1494],
                      [0.5577, 0.7071, -0.4082, 0.1494],
                      [0.5577, 0, 0.8165, 0.1494],
                      [-0.2588, 0, 0, 0.9659]])
        from .heaptx import transfer_unitary
        exact = transfer_unitary([s, 0, 0, s], [0.5]*4)
        self.assertLess(exact.max_deviation(u), 5e-5)
        out = apply_dense(StateVector([s, 0, 0, s]), exact)
        self.assertTrue(out.allclose([0.5]*4, 1e-10))
        st = self.random_state(2)
        self.assertTrue(apply_dense(st, np.eye(4)).allclose(st, 0))
        copier = s * np.array([[1, 0, 0, 1], [0, 1, 1, 0], [0, -1, 1, 0],
                               [1, 0, 0, -1]])
        out = apply_dense(StateVector([s, 0, -s, 0]), copier)
        self.assertTrue(out.allclose([0.5, -0.5, -0.5, 0.5]))
        self.assertRaises(QError, apply_dense, st, np.eye(8))
        self.assertRaises(QError, apply_dense, st, [[1, 1], [0, 1]])

    def test_dense_span(self):
        st = self.random_state(3)
        via_h = apply_hadamard(st, 2)
        via_dense = apply_dense(st, H2, (2,))
        self.assertTrue(via_h.allclose(via_dense))
        self.assertRaises(QError, Gate.dense, np.eye(4), (1, 3))

    def test_norm_preserved(self):
        gates = [Gate.cnot(1, 2), Gate.hadamard(3), Gate.xor_cnot(3, 1, 2),
                 Gate.toffoli(1, 3, 2), Gate.permutation([7, 6, 5, 4, 3, 2,
                                                          1, 0]),
                 Gate.dense(H2, (1,))]
        for i in range(50):
            st = self.random_state(3)
            for g in gates:
                out = g.apply(st)
                self.assertLess(abs(float(np.dot(out.amplitudes,
                                                 out.amplitudes)) - 1), 1e-12)

    def test_dense_oracle(self):
        for n in (1, 2, 3):
            gates = [Gate.hadamard(k) for k in range(1, n+1)]
            perm = np.random.default_rng(n).permutation(1 << n)
            gates += [Gate.permutation(perm),
                      Gate.permutation(list(range(1 << n))[::-1])]
            if n >= 2:
                gates += [Gate.cnot(1, n), Gate.cnot(n, 1),
                          Gate.dense(H2, (n,))]
            if n >= 3:
                gates += [Gate.xor_cnot(1, 2, 3), Gate.xor_cnot(3, 2, 1),
                          Gate.toffoli(1, 2, 3), Gate.toffoli(3, 1, 2),
                          Gate.dense(np.kron(H2, H2), (2, 3))]
            for g in gates:
                m = g.matrix(n)
                for i in range(20):
                    st = self.random_state(n)
                    self.assertLess(np.max(np.abs(
                        g.apply(st).amplitudes - m.dot(st.amplitudes))),
                        DERIVED_TOL)

    def test_doc(self):
        circuit = [Gate.cnot(2, 3), Gate.hadamard(1), Gate.xor_cnot(1, 2, 3),
                   Gate.toffoli(1, 2, 3), Gate.permutation([1, 0, 2, 3]),
                   Gate.dense(H2, (1,))]
        back = circuit_from_doc(circuit_to_doc(circuit))
        self.assertEqual([g.to_doc() for g in back], circuit_to_doc(circuit))
        for bad in ({"kind": "swap"}, {"kind": "cnot", "control": 1},
                    {"kind": "perm", "map": [0, 0]}, "cnot"):
            self.assertRaises(QError, Gate.from_doc, bad)
        self.assertRaises(QError, circuit_from_doc, {"kind": "h"})

    def test_run_circuit(self):
        a, b = self.a, self.b
        zero = basis_state(1, 0)
        start = tensor(zero, tensor(StateVector([a, b]), zero))
        out = run_circuit(start, [Gate.cnot(2, 3), Gate.hadamard(1),
                                  Gate.cnot(1, 3), Gate.xor_cnot(1, 2, 3)])
        self.assertTrue(out.allclose(self.xi))

if __name__ == '__main__':
    unittest.main()
