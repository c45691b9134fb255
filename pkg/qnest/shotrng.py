""" qnest/shotrng.py

Date: 2026-10-18

This file is part of qnest, a deterministic state-vector engine for
transferring, copying and nesting qubits. This file implements the seeded
random stream used for measurement sampling.

The stream is AES-128 in counter mode, spelled out:
  K       = seed as 128-bit big-endian integer (0 <= seed < 2**64)
  block_i = AES-128-ECB_K(i as 128-bit big-endian), i = 0, 1, 2, ...
  each block gives two 64-bit big-endian words, consumed in order
  uniform() = (word >> 11) * 2**-53
The sequence depends only on the seed, so shot sequences are bit-identical
across runs and platforms. Streams are owned by the caller; use spawn()
to get an independent stream instead of sharing one.

qnest is free software; you can redistribute it and/or modify
it under the terms of the GNU Lesser General Public License as published by
the Free Software Foundation; either version 2.1 of the License, or
(at your option) any later version.

qnest is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU Lesser General Public License for more details.
"""

from struct import unpack
import unittest
# PyCrypto API (pycryptodome)
from Crypto.Cipher import AES
# qnest
from .formutil import int2b, b2int

__all__ = ('ShotStream', 'check_seed', 'MASK64')

MASK64 = (1 << 64) - 1
REFILL = 64          # blocks encrypted per refill
SPAWN_FLAG = 1 << 127


def check_seed(seed):
    """ Return seed as int, raise ValueError if not a 64-bit unsigned."""
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ValueError("Seed must be an integer, got %r" % (seed,))
    if not 0 <= seed <= MASK64:
        raise ValueError("Seed out of 64-bit range: %d" % seed)
    return seed


class ShotStream(object):
    """ Deterministic random stream keyed by a 64-bit seed.

Usage:
  rng = ShotStream(42)
  u = rng.uniform()        # float in [0, 1)
  bit = rng.randbit(0.25)  # 1 with probability 0.25"""

    def __init__(self, seed):
        self.seed = check_seed(seed)
        self._setKey(int2b(self.seed, 128))

    @classmethod
    def fromKey(cls, key):
        """ Stream keyed directly by a 16B key (used by spawn)."""
        assert len(key) == 16, "Wrong key length %d" % len(key)
        stream = cls.__new__(cls)
        stream.seed = None
        stream._setKey(key)
        return stream

    def _setKey(self, key):
        self.key = key
        self.cipher = AES.new(key, AES.MODE_ECB)
        self.counter = 0
        self.words = []

    def _refill(self):
        data = b''.join([int2b(i, 128) for i in
                         range(self.counter, self.counter + REFILL)])
        self.counter += REFILL
        words = list(unpack(">%dQ" % (2*REFILL), self.cipher.encrypt(data)))
        words.reverse()   # pop() from the end
        self.words = words

    def nextWord(self):
        """ Next 64-bit unsigned word of the key stream."""
        if not self.words:
            self._refill()
        return self.words.pop()

    def uniform(self):
        """ Uniform float in [0, 1) with 53 random bits."""
        return (self.nextWord() >> 11) * 2.0**-53

    def randbit(self, p1):
        """ Return 1 with probability p1, else 0."""
        return 1 if self.uniform() < p1 else 0

    def spawn(self, label):
        """ Independent stream derived from this one's key and label
(0 <= label < 2**64); does not advance this stream."""
        check_seed(label)
        key = self.cipher.encrypt(int2b(SPAWN_FLAG | label, 128))
        return ShotStream.fromKey(key)

    def __repr__(self):
        if self.seed is None:
            return "ShotStream(key=%032X)" % b2int(self.key)
        return "ShotStream(%d)" % self.seed


# Unitary tests
class TestShotStream(unittest.TestCase):
    def test_known_answer(self):
        """ AES-128 of zero block under zero key (FIPS-197 family vector)"""
        rng = ShotStream(0)
        self.assertEqual(rng.nextWord(), 0x66E94BD4EF8A2C3B)
        self.assertEqual(rng.nextWord(), 0x884CFA59CA342B2E)

    def test_deterministic(self):
        r1, r2 = ShotStream(42), ShotStream(42)
        self.assertEqual([r1.uniform() for i in range(300)],
                         [r2.uniform() for i in range(300)])
        r3 = ShotStream(43)
        self.assertNotEqual(ShotStream(42).nextWord(), r3.nextWord())

    def test_range(self):
        rng = ShotStream(7)
        us = [rng.uniform() for i in range(2000)]
        self.assertTrue(all(0.0 <= u < 1.0 for u in us))
        mean = sum(us) / len(us)
        self.assertLess(abs(mean - 0.5), 0.03)

    def test_randbit(self):
        rng = ShotStream(1)
        self.assertEqual(set(rng.randbit(1.0) for i in range(50)), {1})
        self.assertEqual(set(rng.randbit(0.0) for i in range(50)), {0})

    def test_spawn(self):
        rng = ShotStream(42)
        child = rng.spawn(1)
        self.assertEqual(rng.counter, 0)
        self.assertNotEqual(child.nextWord(), ShotStream(42).nextWord())
        self.assertEqual(ShotStream(42).spawn(1).nextWord(),
                         ShotStream(42).spawn(1).nextWord())
        self.assertNotEqual(ShotStream(42).spawn(1).nextWord(),
                            ShotStream(42).spawn(2).nextWord())

    def test_seed_check(self):
        self.assertRaises(ValueError, ShotStream, -1)
        self.assertRaises(ValueError, ShotStream, 1 << 64)
        self.assertRaises(ValueError, ShotStream, 1.5)
        self.assertEqual(ShotStream(MASK64).seed, MASK64)

if __name__ == '__main__':
    unittest.main()
