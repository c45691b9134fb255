""" qnest/formutil.py

Date: 2026-10-18

This file is part of qnest, a deterministic state-vector engine for
transferring, copying and nesting qubits. This file contains formatting
utilities: integer/byte conversions, text rendering of matrices and angles,
and the JSON and CSV document helpers shared by the command line tool.

qnest is free software; you can redistribute it and/or modify
it under the terms of the GNU Lesser General Public License as published by
the Free Software Foundation; either version 2.1 of the License, or
(at your option) any later version.

qnest is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU Lesser General Public License for more details.
"""

import csv
import io
import json
import math
import unittest

__all__ = ('int2b', 'b2int', 'is_pow2', 'log2int', 'parse_floats',
           'fmt_number', 'fmt_degrees', 'fmt_vector', 'fmt_matrix',
           'dump_json', 'csv_text')


def int2b(n, bitlen):
    """ Convert non-negative integer into big-endian bytes,
 padded by zeros to bitlen bits."""
    if n < 0:
        raise ValueError("Negative value")
    bytelen = (bitlen + 7) // 8
    return n.to_bytes(bytelen, 'big')


def b2int(b):
    """ Convert big-endian bytes into integer. """
    return int.from_bytes(b, 'big')


def is_pow2(n):
    """ True if n is a positive power of two. """
    return n > 0 and n & (n - 1) == 0


def log2int(n):
    """ Exponent k such that 2**k == n; n must be a power of two."""
    assert is_pow2(n), "%d is not a power of two" % n
    return n.bit_length() - 1


def parse_floats(text):
    """ Parse comma separated reals, e.g. '0.5, 0.5,0.5,0.5'.
Raise ValueError on empty items or non-numbers."""
    items = [t.strip() for t in text.split(',')]
    if not items or any(t == '' for t in items):
        raise ValueError("Empty item in '%s'" % text)
    values = [float(t) for t in items]
    if not all(math.isfinite(v) for v in values):
        raise ValueError("Non-finite value in '%s'" % text)
    return values


def fmt_number(x, precision=4):
    """ Fixed point rendering; negative zero is printed as zero."""
    s = "%.*f" % (precision, x)
    if s.startswith('-') and float(s) == 0:
        s = s[1:]
    return s


def fmt_degrees(angle, places=2):
    """ Angle in radians rendered in degrees."""
    return fmt_number(math.degrees(angle), places)


def fmt_vector(v, precision=4):
    return '[' + ' '.join(fmt_number(x, precision) for x in v) + ']'


def fmt_matrix(rows, precision=4):
    """ Render matrix rows as right aligned columns, one row per line."""
    cells = [[fmt_number(x, precision) for x in row] for row in rows]
    width = max([len(c) for row in cells for c in row] or [1])
    return '\n'.join(' '.join(c.rjust(width) for c in row) for row in cells)


def dump_json(doc):
    """ Serialize document; same document gives the same bytes."""
    return json.dumps(doc, indent=2) + '\n'


def csv_text(header, rows):
    """ Render CSV with '\\n' line ends regardless of platform."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


# Unitary tests
class TestFormutil(unittest.TestCase):
    def test_int2b(self):
        self.assertEqual(int2b(1, 128), b'\0'*15 + b'\x01')
        self.assertEqual(b2int(int2b(0x1234, 64)), 0x1234)
        self.assertRaises(ValueError, int2b, -1, 8)

    def test_pow2(self):
        self.assertTrue(is_pow2(8))
        self.assertFalse(is_pow2(6))
        self.assertFalse(is_pow2(0))
        self.assertEqual(log2int(8), 3)

    def test_parse_floats(self):
        self.assertEqual(parse_floats("0.5, 0.5,0.5,0.5"), [0.5]*4)
        self.assertRaises(ValueError, parse_floats, "1,,0")
        self.assertRaises(ValueError, parse_floats, "1,x")
        self.assertRaises(ValueError, parse_floats, "nan,1")

    def test_fmt(self):
        self.assertEqual(fmt_number(-0.00001), "0.0000")
        self.assertEqual(fmt_degrees(-math.pi/4), "-45.00")
        self.assertEqual(fmt_matrix([[1, -0.5], [0, 1]], 2),
                         " 1.00 -0.50\n 0.00  1.00")

    def test_csv(self):
        self.assertEqual(csv_text(('outcome', 'count'), [(0, 3), (1, 4)]),
                         "outcome,count\n0,3\n1,4\n")

if __name__ == '__main__':
    unittest.main()
