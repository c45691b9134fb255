""" qnest/__init__.py

Date: 2026-10-18

This file is a part of qnest, a deterministic state-vector engine for
transferring, copying and nesting qubits.

qnest is free software; you can redistribute it and/or modify
it under the terms of the GNU Lesser General Public License as published by
the Free Software Foundation; either version 2.1 of the License, or
(at your option) any later version.

qnest is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU Lesser General Public License for more details.
"""

from . import formutil, shotrng, statevec, heaptx, gates
from . import nesting, cloninglab, verify, cli
__all__ = ('formutil', 'shotrng', 'statevec', 'heaptx', 'gates',
           'nesting', 'cloninglab', 'verify', 'cli')
