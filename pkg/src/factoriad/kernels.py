"""Kernel backend selection.

The compiled extension is used when it imports; ``FACTORIAD_PURE=1`` forces
the pure-Python implementation.  Both expose identical functions.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("FACTORIAD_PURE", "") not in ("", "0"):
    backend = _pykernels
else:
    try:
        from . import _ckernels as backend  # type: ignore[no-redef]
    except ImportError:  # extension not built
        backend = _pykernels

BACKEND = backend.BACKEND

commuting_squares = backend.commuting_squares
square_composition = backend.square_composition
associativity_violation = backend.associativity_violation
square_scan = backend.square_scan
