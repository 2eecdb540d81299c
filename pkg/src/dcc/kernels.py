"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set ``DCC_PURE=1`` in the environment to force the pure-Python kernels (used
by the twin-parity tests and the backend benchmark).
"""
from __future__ import annotations

import os

from . import _purecore

if os.environ.get("DCC_PURE") == "1":
    _impl = _purecore
    BACKEND = "pure"
else:
    try:
        from . import _fastcore as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _purecore
        BACKEND = "pure"

weight_distribution = _impl.weight_distribution
walsh_spectrum = _impl.walsh_spectrum
weights_from_multiset = _impl.weights_from_multiset
canonical_form = _impl.canonical_form
extension_solutions = _impl.extension_solutions
