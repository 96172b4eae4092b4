"""Backend selection for the quadrature kernels.

The compiled extension is preferred; setting ``RELFD_PURE_PYTHON=1`` in the
environment, or a failed import, selects the pure-Python twin. ``BACKEND``
records which one is active.
"""
from __future__ import annotations

import os

from . import _pykernels
from ._pykernels import KIND_FD, KIND_FD_UPPER, KIND_KUMMER

if os.environ.get("RELFD_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

integrate = _impl.integrate

__all__ = ["BACKEND", "KIND_FD", "KIND_FD_UPPER", "KIND_KUMMER", "integrate"]
