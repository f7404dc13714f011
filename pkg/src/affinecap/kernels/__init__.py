"""Kernel backend selection.

The compiled Cython kernel is preferred; the pure-numpy fallback is used when
the extension is unavailable or when AFFINECAP_KERNEL=python is set.  Both
expose the same ``projection_parts`` contract and agree to double rounding.
"""

from __future__ import annotations

import os

from . import _py

_FORCED = os.environ.get("AFFINECAP_KERNEL", "").strip().lower()

if _FORCED == "python":
    _impl = _py
    BACKEND = "python"
else:
    try:
        from . import _speed as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _FORCED == "compiled":
            raise
        _impl = _py
        BACKEND = "python"

projection_parts = _impl.projection_parts


def backend() -> str:
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return BACKEND
