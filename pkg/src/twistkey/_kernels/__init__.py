"""Hot kernels, compiled when available.

The Cython core (``_ccore``) is used if it was built; otherwise the
pure-Python module ``_pure`` is used. Set ``TWISTKEY_PURE_PYTHON=1`` to
force the fallback. ``BACKEND`` names the active implementation.
"""
from __future__ import annotations

import os

from . import _pure

if os.environ.get("TWISTKEY_PURE_PYTHON"):
    _impl = _pure
else:
    try:
        from . import _ccore as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure

BACKEND = "cython" if _impl is not _pure else "python"

coset_twist_sum = _impl.coset_twist_sum
twist_index = _impl.twist_index
twist_range = _impl.twist_range
shift_codes = _impl.shift_codes


def compiled_available() -> bool:
    try:
        from . import _ccore  # noqa: F401
    except ImportError:
        return False
    return True


__all__ = [
    "BACKEND",
    "coset_twist_sum",
    "compiled_available",
    "shift_codes",
    "twist_index",
    "twist_range",
]
