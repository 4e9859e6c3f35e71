"""Backend selection for the elimination kernels.

The compiled Cython module is preferred when importable; otherwise the pure
Python kernels are used.  Set FISCHERLAB_BACKEND=pure or =compiled to force
a choice (forcing "compiled" raises if the extension was not built).
"""

from __future__ import annotations

import os

from . import pure as _pure

_forced = os.environ.get("FISCHERLAB_BACKEND", "").strip().lower()

if _forced == "pure":
    _impl = _pure
    BACKEND = "pure"
elif _forced == "compiled":
    from . import _speedups as _impl

    BACKEND = "compiled"
elif _forced:
    raise ImportError(
        f"FISCHERLAB_BACKEND={_forced!r} not understood; use 'pure' or 'compiled'"
    )
else:
    try:
        from . import _speedups as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

rref_q = _impl.rref_q
rref_qi = _impl.rref_qi


def backend_name():
    """Name of the kernel backend selected at import time."""
    return BACKEND


def available_backends():
    """Map of importable backend name -> kernel module."""
    backends = {"pure": _pure}
    try:
        from . import _speedups

        backends["compiled"] = _speedups
    except ImportError:
        pass
    return backends
