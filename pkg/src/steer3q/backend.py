"""Kernel backend selection.

The compiled extension (``steer3q._native``) is preferred when importable;
setting ``STEER3Q_PURE_PYTHON=1`` forces the numpy fallback.  Both expose
the same functions with identical semantics, so everything above this
module is backend-agnostic.
"""

import os

from . import _fallback

if os.environ.get("STEER3Q_PURE_PYTHON", "") not in ("", "0"):
    _impl = _fallback
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _fallback


def backend_name() -> str:
    return "native" if _impl.__name__.endswith("_native") else "fallback"


jacobi_eigh = _impl.jacobi_eigh
ptrace = _impl.ptrace
bloch2 = _impl.bloch2
bloch3 = _impl.bloch3
cjwr_single = _impl.cjwr_single
cjwr_batch = _impl.cjwr_batch
