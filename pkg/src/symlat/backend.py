"""Statevector kernel backend selection.

The compiled Cython kernels are used when present; otherwise the numpy
fallback takes over transparently.  Set SYMLAT_BACKEND=python or
SYMLAT_BACKEND=c to force a choice (forcing `c` raises if the extension was
not built).
"""

from __future__ import annotations

import os

_requested = os.environ.get("SYMLAT_BACKEND", "").strip().lower()
if _requested not in ("", "c", "python"):
    raise ValueError(f"SYMLAT_BACKEND must be 'c' or 'python', got {_requested!r}")

if _requested == "python":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _requested == "c":
            raise
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND_NAME
apply_1q = _impl.apply_1q
apply_cnot = _impl.apply_cnot
expectation_diag = _impl.expectation_diag
overlap_1q = _impl.overlap_1q
adjoint_rot_step = _impl.adjoint_rot_step
