"""Eigensolver kernel selection.

The compiled Cython extension is preferred when present; the vectorized
numpy fallback is used otherwise. Set BOUNDARYLAB_KERNELS=python or
BOUNDARYLAB_KERNELS=compiled to force a lane (the latter raises if the
extension is missing, which keeps benchmark comparisons honest).
"""
import os

_requested = os.environ.get("BOUNDARYLAB_KERNELS", "").strip().lower()
if _requested not in ("", "compiled", "python"):
    raise ImportError(
        f"BOUNDARYLAB_KERNELS must be 'compiled' or 'python', got {_requested!r}")

if _requested == "python":
    from . import fallback as _impl
else:
    try:
        from . import _jacobi as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _requested == "compiled":
            raise
        from . import fallback as _impl

BACKEND = _impl.BACKEND
eigh_many = _impl.eigh_many
eigvalsh_many = _impl.eigvalsh_many

__all__ = ["BACKEND", "eigh_many", "eigvalsh_many"]
