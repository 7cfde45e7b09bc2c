"""Dense complex linear algebra primitives.

Everything downstream (states, observables, channels) funnels its
spectral questions through this module, which in turn drives the Jacobi
kernels in boundarylab._kernels. Matrices are plain complex128 ndarrays;
`hermitian` is the checked constructor that all parsers use.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from ._kernels import BACKEND, eigh_many, eigvalsh_many
from .errors import NumericalError, ValidationError

__all__ = [
    "BACKEND",
    "EigenDecomposition",
    "hermitian",
    "eigh",
    "eigvalsh",
    "eigvalsh_batch",
    "min_eigenvalues",
    "is_psd",
    "are_psd",
    "trace_norm",
    "tensor",
    "partial_trace_first",
    "hermitian_to_rvec",
    "rvec_to_hermitian",
    "matrix_to_json",
    "matrix_from_json",
]

HERMITICITY_TOL = 1e-12


class EigenDecomposition(NamedTuple):
    """Spectral decomposition with eigenvalues ascending.

    eigenvectors[:, k] belongs to eigenvalues[k]; the columns are
    orthonormal to 1e-10 and reconstruct the input to 1e-10 relative
    Frobenius error.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian(entries) -> np.ndarray:
    """Validate and symmetrize a Hermitian matrix.

    Accepts anything ndarray-like, requires a square matrix of finite
    entries whose asymmetry max|M - M^dag| stays below 1e-12 relative to
    max(1, max|M|), and returns (M + M^dag)/2 so downstream math sees an
    exactly Hermitian operator. Anything worse is rejected.
    """
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValidationError("matrix dimension must be at least 1")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise ValidationError("matrix contains NaN or Inf entries")
    scale = max(1.0, float(np.abs(m).max())) if m.size else 1.0
    asym = float(np.abs(m - m.conj().T).max())
    if asym > HERMITICITY_TOL * scale:
        raise ValidationError(
            f"matrix is not Hermitian: max asymmetry {asym:.3e} exceeds "
            f"{HERMITICITY_TOL:.0e} * {scale:.3g}")
    return (m + m.conj().T) / 2.0


def _as_batch(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim == 2:
        a = a[None, :, :]
    if a.ndim != 3 or a.shape[-1] != a.shape[-2]:
        raise ValidationError(f"expected square matrices, got shape {a.shape}")
    return a


def eigh(m) -> EigenDecomposition:
    """Eigendecomposition of a single Hermitian matrix, eigenvalues ascending."""
    a = _as_batch(m)
    if a.shape[0] != 1:
        raise ValidationError("eigh takes a single matrix; use eigh_many for stacks")
    w, v, ok = eigh_many(a)
    if not ok:
        raise NumericalError(
            f"Jacobi eigensolver failed to converge within 100 sweeps "
            f"on a {a.shape[-1]}x{a.shape[-1]} matrix")
    return EigenDecomposition(w[0], v[0])


def eigvalsh(m) -> np.ndarray:
    """Ascending eigenvalues of a single Hermitian matrix."""
    return eigvalsh_batch(_as_batch(m))[0]


def eigvalsh_batch(ms) -> np.ndarray:
    """Ascending eigenvalues for a stack of Hermitian matrices, shape (batch, n)."""
    a = _as_batch(ms)
    w, ok = eigvalsh_many(a)
    if not ok:
        raise NumericalError(
            f"Jacobi eigensolver failed to converge within 100 sweeps "
            f"on a batch of {a.shape[-1]}x{a.shape[-1]} matrices")
    return w


def min_eigenvalues(ms) -> np.ndarray:
    """Minimal eigenvalue of every matrix in a stack."""
    return eigvalsh_batch(ms)[:, 0]


def is_psd(m, tol: float = 1e-9) -> bool:
    """Positive semidefiniteness at a tolerance relative to the spectral radius.

    True iff lambda_min >= -tol * max(1, spectral_radius). tol must be
    nonnegative.
    """
    if tol < 0:
        raise ValidationError(f"tolerance must be nonnegative, got {tol}")
    w = eigvalsh(m)
    radius = max(1.0, float(np.abs(w).max()))
    return bool(w[0] >= -tol * radius)


def are_psd(ms, tol: float = 1e-9) -> np.ndarray:
    """Vectorized is_psd over a stack; returns a boolean array."""
    if tol < 0:
        raise ValidationError(f"tolerance must be nonnegative, got {tol}")
    w = eigvalsh_batch(ms)
    radius = np.maximum(1.0, np.abs(w).max(axis=1))
    return w[:, 0] >= -tol * radius


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.abs(eigvalsh(m)).sum())


def tensor(a, b) -> np.ndarray:
    """Kronecker product, first factor on the slow index."""
    return np.kron(np.asarray(a, dtype=np.complex128),
                   np.asarray(b, dtype=np.complex128))


def partial_trace_first(m, dim_first: int) -> np.ndarray:
    """Trace out the first tensor factor of dimension dim_first."""
    a = np.asarray(m, dtype=np.complex128)
    d = a.shape[0]
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    if dim_first < 1 or d % dim_first != 0:
        raise ValidationError(
            f"dimension {d} is not divisible by first-factor dimension {dim_first}")
    d2 = d // dim_first
    return np.einsum("aiaj->ij", a.reshape(dim_first, d2, dim_first, d2))


def hermitian_to_rvec(m) -> np.ndarray:
    """Isometric real coordinates of Hermitian matrices.

    Maps a stack (..., d, d) to real vectors (..., d*d): the diagonal,
    then sqrt(2) times the real and imaginary parts of the strict upper
    triangle, so Hilbert-Schmidt inner products become Euclidean ones.
    """
    a = np.asarray(m, dtype=np.complex128)
    d = a.shape[-1]
    if a.ndim < 2 or a.shape[-2] != d:
        raise ValidationError(f"expected square matrices, got shape {a.shape}")
    rows, cols = np.triu_indices(d, k=1)
    upper = a[..., rows, cols]
    diag = np.einsum("...ii->...i", a).real
    return np.concatenate(
        [diag, np.sqrt(2.0) * upper.real, np.sqrt(2.0) * upper.imag], axis=-1)


def rvec_to_hermitian(v, d: int) -> np.ndarray:
    """Inverse of hermitian_to_rvec for vectors (..., d*d)."""
    a = np.asarray(v, dtype=float)
    if a.shape[-1] != d * d:
        raise ValidationError(
            f"expected vectors of length {d * d}, got shape {a.shape}")
    rows, cols = np.triu_indices(d, k=1)
    k = rows.size
    m = np.zeros(a.shape[:-1] + (d, d), dtype=np.complex128)
    np.einsum("...ii->...i", m)[...] = a[..., :d]
    upper = (a[..., d:d + k] + 1j * a[..., d + k:]) / np.sqrt(2.0)
    m[..., rows, cols] = upper
    m[..., cols, rows] = np.conj(upper)
    return m


def matrix_to_json(m) -> dict:
    """Serialize to {"dim": d, "entries": [[[re, im], ...], ...]} row-major."""
    a = np.asarray(m, dtype=np.complex128)
    return {
        "dim": int(a.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a],
    }


def _cell_to_complex(cell, row: int, col: int) -> complex:
    if isinstance(cell, (int, float)):
        return complex(cell)
    if (not isinstance(cell, (list, tuple))) or len(cell) != 2:
        raise ValidationError(
            f"entries[{row}][{col}] must be a [re, im] pair, got {cell!r}")
    re, im = cell
    if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
        raise ValidationError(f"entries[{row}][{col}] has non-numeric parts: {cell!r}")
    return complex(re, im)


def matrix_from_json(obj, *, require_hermitian: bool = True) -> np.ndarray:
    """Parse the JSON matrix format, rejecting non-Hermitian input by default.

    With require_hermitian=False the matrix may be rectangular (used for
    Kraus operators); "dim" is then optional.
    """
    if not isinstance(obj, dict):
        raise ValidationError(f"matrix object must be a JSON object, got {type(obj).__name__}")
    entries = obj.get("entries")
    if entries is None:
        raise ValidationError("matrix object is missing the 'entries' field")
    if not isinstance(entries, list) or not entries:
        raise ValidationError("'entries' must be a nonempty list of rows")
    width = None
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list):
            raise ValidationError(f"entries[{i}] must be a list, got {type(row).__name__}")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ValidationError(
                f"entries[{i}] has length {len(row)}, expected {width}")
        rows.append([_cell_to_complex(c, i, j) for j, c in enumerate(row)])
    m = np.array(rows, dtype=np.complex128)
    if "dim" in obj:
        dim = obj["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise ValidationError(f"'dim' must be a positive integer, got {dim!r}")
        if m.shape[0] != dim or (require_hermitian and m.shape[1] != dim):
            raise ValidationError(
                f"'dim' is {dim} but entries have shape {m.shape[0]}x{m.shape[1]}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise ValidationError("matrix contains NaN or Inf entries")
    if require_hermitian:
        return hermitian(m)
    return m
