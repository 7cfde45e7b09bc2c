"""Boundariness of density matrices.

For the set of states the weight infimum has a closed form: b(rho) is the
minimal eigenvalue, attained by peeling off a projector onto a minimal
eigenvector. States are plain complex ndarrays; `as_density_matrix` is the
checked constructor used by every entry point.
"""
from __future__ import annotations

import numpy as np

from . import linalg
from .convex import ConvexOracleSet, DecompositionCertificate
from .errors import ClaimViolationError, ValidationError
from .sampling import derive_stream, random_pure_states

TRACE_TOL = 1e-10
PSD_TOL = 1e-9


def as_density_matrix(entries) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, PSD."""
    m = linalg.hermitian(entries)
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValidationError(f"trace must be 1, got {tr!r}")
    if not linalg.is_psd(m, PSD_TOL):
        raise ValidationError("matrix is not positive semidefinite")
    return m


def state_boundariness(rho) -> tuple[float, DecompositionCertificate]:
    """b(rho) = lambda_min, with the attaining decomposition.

    The certificate x is the projector onto a minimal eigenvector psi and
    z = (rho - lambda_min x)/(1 - lambda_min), a boundary state. For a
    degenerate minimal eigenvalue any eigenvector works; the solver's
    first column is used.
    """
    rho = as_density_matrix(rho)
    d = rho.shape[0]
    if d < 2:
        raise ValidationError("state space needs dimension >= 2")
    w, v = linalg.eigh(rho)
    b = float(min(max(0.0, w[0]), 1.0 / d))
    psi = v[:, 0]
    x = np.outer(psi, psi.conj())
    z = (rho - b * x) / (1.0 - b)
    z = (z + z.conj().T) / 2.0
    residual = float(np.abs(b * x + (1.0 - b) * z - rho).max())
    if residual > 1e-10:
        raise ClaimViolationError(f"decomposition residual {residual:.3e} exceeds 1e-10")
    return b, DecompositionCertificate(b, x, z, residual)


def state_is_boundary(rho, tol: float = 1e-9) -> bool:
    """True iff the spectrum touches zero at the tolerance."""
    rho = as_density_matrix(rho)
    return bool(linalg.eigvalsh(rho)[0] <= tol)


def state_bounds_check(rho) -> tuple[float, float]:
    """The sandwich lambda_min <= b(rho) <= 1 - lambda_min."""
    rho = as_density_matrix(rho)
    lam = float(linalg.eigvalsh(rho)[0])
    return lam, 1.0 - lam


def state_weight(rho, xi, depth: int = 60) -> float:
    """Weight of the state xi at rho: sup{t : rho - t*xi is PSD}.

    The trace of (rho - t*xi)/(1-t) is 1 for free, so feasibility is a
    pure PSD question, monotone in t; bisection on [0, 1] resolves it.
    """
    rho = as_density_matrix(rho)
    xi = as_density_matrix(xi)
    if rho.shape != xi.shape:
        raise ValidationError(
            f"dimension mismatch: {rho.shape[0]} vs {xi.shape[0]}")
    if float(np.abs(rho - xi).max()) <= 1e-12:
        return 1.0

    def feasible(t: float) -> bool:
        return bool(linalg.eigvalsh(rho - t * xi)[0] >= -1e-12)

    if feasible(1.0):
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(depth):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def state_oracle_set(d: int) -> ConvexOracleSet:
    """The state set as a membership oracle over real coordinates.

    Density matrices embed isometrically into R^(d*d) via
    linalg.hermitian_to_rvec; membership checks PSD plus unit trace, and
    extremal samples are projectors onto seeded random pure states. Feeds
    remark1_scan for oracle cross-checks of the closed form.
    """
    if d < 2:
        raise ValidationError("state space needs dimension >= 2")

    def membership(vec: np.ndarray, tol: float) -> bool:
        m = linalg.rvec_to_hermitian(vec, d)
        if abs(float(np.trace(m).real) - 1.0) > 1e-6:
            return False
        return linalg.is_psd(m, tol)

    def membership_many(vecs: np.ndarray, tol: float) -> np.ndarray:
        ms = linalg.rvec_to_hermitian(vecs, d)
        traces = np.einsum("bii->b", ms).real
        return linalg.are_psd(ms, tol) & (np.abs(traces - 1.0) <= 1e-6)

    def sample_extremal(seed: int, i: int) -> np.ndarray:
        rng = derive_stream(seed, f"state-extremal-{i}")
        psi = random_pure_states(rng, d, 1)[0]
        return linalg.hermitian_to_rvec(np.outer(psi, psi.conj()))

    return ConvexOracleSet(d * d, membership, sample_extremal, membership_many)
