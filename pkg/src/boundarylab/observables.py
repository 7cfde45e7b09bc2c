"""Boundariness of n-outcome POVMs and the saturating decomposition.

b of a POVM is the smallest eigenvalue over all effects. The attaining
split peels a projective observable A off the input: the argmin effect
gives up a projector onto its minimal eigenvector, one partner effect
absorbs the complement, and the remainder B lands on the boundary.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ClaimViolationError, NumericalError, ValidationError
from .sampling import derive_stream, random_pure_states

EFFECT_PSD_TOL = 1e-9
COMPLETENESS_TOL = 1e-10


@dataclass(frozen=True)
class Povm:
    """Ordered effects of an n-outcome measurement, shape (n, d, d).

    Effects must be Hermitian (1e-12), PSD (1e-9) and sum to the identity
    (1e-10). Zero effects are allowed; they force b = 0.
    """

    effects: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.effects, dtype=np.complex128)
        if e.ndim != 3 or e.shape[-1] != e.shape[-2]:
            raise ValidationError(f"effects must be a (n, d, d) stack, got shape {e.shape}")
        if e.shape[0] < 2:
            raise ValidationError("a POVM needs at least 2 outcomes")
        if not (np.all(np.isfinite(e.real)) and np.all(np.isfinite(e.imag))):
            raise ValidationError("effects contain NaN or Inf entries")
        scale = max(1.0, float(np.abs(e).max()))
        asym = float(np.abs(e - np.conj(np.transpose(e, (0, 2, 1)))).max())
        if asym > 1e-12 * scale:
            raise ValidationError(f"effect asymmetry {asym:.3e} exceeds Hermitian tolerance")
        e = (e + np.conj(np.transpose(e, (0, 2, 1)))) / 2.0
        if not np.all(linalg.are_psd(e, EFFECT_PSD_TOL)):
            bad = int(np.flatnonzero(~linalg.are_psd(e, EFFECT_PSD_TOL))[0])
            raise ValidationError(f"effect {bad} is not positive semidefinite")
        total = e.sum(axis=0)
        dev = float(np.abs(total - np.eye(e.shape[-1])).max())
        if dev > COMPLETENESS_TOL:
            raise ValidationError(f"effects sum to identity only within {dev:.3e}")
        object.__setattr__(self, "effects", e)

    @property
    def n_outcomes(self) -> int:
        return self.effects.shape[0]

    @property
    def dim(self) -> int:
        return self.effects.shape[-1]

    def to_json(self) -> dict:
        return {
            "kind": "povm",
            "dim": self.dim,
            "effects": [linalg.matrix_to_json(m) for m in self.effects],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Povm":
        if not isinstance(obj, dict):
            raise ValidationError("POVM object must be a JSON object")
        if obj.get("kind", "povm") != "povm":
            raise ValidationError(f"expected kind 'povm', got {obj.get('kind')!r}")
        effects = obj.get("effects")
        if not isinstance(effects, list) or len(effects) < 2:
            raise ValidationError("'effects' must be a list of at least 2 matrices")
        mats = [linalg.matrix_from_json(m) for m in effects]
        dims = {m.shape[0] for m in mats}
        if len(dims) != 1:
            raise ValidationError(f"effects have mixed dimensions {sorted(dims)}")
        if "dim" in obj and obj["dim"] != mats[0].shape[0]:
            raise ValidationError(
                f"'dim' is {obj['dim']} but effects are {mats[0].shape[0]}-dimensional")
        return cls(np.stack(mats))


@dataclass(frozen=True)
class PovmDecomposition:
    """Witness for C = t*A + (1-t)*B with A projective and B on the boundary."""

    t: float
    a: Povm
    b: Povm
    residual: float


def povm_boundariness(c: Povm) -> tuple[float, int, PovmDecomposition]:
    """b(C) = min_j lambda_min(C_j), its argmin index, and the split.

    Ties pick the lowest outcome index. The extremal part A places the
    minimal-eigenvector projector at the argmin outcome k and the
    complement projector at the smallest index != k; B = (C - bA)/(1-b)
    then inherits a zero eigenvalue at outcome k.
    """
    if not isinstance(c, Povm):
        c = Povm(np.asarray(c))
    mins = linalg.min_eigenvalues(c.effects)
    k = int(np.argmin(mins))
    b = float(min(max(0.0, mins[k]), 1.0))
    if b > 0.5 + 1e-12:
        raise ClaimViolationError(f"boundariness {b} exceeds 1/2")
    _, vecs = linalg.eigh(c.effects[k])
    psi = vecs[:, 0]
    proj = np.outer(psi, psi.conj())
    a_eff = np.zeros_like(c.effects)
    a_eff[k] = proj
    partner = 0 if k != 0 else 1
    a_eff[partner] = np.eye(c.dim) - proj
    b_eff = (c.effects - b * a_eff) / (1.0 - b)
    a_povm = Povm(a_eff)
    b_povm = Povm(b_eff)
    residual = float(np.abs(b * a_eff + (1.0 - b) * b_eff - c.effects).max())
    if residual > 1e-10:
        raise ClaimViolationError(f"decomposition residual {residual:.3e} exceeds 1e-10")
    return b, k, PovmDecomposition(b, a_povm, b_povm, residual)


def povm_is_boundary(c: Povm, tol: float = 1e-9) -> bool:
    """True iff some effect has an eigenvalue at zero within tol."""
    if not isinstance(c, Povm):
        c = Povm(np.asarray(c))
    return bool(linalg.min_eigenvalues(c.effects).min() <= tol)


def _padded_difference(c: Povm, a: Povm) -> np.ndarray:
    if c.dim != a.dim:
        raise ValidationError(f"dimension mismatch: {c.dim} vs {a.dim}")
    n = max(c.n_outcomes, a.n_outcomes)
    d = c.dim

    def pad(e: np.ndarray) -> np.ndarray:
        if e.shape[0] == n:
            return e
        return np.concatenate([e, np.zeros((n - e.shape[0], d, d), dtype=e.dtype)])

    return pad(c.effects) - pad(a.effects)


def _sign_ascent(diff: np.ndarray, psi: np.ndarray, iters: int = 100) -> float:
    """Alternating maximization of sum_j |<psi|D_j|psi>| over pure states.

    Fixing the signs s_j reduces the objective to the top eigenvector of
    sum_j s_j D_j; each half-step is nondecreasing, so the loop climbs to
    a fixed point.
    """
    value = float(np.abs(np.einsum("i,nij,j->n", psi.conj(), diff, psi).real).sum())
    for _ in range(iters):
        overlaps = np.einsum("i,nij,j->n", psi.conj(), diff, psi).real
        signs = np.where(overlaps >= 0.0, 1.0, -1.0)
        m = np.einsum("n,nij->ij", signs, diff)
        _, vecs = linalg.eigh(m)
        psi = vecs[:, -1]
        new = float(np.abs(np.einsum("i,nij,j->n", psi.conj(), diff, psi).real).sum())
        if new <= value + 1e-12:
            return max(new, value)
        value = new
    return value


def povm_distance_to(c: Povm, a: Povm, n_restarts: int = 64, seed: int = 0) -> float:
    """Lower-bound estimate of sup_rho sum_j |tr(rho (C_j - A_j))|.

    The supremum is attained on pure states, so the estimate maximizes
    over pure inputs: the analytic minimal-eigenvector candidates of both
    POVMs plus seeded random restarts, each refined by sign ascent. Exact
    for the saturating pair of povm_boundariness; a lower bound in
    general. Outcome lists of different lengths are padded with zero
    effects; only the dimension must match.
    """
    if n_restarts < 0:
        raise ValidationError("n_restarts must be nonnegative")
    diff = _padded_difference(c, a)
    d = c.dim
    candidates = []
    for povm in (c, a):
        mins = linalg.min_eigenvalues(povm.effects)
        _, vecs = linalg.eigh(povm.effects[int(np.argmin(mins))])
        candidates.append(vecs[:, 0])
    for i in range(n_restarts):
        rng = derive_stream(seed, f"povm-distance-restart-{i}")
        candidates.append(random_pure_states(rng, d, 1)[0])
    best = max(_sign_ascent(diff, psi) for psi in candidates)
    if best > 2.0 + 1e-6:
        raise NumericalError(f"distance estimate {best} exceeds the norm cap 2")
    return float(min(best, 2.0))
