"""Choi operators, the erasure-channel case study, improvement witnesses,
and the rank-2 extremal scan.

Conventions. A channel with input dimension d_in and output dimension
d_out is stored as its normalized Choi operator E on H_out tensor H_in
(output on the slow index): E = (1/d_in) sum_k |K_k)(K_k| with |K) the
row-major flattening of a Kraus operator. Then trace(E) = 1, the partial
trace over the output factor is I/d_in, and the channel set is a compact
convex subset of states, so all weight-function machinery applies with
membership = "PSD with the fixed marginal". The marginal of
(E - t F)/(1 - t) is automatic for CPTP E, F, which reduces every
feasibility test below to a PSD check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

import numpy as np

from . import linalg
from .errors import (BoundNotImprovableError, ClaimViolationError,
                     NumericalError, ValidationError)
from .sampling import derive_stream, haar_unitaries

CHOI_PSD_TOL = 1e-9
CHOI_TRACE_TOL = 1e-10
CHOI_MARGINAL_TOL = 1e-9


@dataclass(frozen=True)
class ChoiOperator:
    """Normalized Choi operator of a CPTP map.

    mat is Hermitian PSD with unit trace on H_out x H_in and
    partial_trace_first(mat, d_out) = I/d_in.
    """

    mat: np.ndarray
    d_in: int
    d_out: int

    def __post_init__(self):
        if self.d_in < 1 or self.d_out < 1:
            raise ValidationError("channel dimensions must be positive")
        m = linalg.hermitian(self.mat)
        if m.shape[0] != self.d_in * self.d_out:
            raise ValidationError(
                f"Choi matrix is {m.shape[0]}-dimensional, expected "
                f"{self.d_in * self.d_out} = d_out*d_in")
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > CHOI_TRACE_TOL:
            raise ValidationError(f"Choi trace must be 1, got {tr!r}")
        if not linalg.is_psd(m, CHOI_PSD_TOL):
            raise ValidationError("Choi matrix is not positive semidefinite")
        marginal = linalg.partial_trace_first(m, self.d_out)
        dev = float(np.abs(marginal - np.eye(self.d_in) / self.d_in).max())
        if dev > CHOI_MARGINAL_TOL:
            raise ValidationError(
                f"output marginal deviates from I/d_in by {dev:.3e}")
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.d_in * self.d_out

    def min_eigenvalue(self) -> float:
        return float(linalg.eigvalsh(self.mat)[0])

    def to_json(self) -> dict:
        return {
            "kind": "choi",
            "d_in": self.d_in,
            "d_out": self.d_out,
            "matrix": linalg.matrix_to_json(self.mat),
        }


def choi_from_kraus(kraus: Sequence, d_in: int, d_out: int) -> ChoiOperator:
    """Choi operator of the channel with the given Kraus operators.

    Each operator must be d_out x d_in; trace preservation
    sum K^dag K = I is enforced at 1e-9.
    """
    if not kraus:
        raise ValidationError("at least one Kraus operator is required")
    ops = [np.asarray(k, dtype=np.complex128) for k in kraus]
    for i, k in enumerate(ops):
        if k.shape != (d_out, d_in):
            raise ValidationError(
                f"Kraus operator {i} has shape {k.shape}, expected ({d_out}, {d_in})")
        if not (np.all(np.isfinite(k.real)) and np.all(np.isfinite(k.imag))):
            raise ValidationError(f"Kraus operator {i} has non-finite entries")
    total = sum(k.conj().T @ k for k in ops)
    dev = float(np.abs(total - np.eye(d_in)).max())
    if dev > 1e-9:
        raise ValidationError(
            f"Kraus operators are not trace preserving: sum K^dag K deviates "
            f"from identity by {dev:.3e}")
    vecs = np.stack([k.reshape(-1) for k in ops])
    mat = np.einsum("ki,kj->ij", vecs, vecs.conj()) / d_in
    return ChoiOperator(mat, d_in, d_out)


def identity_choi(d: int) -> ChoiOperator:
    return unitary_choi(np.eye(d))


def unitary_choi(u) -> ChoiOperator:
    """Rank-1 Choi |vec U)(vec U|/d of a unitary channel."""
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {u.shape}")
    d = u.shape[0]
    dev = float(np.abs(u.conj().T @ u - np.eye(d)).max())
    if dev > 1e-10:
        raise ValidationError(f"matrix is not unitary: U^dag U deviates by {dev:.3e}")
    v = u.reshape(-1)
    return ChoiOperator(np.outer(v, v.conj()) / d, d, d)


def erasure_choi(p: float) -> ChoiOperator:
    """Constant qubit channel to xi_p = diag(p, 1-p); Choi = xi_p tensor I/2."""
    if not 0.0 < p < 0.5:
        raise ValidationError(f"erasure parameter must lie in (0, 1/2), got {p}")
    mat = linalg.tensor(np.diag([p, 1.0 - p]), np.eye(2) / 2.0)
    return ChoiOperator(mat, 2, 2)


def depolarizing_choi(d: int = 2) -> ChoiOperator:
    """Completely depolarizing channel; Choi = I/d^2."""
    if d < 2:
        raise ValidationError("dimension must be at least 2")
    return ChoiOperator(np.eye(d * d) / (d * d), d, d)


def channel_apply(e: ChoiOperator, rho) -> np.ndarray:
    """Action of the channel on a d_in x d_in matrix."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (e.d_in, e.d_in):
        raise ValidationError(f"input must be {e.d_in}x{e.d_in}, got {rho.shape}")
    e4 = e.mat.reshape(e.d_out, e.d_in, e.d_out, e.d_in)
    return e.d_in * np.einsum("aibj,ij->ab", e4, rho)


def extended_action(mat: np.ndarray, d_in: int, d_out: int, x, d_aux: int) -> np.ndarray:
    """(Phi tensor id)(x) for the map with (possibly non-CP) Choi matrix mat."""
    x = np.asarray(x, dtype=np.complex128)
    n = d_in * d_aux
    if x.shape != (n, n):
        raise ValidationError(f"input must be {n}x{n}, got {x.shape}")
    e4 = mat.reshape(d_out, d_in, d_out, d_in)
    x4 = x.reshape(d_in, d_aux, d_in, d_aux)
    out = d_in * np.einsum("aibj,imjn->ambn", e4, x4)
    return out.reshape(d_out * d_aux, d_out * d_aux)


def channel_is_boundary(e: ChoiOperator, tol: float = 1e-9) -> bool:
    """True iff the Choi operator is rank deficient at the tolerance."""
    return bool(e.min_eigenvalue() <= tol)


def erasure_G_eigenvalues(p: float, t: float) -> np.ndarray:
    """Closed-form spectrum governing the erasure feasibility test.

    Returns {p, 1-p, (1-2t-sqrt(D))/2, (1+...)/2} with D = (1-2p)^2+4t^2:
    the eigenvalues of 2(E_p - t F) for ANY qubit unitary Choi F. The
    doubling normalizes the smallest entry to hit zero exactly at
    t = p(1-p); divide by 2 to compare against eigh(E_p - tF).

    Unitary independence: E_p = diag(p,p,1-p,1-p)/2 commutes with the
    output-block projectors, and vec(U)/sqrt(2) has weight 1/2 in each
    block for every unitary U, so the perturbed 2x2 corner is the same
    for all U.
    """
    if not 0.0 < p < 0.5:
        raise ValidationError(f"erasure parameter must lie in (0, 1/2), got {p}")
    if not 0.0 <= t < 1.0:
        raise ValidationError(f"t must lie in [0, 1), got {t}")
    disc = math.sqrt((1.0 - 2.0 * p) ** 2 + 4.0 * t * t)
    return np.array([
        p,
        1.0 - p,
        0.5 * (1.0 - 2.0 * t - disc),
        0.5 * (1.0 - 2.0 * t + disc),
    ])


def erasure_boundariness(p: float) -> float:
    """b(E_p) = p(1-p), strictly above the lambda_min = p/2 lower bound."""
    if not 0.0 < p < 0.5:
        raise ValidationError(f"erasure parameter must lie in (0, 1/2), got {p}")
    b = p * (1.0 - p)
    if not b > p / 2.0:
        raise ClaimViolationError(f"p(1-p) = {b} fails to exceed p/2 = {p / 2}")
    return b


def _rank2_vectors(q, s, alpha, beta, gamma, theta):
    """Batched |psi>, |phi>, r for the rank-2 extremal family.

    All parameters are broadcast 1-d arrays. Output slot is the slow
    index, matching the Choi convention.
    """
    q = np.asarray(q, dtype=float)
    s = np.asarray(s, dtype=float)
    r = (1.0 - (1.0 + q) * s) / (1.0 - q)
    r = np.clip(r, 0.0, 1.0)
    half = np.asarray(theta, dtype=float) / 2.0
    c, sn = np.cos(half), np.sin(half)
    eb = np.exp(1j * np.asarray(beta, dtype=float))
    eg = np.exp(1j * np.asarray(gamma, dtype=float))
    ea = np.exp(1j * np.asarray(alpha, dtype=float))
    u0, u1 = c.astype(np.complex128), eb * sn
    v0, v1 = eg * sn, -eg * eb * c
    rs, rr = np.sqrt(s), np.sqrt(1.0 - s)
    ps, pr = np.sqrt(r), np.sqrt(1.0 - r)
    psi = np.stack([rs * u0, rr * v0, rs * u1, rr * v1], axis=-1)
    phi = np.stack([ps * v0, ea * pr * u0, ps * v1, ea * pr * u1], axis=-1)
    return psi, phi, r


def _rank2_choi_batch(q, s, alpha, beta, gamma, theta) -> tuple[np.ndarray, np.ndarray]:
    psi, phi, r = _rank2_vectors(q, s, alpha, beta, gamma, theta)
    w1 = 0.5 * (1.0 + np.asarray(q, dtype=float))
    w2 = 0.5 * (1.0 - np.asarray(q, dtype=float))
    f = (w1[..., None, None] * np.einsum("...i,...j->...ij", psi, psi.conj())
         + w2[..., None, None] * np.einsum("...i,...j->...ij", phi, phi.conj()))
    return f, r


@dataclass(frozen=True)
class Rank2ChannelParams:
    """Coordinates of the rank-2 extremal qubit-channel family.

    q is the eigenvalue split, s the Schmidt weight of the first
    eigenvector (its partner r is derived), theta/beta/gamma fix the
    basis pair u, u_perp, and alpha is the relative phase.
    """

    q: float
    s: float
    alpha: float
    beta: float
    gamma: float
    theta: float

    def __post_init__(self):
        vals = (self.q, self.s, self.alpha, self.beta, self.gamma, self.theta)
        if not all(math.isfinite(v) for v in vals):
            raise ValidationError("parameters must be finite")
        if not 0.0 <= self.q < 1.0:
            raise ValidationError(f"q must lie in [0, 1), got {self.q}")
        if not 0.5 < self.s <= 1.0:
            raise ValidationError(f"s must lie in (1/2, 1], got {self.s}")
        if self.s > 1.0 / (1.0 + self.q) + 1e-12:
            raise ValidationError(
                f"s = {self.s} exceeds 1/(1+q) = {1.0 / (1.0 + self.q)}")
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not 0.0 <= v < 2.0 * math.pi + 1e-12:
                raise ValidationError(f"{name} must lie in [0, 2*pi), got {v}")
        if not 0.0 <= self.theta <= math.pi:
            raise ValidationError(f"theta must lie in [0, pi], got {self.theta}")

    def to_json(self) -> dict:
        return {"q": self.q, "s": self.s, "alpha": self.alpha,
                "beta": self.beta, "gamma": self.gamma, "theta": self.theta}


def rank2_extremal_choi(p: float, params: Rank2ChannelParams) -> tuple[ChoiOperator, float]:
    """One member of the rank-2 extremal family, plus its derived weight r.

    The family itself does not depend on p; the parameter is the erasure
    strength of the scan the family serves, kept here so call sites carry
    the full context. Eigenvalues are {(1+q)/2, (1-q)/2, 0, 0} and the
    output marginal is I/2 by construction.
    """
    if not 0.0 < p < 0.5:
        raise ValidationError(f"erasure parameter must lie in (0, 1/2), got {p}")
    fs, rs = _rank2_choi_batch(
        np.array([params.q]), np.array([params.s]), np.array([params.alpha]),
        np.array([params.beta]), np.array([params.gamma]), np.array([params.theta]))
    f = (fs[0] + fs[0].conj().T) / 2.0
    return ChoiOperator(f, 2, 2), float(rs[0])


def _feasibility_bisect(e_mat: np.ndarray, fs: np.ndarray, psd_tol: float,
                        depth: int) -> tuple[float, Optional[int]]:
    """Largest t in [0, 1/2] with E - t*F PSD for every F in the stack.

    Returns (threshold, index of a sample infeasible just above it);
    index is None when t = 1/2 is feasible outright.
    """

    def first_failure(t: float) -> int:
        ok = linalg.are_psd(e_mat[None, :, :] - t * fs, psd_tol)
        bad = np.flatnonzero(~ok)
        return int(bad[0]) if bad.size else -1

    fail = first_failure(0.5)
    if fail < 0:
        return 0.5, None
    lo, hi, witness = 0.0, 0.5, fail
    for _ in range(depth):
        mid = 0.5 * (lo + hi)
        fail = first_failure(mid)
        if fail < 0:
            lo = mid
        else:
            hi = mid
            witness = fail
    return 0.5 * (lo + hi), witness


def channel_scan_boundariness(e: ChoiOperator, n_unitaries: int = 500,
                              include_rank2: bool = False, seed: int = 0,
                              psd_tol: float = CHOI_PSD_TOL,
                              depth: int = 40) -> tuple[float, Optional[ChoiOperator]]:
    """Certified upper bound on b(E) from sampled extremal channels.

    Bisects the largest t for which (E - tF)/(1-t) stays a channel for
    every sampled F (Haar-random unitary Chois; optionally random rank-2
    extremals, which is experimental outside the qubit erasure study).
    Returns (b_upper, worst_F) where worst_F witnesses infeasibility just
    above the bound, or None when t = 1/2 is feasible. Upper-bound
    semantics only: more samples can lower the result, never raise it.
    """
    if n_unitaries < 1:
        raise ValidationError("n_unitaries must be positive")
    if not 10 <= depth <= 60:
        raise ValidationError("depth must lie in [10, 60]")
    if e.d_in != e.d_out:
        raise ValidationError(
            "scan requires equal input and output dimensions (unitary extremals)")
    d = e.d_in
    rng = derive_stream(seed, "channel-scan-unitaries")
    us = haar_unitaries(rng, d, n_unitaries)
    vecs = us.reshape(n_unitaries, d * d)
    fs = np.einsum("ni,nj->nij", vecs, vecs.conj()) / d
    if include_rank2:
        if d != 2:
            raise ValidationError("rank-2 extremal augmentation is qubit-only")
        rng2 = derive_stream(seed, "channel-scan-rank2")
        q = rng2.uniform(0.0, 0.95, n_unitaries)
        cap = 1.0 / (1.0 + q)
        s = cap - rng2.random(n_unitaries) * (cap - 0.5 - 1e-9)
        f2, _ = _rank2_choi_batch(q, s,
                                  rng2.uniform(0.0, 2.0 * math.pi, n_unitaries),
                                  rng2.uniform(0.0, 2.0 * math.pi, n_unitaries),
                                  rng2.uniform(0.0, 2.0 * math.pi, n_unitaries),
                                  rng2.uniform(0.0, math.pi, n_unitaries))
        fs = np.concatenate([fs, f2])
    bound, idx = _feasibility_bisect(e.mat, fs, psd_tol, depth)
    worst = None if idx is None else ChoiOperator(fs[idx], d, d)
    return bound, worst


def _entangled_vector(phi, d: int) -> np.ndarray:
    phi = np.asarray(phi, dtype=np.complex128).reshape(-1)
    if phi.shape != (d * d,):
        raise ValidationError(f"phi must have length {d * d}, got {phi.shape[0]}")
    norm = float(np.linalg.norm(phi))
    if abs(norm - 1.0) > 1e-9:
        raise ValidationError(f"phi must be normalized, got norm {norm!r}")
    phi = phi / norm
    marginal = linalg.partial_trace_first(np.outer(phi, phi.conj()), d)
    dev = float(np.abs(marginal - np.eye(d) / d).max())
    if dev > 1e-9:
        raise ValidationError(
            f"phi must be maximally entangled: marginal deviates by {dev:.3e}")
    return phi


def prop6_unitary_witness(e: ChoiOperator, phi) -> float:
    """Improvement witness against a unitary: t with E - t|phi><phi| PSD.

    With lambda_1 the minimal eigenvalue (cluster P_1), lambda_2 the next
    distinct one and alpha = |P_1 phi|^2, the two-level minorant
    lambda_1 P_1 + lambda_2 (1 - P_1) gives

        t = lambda_1 lambda_2 / (lambda_1 + (lambda_2 - lambda_1) alpha),

    which strictly exceeds lambda_1 whenever alpha < 1. PSD of the
    returned decomposition is re-verified before returning.
    """
    if e.d_in != e.d_out:
        raise ValidationError("witness requires equal input and output dimensions")
    phi = _entangled_vector(phi, e.d_in)
    w, v = linalg.eigh(e.mat)
    lam1 = float(w[0])
    if lam1 <= 1e-9:
        raise ValidationError("channel is on the boundary; nothing to improve")
    cap = lam1 + 1e-9 * max(1.0, float(w[-1]))
    cluster = w <= cap
    above = w[~cluster]
    if above.size == 0:
        raise BoundNotImprovableError(
            "bound not improvable: b may equal lambda_min (flat spectrum)")
    lam2 = float(above[0])
    p1 = v[:, cluster]
    alpha = float(np.linalg.norm(p1.conj().T @ phi) ** 2)
    if alpha >= 1.0 - 1e-12:
        raise BoundNotImprovableError(
            "bound not improvable: b may equal lambda_min")
    t = lam1 * lam2 / (lam1 + (lam2 - lam1) * alpha)
    if not linalg.is_psd(e.mat - t * np.outer(phi, phi.conj()), 1e-9):
        raise ClaimViolationError("witness decomposition failed the PSD check")
    if not t > lam1:
        raise ClaimViolationError(f"witness t = {t} does not improve on {lam1}")
    return t


def prop6_nonunitary_witness(e: ChoiOperator, f: ChoiOperator) -> float:
    """Improvement witness against a non-unitary F: t = lambda_min/mu_max.

    Since F <= mu_max * I, t*F <= lambda_min * I <= E, so E - tF is PSD,
    and mu_max < 1 makes t strictly beat lambda_min.
    """
    if (e.d_in, e.d_out) != (f.d_in, f.d_out):
        raise ValidationError(
            f"channel shapes differ: ({e.d_in},{e.d_out}) vs ({f.d_in},{f.d_out})")
    lam = e.min_eigenvalue()
    if lam <= 1e-9:
        raise ValidationError("channel is on the boundary; nothing to improve")
    mu = float(linalg.eigvalsh(f.mat)[-1])
    if mu >= 1.0 - 1e-9:
        raise ValidationError(
            "f is unitary (mu_max = 1); use prop6_unitary_witness instead")
    t = lam / mu
    if not linalg.is_psd(e.mat - t * f.mat, 1e-9):
        raise ClaimViolationError("witness decomposition failed the PSD check")
    if not t > lam:
        raise ClaimViolationError(f"witness t = {t} does not improve on {lam}")
    return t


def _default_rank2_axes() -> dict[str, list[float]]:
    qs = [0.05 * i for i in range(20)] + [0.999]
    return {
        "q": qs,
        "s": [0.55 + 0.05 * i for i in range(10)],  # clipped per q, cap added
        "theta": [i * math.pi / 8.0 for i in range(5)],
        "alpha": [0.0, math.pi / 2.0, math.pi, 1.5 * math.pi],
        "beta": [0.0, math.pi / 2.0, math.pi, 1.5 * math.pi],
        "gamma": [0.0, math.pi / 2.0, math.pi, 1.5 * math.pi],
    }


def _grid_axes(grid) -> dict[str, list[float]]:
    axes = _default_rank2_axes()
    if grid is None:
        return axes
    if not isinstance(grid, dict) or not grid:
        raise ValidationError("grid must be a nonempty mapping of axis -> (min, max, steps)")
    for name, spec in grid.items():
        if name not in axes:
            raise ValidationError(
                f"unknown grid axis {name!r}; expected one of {sorted(axes)}")
        lo, hi, steps = spec
        steps = int(steps)
        if steps < 1 or not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
            raise ValidationError(f"grid axis {name!r} has an empty or infinite range")
        axes[name] = list(np.linspace(lo, hi, steps))
    return axes


def _s_values(s_axis: Sequence[float], q: float) -> list[float]:
    cap = 1.0 / (1.0 + q)
    vals = [cap] + [s for s in s_axis if 0.5 < s <= cap + 1e-12]
    vals.sort()
    out = [vals[0]]
    for s in vals[1:]:
        if s - out[-1] > 1e-12:
            out.append(s)
    return out


def rank2_scan(p: float, grid=None, out: Optional[TextIO] = None,
               ) -> tuple[float, Rank2ChannelParams]:
    """Minimal eigenvalue of G = (E_p - p(1-p) F)/(1 - p(1-p)) over the
    rank-2 extremal grid.

    Emits one CSV row per grid point to `out` (columns
    q,s,alpha,beta,gamma,theta,lambda_G, 12 significant digits, in
    lexicographic grid order) and returns the global minimum with its
    parameters. A minimum below -1e-9 falsifies the scanned positivity
    claim and raises. The default grid follows the reported extremal
    slices: the s axis is clipped per q to (1/2, 1/(1+q)] with the cap
    value always included.
    """
    if not 0.0 < p < 0.5:
        raise ValidationError(f"erasure parameter must lie in (0, 1/2), got {p}")
    axes = _grid_axes(grid)
    t = p * (1.0 - p)
    e_mat = np.diag([p, p, 1.0 - p, 1.0 - p]).astype(np.complex128) / 2.0
    points: list[tuple[float, ...]] = []
    for q in axes["q"]:
        for s in _s_values(axes["s"], q):
            for alpha in axes["alpha"]:
                for beta in axes["beta"]:
                    for gamma in axes["gamma"]:
                        for theta in axes["theta"]:
                            points.append((q, s, alpha, beta, gamma, theta))
    if not points:
        raise ValidationError("grid produced no points")
    if out is not None:
        out.write("q,s,alpha,beta,gamma,theta,lambda_G\n")
    params = np.array(points, dtype=float)
    best_val, best_idx = math.inf, 0
    chunk = 8192
    for start in range(0, len(points), chunk):
        block = params[start:start + chunk]
        fs, _ = _rank2_choi_batch(block[:, 0], block[:, 1], block[:, 2],
                                  block[:, 3], block[:, 4], block[:, 5])
        gs = (e_mat[None, :, :] - t * fs) / (1.0 - t)
        lams = linalg.min_eigenvalues(gs)
        if out is not None:
            for row, lam in zip(block, lams):
                cells = [f"{x:.12g}" for x in row] + [f"{lam:.12g}"]
                out.write(",".join(cells) + "\n")
        i = int(np.argmin(lams))
        if lams[i] < best_val:
            best_val, best_idx = float(lams[i]), start + i
    if best_val < -1e-9:
        raise ClaimViolationError(
            f"rank-2 scan found lambda_G = {best_val:.3e} below -1e-9")
    q, s, alpha, beta, gamma, theta = points[best_idx]
    return best_val, Rank2ChannelParams(q, s, alpha, beta, gamma, theta)


def rank2_case1_bound(p: float, c: float) -> float:
    """Feasibility floor t >= p/(2c) in the first rank-2 case split.

    c is the overlap <phi|F|phi> of the minimal-eigenvector pair; with
    0 < c <= 1/2 the floor sits at or above p, hence strictly above the
    erasure boundariness p(1-p).
    """
    if not 0.0 < p < 0.5:
        raise ValidationError(f"erasure parameter must lie in (0, 1/2), got {p}")
    if not 0.0 < c <= 0.5 + 1e-12:
        raise ValidationError(f"overlap c must lie in (0, 1/2], got {c}")
    val = p / (2.0 * c)
    if not val > p * (1.0 - p):
        raise ClaimViolationError(
            f"case-1 floor {val} fails to exceed p(1-p) = {p * (1.0 - p)}")
    return val


def channel_from_json(obj: dict) -> ChoiOperator:
    """Parse {"kind":"choi",...} or {"kind":"kraus","ops":[...]} input."""
    if not isinstance(obj, dict):
        raise ValidationError("channel object must be a JSON object")
    kind = obj.get("kind")
    if kind == "choi":
        for field in ("d_in", "d_out", "matrix"):
            if field not in obj:
                raise ValidationError(f"choi object is missing the {field!r} field")
        mat = linalg.matrix_from_json(obj["matrix"])
        return ChoiOperator(mat, int(obj["d_in"]), int(obj["d_out"]))
    if kind == "kraus":
        ops = obj.get("ops")
        if not isinstance(ops, list) or not ops:
            raise ValidationError("'ops' must be a nonempty list of matrices")
        mats = [linalg.matrix_from_json(m, require_hermitian=False) for m in ops]
        shapes = {m.shape for m in mats}
        if len(shapes) != 1:
            raise ValidationError(f"Kraus operators have mixed shapes {sorted(shapes)}")
        d_out, d_in = mats[0].shape
        if "d_in" in obj and obj["d_in"] != d_in:
            raise ValidationError(f"'d_in' is {obj['d_in']} but operators are "
                                  f"{d_out}x{d_in}")
        if "d_out" in obj and obj["d_out"] != d_out:
            raise ValidationError(f"'d_out' is {obj['d_out']} but operators are "
                                  f"{d_out}x{d_in}")
        return choi_from_kraus(mats, d_in, d_out)
    raise ValidationError(f"expected kind 'choi' or 'kraus', got {kind!r}")
