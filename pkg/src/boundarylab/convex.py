"""Weight functions and boundariness on convex sets.

Two representations are supported: explicit vertex polytopes, where every
quantity reduces to a small linear program, and membership-oracle sets,
where scans over sampled extremal points give certified upper bounds.

The weight of x at y is the largest t with y = t*x + (1-t)*z for some z in
the set; boundariness is its infimum over x.  For a polytope the infimum is
attained at a vertex, so minimizing over vertices is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import linalg
from .errors import ClaimViolationError, NumericalError, ValidationError
from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, lp_solve
from .sampling import derive_stream

INTERIOR_TOL = 1e-9     # weight below this counts as "on the boundary"
MEMBERSHIP_TOL = 1e-9   # slack allowed by oracle membership tests
BOUNDARINESS_CAP = 0.5  # no element of a convex set exceeds this


def _as_point(y, dim: int, name: str) -> np.ndarray:
    arr = np.asarray(y, dtype=float)
    if arr.shape != (dim,):
        raise ValidationError(f"{name} must be a vector of length {dim}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} has non-finite entries")
    return arr


@dataclass(frozen=True)
class Polytope:
    """Convex hull of an explicit vertex list, shape (k, n)."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] < 1:
            raise ValidationError("vertices must be a nonempty (k, n) array")
        if not np.all(np.isfinite(v)):
            raise ValidationError("vertices contain non-finite entries")
        diffs = np.max(np.abs(v[:, None, :] - v[None, :, :]), axis=2)
        dup = np.argwhere(np.triu(diffs <= 1e-12, k=1))
        if dup.size:
            i, j = dup[0]
            raise ValidationError(f"vertices {i} and {j} coincide")
        object.__setattr__(self, "vertices", v)

    @property
    def ambient_dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    def contains(self, y) -> bool:
        """Exact membership via a feasibility LP over convex coefficients."""
        y = _as_point(y, self.ambient_dim, "y")
        k = self.n_vertices
        a_eq = np.vstack([self.vertices.T, np.ones((1, k))])
        b_eq = np.concatenate([y, [1.0]])
        res = lp_solve(np.zeros(k), a_eq, b_eq)
        return res.status == OPTIMAL


@dataclass(frozen=True)
class ConvexOracleSet:
    """Convex set given by a membership test and an extremal-point sampler.

    membership(z, tol) decides z in Z up to tol; sample_extremal(seed, i)
    returns the i-th deterministic extremal sample for that seed.  The
    optional membership_many(zs, tol) hook batches the test over the
    leading axis.
    """

    ambient_dim: int
    membership: Callable[[np.ndarray, float], bool]
    sample_extremal: Callable[[int, int], np.ndarray]
    membership_many: Optional[Callable[[np.ndarray, float], np.ndarray]] = None

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValidationError("ambient_dim must be positive")

    def contains(self, z, tol: float = MEMBERSHIP_TOL) -> bool:
        return bool(self.membership(np.asarray(z, dtype=float), tol))

    def contains_many(self, zs: np.ndarray, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
        if self.membership_many is not None:
            return np.asarray(self.membership_many(zs, tol), dtype=bool)
        return np.array([self.membership(z, tol) for z in zs], dtype=bool)


def _point_payload(arr):
    # real vectors stay plain lists; complex matrices (quantum certificates
    # reuse this class) serialize as {"dim", "entries"} objects
    a = np.asarray(arr)
    if a.ndim == 2:
        return linalg.matrix_to_json(a)
    return a.tolist()


@dataclass(frozen=True)
class DecompositionCertificate:
    """Witness for y = t*x + (1-t)*z with x extremal and z in the set."""

    t: float
    x: np.ndarray
    z: np.ndarray
    residual: float

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "x": _point_payload(self.x),
            "z": _point_payload(self.z),
            "residual": self.residual,
        }


def weight_function(poly: Polytope, y, x) -> float:
    """Largest t with y = t*x + (1-t)*z, z in the polytope.

    Solved as one LP in (t, c): maximize t subject to
    t*x + sum_i c_i v_i = y, t + sum_i c_i = 1, all variables >= 0.
    """
    y = _as_point(y, poly.ambient_dim, "y")
    x = _as_point(x, poly.ambient_dim, "x")
    if not poly.contains(y):
        raise ValidationError("y is not in the polytope")
    if not poly.contains(x):
        raise ValidationError("x is not in the polytope")
    k = poly.n_vertices
    a_eq = np.zeros((poly.ambient_dim + 1, k + 1))
    a_eq[:-1, 0] = x
    a_eq[:-1, 1:] = poly.vertices.T
    a_eq[-1, :] = 1.0
    b_eq = np.concatenate([y, [1.0]])
    objective = np.zeros(k + 1)
    objective[0] = 1.0
    res = lp_solve(objective, a_eq, b_eq, maximize=True)
    if res.status != OPTIMAL:
        raise NumericalError(f"weight LP ended with status {res.status}")
    return float(min(max(0.0, res.value), 1.0))


def _weight_with_certificate(poly: Polytope, y: np.ndarray, x: np.ndarray):
    """weight_function plus the induced z; inputs already validated."""
    k = poly.n_vertices
    a_eq = np.zeros((poly.ambient_dim + 1, k + 1))
    a_eq[:-1, 0] = x
    a_eq[:-1, 1:] = poly.vertices.T
    a_eq[-1, :] = 1.0
    b_eq = np.concatenate([y, [1.0]])
    objective = np.zeros(k + 1)
    objective[0] = 1.0
    res = lp_solve(objective, a_eq, b_eq, maximize=True)
    if res.status != OPTIMAL:
        raise NumericalError(f"weight LP ended with status {res.status}")
    t = float(min(max(0.0, res.value), 1.0))
    if t < 1.0:
        z = (y - t * x) / (1.0 - t)
    else:
        z = y.copy()
    return t, z


def boundariness_polytope(poly: Polytope, y) -> tuple[float, DecompositionCertificate]:
    """Boundariness of y and an attaining decomposition.

    The minimum of the weight over vertices, ties broken by lowest vertex
    index.  A one-vertex polytope is its own boundary, so b = 0 there.
    """
    y = _as_point(y, poly.ambient_dim, "y")
    if not poly.contains(y):
        raise ValidationError("y is not in the polytope")
    if poly.n_vertices == 1:
        x = poly.vertices[0].copy()
        return 0.0, DecompositionCertificate(0.0, x, y.copy(), 0.0)
    best_t = math.inf
    best = None
    for i in range(poly.n_vertices):
        t, z = _weight_with_certificate(poly, y, poly.vertices[i])
        if t < best_t - 1e-15:
            best_t = t
            best = (poly.vertices[i].copy(), z)
    if best is None:
        raise NumericalError("no vertex produced a weight")
    if best_t > BOUNDARINESS_CAP + 1e-12:
        raise ClaimViolationError(f"boundariness {best_t} exceeds 1/2")
    x, z = best
    residual = float(np.max(np.abs(best_t * x + (1.0 - best_t) * z - y)))
    return best_t, DecompositionCertificate(best_t, x, z, residual)


def strict_interior(poly: Polytope, y) -> bool:
    """True when every vertex weight at y is bounded away from zero."""
    y = _as_point(y, poly.ambient_dim, "y")
    if not poly.contains(y):
        return False
    if poly.n_vertices == 1:
        return False
    for i in range(poly.n_vertices):
        t, _ = _weight_with_certificate(poly, y, poly.vertices[i])
        if t <= INTERIOR_TOL:
            return False
    return True


def remark1_scan(oracle: ConvexOracleSet, y, n_samples: int, seed: int,
                 tol: float = MEMBERSHIP_TOL, depth: int = 40):
    """Certified upper bound on boundariness from sampled extremal points.

    For each candidate t the residues z_t = (y - t*x)/(1-t) must stay in the
    set for every sampled x; the largest such t is located by bisection on
    [0, 1/2].  Returns (bound, witness) where witness is a sampled x whose
    residue leaves the set just above the bound, or None when t = 1/2 is
    already feasible (the bound cannot be improved by more samples).
    """
    y = np.asarray(y, dtype=float)
    if y.shape != (oracle.ambient_dim,):
        raise ValidationError(
            f"y must be a vector of length {oracle.ambient_dim}, got shape {y.shape}")
    if not oracle.contains(y, tol):
        raise ValidationError("y is not in the set")
    if n_samples < 1:
        raise ValidationError("n_samples must be positive")
    if not 10 <= depth <= 60:
        raise ValidationError("depth must lie in [10, 60]")
    xs = np.stack([np.asarray(oracle.sample_extremal(seed, i), dtype=float)
                   for i in range(n_samples)])

    def residues(t: float) -> np.ndarray:
        return (y[None, :] - t * xs) / (1.0 - t)

    def first_failure(t: float) -> int:
        ok = oracle.contains_many(residues(t), tol)
        bad = np.flatnonzero(~ok)
        return int(bad[0]) if bad.size else -1

    fail_half = first_failure(0.5)
    if fail_half < 0:
        return 0.5, None
    lo, hi = 0.0, 0.5
    witness = xs[fail_half].copy()
    for _ in range(depth):
        mid = 0.5 * (lo + hi)
        fail = first_failure(mid)
        if fail < 0:
            lo = mid
        else:
            hi = mid
            witness = xs[fail].copy()
    return 0.5 * (lo + hi), witness


def minkowski_gauge(poly: Polytope, y, x) -> float:
    """Gauge of x as seen from an interior base point y.

    Smallest mu >= 0 with x in y + mu*(Z - y): minimize mu subject to
    sum_i c_i v_i - mu*y = x - y, sum_i c_i = mu, c >= 0.
    """
    y = _as_point(y, poly.ambient_dim, "y")
    x = _as_point(x, poly.ambient_dim, "x")
    if not strict_interior(poly, y):
        raise ValidationError("gauge base point must be strictly interior")
    k = poly.n_vertices
    a_eq = np.zeros((poly.ambient_dim + 1, k + 1))
    a_eq[:-1, :-1] = poly.vertices.T
    a_eq[:-1, -1] = -y
    a_eq[-1, :-1] = 1.0
    a_eq[-1, -1] = -1.0
    b_eq = np.concatenate([x - y, [0.0]])
    objective = np.zeros(k + 1)
    objective[-1] = 1.0
    res = lp_solve(objective, a_eq, b_eq)
    if res.status == INFEASIBLE:
        raise NumericalError("gauge LP infeasible despite interior base point")
    if res.status != OPTIMAL:
        raise NumericalError(f"gauge LP ended with status {res.status}")
    return float(max(res.value, 0.0))


@dataclass(frozen=True)
class ConeBase:
    """Polytope base of a pointed cone; the base must avoid the origin."""

    base: Polytope

    def __post_init__(self):
        if self.base.contains(np.zeros(self.base.ambient_dim)):
            raise ValidationError("cone base must not contain the origin")

    @property
    def ambient_dim(self) -> int:
        return self.base.ambient_dim

    def in_cone(self, v) -> bool:
        """v in cone(base): v = sum_i c_i u_i with c >= 0."""
        v = _as_point(v, self.ambient_dim, "v")
        k = self.base.n_vertices
        res = lp_solve(np.zeros(k), self.base.vertices.T.copy(), v)
        return res.status == OPTIMAL


def base_norm(cone: ConeBase, v) -> float:
    """Base norm: min sum(a) + sum(b) over v = sum_i (a_i - b_i) u_i, a, b >= 0."""
    v = _as_point(v, cone.ambient_dim, "v")
    k = cone.base.n_vertices
    a_eq = np.hstack([cone.base.vertices.T, -cone.base.vertices.T])
    res = lp_solve(np.ones(2 * k), a_eq, v)
    if res.status == INFEASIBLE:
        raise ValidationError("v is outside the span of the cone base")
    if res.status != OPTIMAL:
        raise NumericalError(f"base-norm LP ended with status {res.status}")
    return float(max(res.value, 0.0))


def hilbert_inf_sup(cone: ConeBase, v, w) -> tuple[float, float]:
    """inf(v/w) and sup(v/w) for the cone order.

    inf(v/w) = max{lam : v - lam*w in cone}, sup(v/w) = min{lam : lam*w - v
    in cone}; an unbounded sup is reported as math.inf.  Both v and w must
    be nonzero cone elements.
    """
    v = _as_point(v, cone.ambient_dim, "v")
    w = _as_point(w, cone.ambient_dim, "w")
    if not np.any(v) or not np.any(w):
        raise ValidationError("v and w must be nonzero")
    if not cone.in_cone(v):
        raise ValidationError("v is not in the cone")
    if not cone.in_cone(w):
        raise ValidationError("w is not in the cone")
    k = cone.base.n_vertices
    u = cone.base.vertices.T  # (n, k)

    # inf: maximize lam = lp - lm over  sum c_i u_i + (lp - lm) w = v.
    a_inf = np.hstack([u, w[:, None], -w[:, None]])
    obj_inf = np.zeros(k + 2)
    obj_inf[k], obj_inf[k + 1] = 1.0, -1.0
    res_inf = lp_solve(obj_inf, a_inf, v, maximize=True)
    if res_inf.status == UNBOUNDED:
        raise NumericalError("inf(v/w) unbounded; the cone is not pointed")
    if res_inf.status != OPTIMAL:
        raise NumericalError(f"inf LP ended with status {res_inf.status}")
    inf_val = float(res_inf.value)

    # sup: minimize lam over  (lp - lm) w - sum c_i u_i = v.
    a_sup = np.hstack([-u, w[:, None], -w[:, None]])
    obj_sup = np.zeros(k + 2)
    obj_sup[k], obj_sup[k + 1] = 1.0, -1.0
    res_sup = lp_solve(obj_sup, a_sup, v)
    if res_sup.status == INFEASIBLE:
        return inf_val, math.inf
    if res_sup.status == UNBOUNDED:
        raise NumericalError("sup(v/w) unbounded below; the cone is not pointed")
    if res_sup.status != OPTIMAL:
        raise NumericalError(f"sup LP ended with status {res_sup.status}")
    return inf_val, float(res_sup.value)


def hilbert_metric(cone: ConeBase, v, w) -> float:
    """Hilbert projective distance ln(sup(v/w)/inf(v/w)); inf on degeneracy."""
    inf_val, sup_val = hilbert_inf_sup(cone, v, w)
    if not math.isfinite(sup_val) or inf_val <= 0.0:
        return math.inf
    return max(0.0, math.log(sup_val / inf_val))


def unit_triangle() -> Polytope:
    """Equilateral triangle with unit sides, base on the x axis."""
    return Polytope(np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]]))


def unit_square() -> Polytope:
    return Polytope(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))


def disk_oracle(radius: float = 1.0, center=(0.0, 0.0)) -> ConvexOracleSet:
    """Planar disk as a membership oracle with uniform boundary samples."""
    if not (radius > 0 and np.isfinite(radius)):
        raise ValidationError("radius must be positive and finite")
    c = np.asarray(center, dtype=float)
    if c.shape != (2,) or not np.all(np.isfinite(c)):
        raise ValidationError("center must be a finite 2-vector")

    def membership(z: np.ndarray, tol: float) -> bool:
        return float(np.linalg.norm(z - c)) <= radius + tol * max(1.0, radius)

    def membership_many(zs: np.ndarray, tol: float) -> np.ndarray:
        return np.linalg.norm(zs - c[None, :], axis=1) <= radius + tol * max(1.0, radius)

    def sample_extremal(seed: int, i: int) -> np.ndarray:
        rng = derive_stream(seed, f"disk-extremal-{i}")
        angle = 2.0 * math.pi * rng.random()
        return c + radius * np.array([math.cos(angle), math.sin(angle)])

    return ConvexOracleSet(2, membership, sample_extremal, membership_many)


def disk_boundariness(dist: float, radius: float = 1.0) -> float:
    """Closed form for a disk: the weight along any chord through y is
    (R - d)/(R + r) where r is the distance from the antipodal exit point,
    minimized at a diameter, giving (R - d)/(2R) for |y - c| = d <= R."""
    if not (radius > 0 and np.isfinite(radius)):
        raise ValidationError("radius must be positive and finite")
    if not (0.0 <= dist <= radius):
        raise ValidationError("dist must lie in [0, radius]")
    return (radius - dist) / (2.0 * radius)
