"""Polytope and oracle-set geometry against independent references."""

import math

import numpy as np
import pytest

from boundarylab import convex
from boundarylab.errors import ClaimViolationError, NumericalError, ValidationError
from oracles import (
    convex_hull_2d,
    disk_chord_boundariness,
    polygon_contains,
    simplex_contains,
    weight_bisect,
)


def _interior_point(rng, vertices, floor=0.05):
    w = floor + rng.random(len(vertices))
    w /= w.sum()
    return w @ vertices


def _random_hull(rng, n_points=8):
    while True:
        hull = convex_hull_2d(rng.uniform(-1.0, 1.0, size=(n_points, 2)))
        if len(hull) >= 3:
            return hull


def _random_simplex(rng):
    while True:
        v = rng.uniform(-1.0, 1.0, size=(4, 3))
        if abs(np.linalg.det(v[1:] - v[0])) > 1e-2:
            return v


def test_polytope_validation():
    with pytest.raises(ValidationError, match="coincide"):
        convex.Polytope(np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]))
    with pytest.raises(ValidationError):
        convex.Polytope(np.array([[0.0, np.nan]]))
    with pytest.raises(ValidationError):
        convex.Polytope(np.zeros((0, 2)))
    with pytest.raises(ValidationError):
        convex.Polytope(np.zeros(3))


def test_polytope_contains():
    tri = convex.unit_triangle()
    assert tri.contains([0.5, 0.2])
    assert tri.contains([0.0, 0.0])
    assert not tri.contains([0.5, -0.1])
    assert not tri.contains([1.1, 0.0])
    with pytest.raises(ValidationError):
        tri.contains([0.0, 0.0, 0.0])


def test_weight_requires_membership():
    sq = convex.unit_square()
    with pytest.raises(ValidationError, match="y is not"):
        convex.weight_function(sq, [2.0, 0.0], [0.0, 0.0])
    with pytest.raises(ValidationError, match="x is not"):
        convex.weight_function(sq, [0.5, 0.5], [2.0, 0.0])


def test_weight_matches_bisection_2d():
    rng = np.random.default_rng(11)
    for _ in range(5):
        hull = _random_hull(rng)
        poly = convex.Polytope(hull)

        def member(z, hull=hull):
            return polygon_contains(hull, z, tol=1e-12)

        for _ in range(6):
            y = _interior_point(rng, hull)
            x = hull[rng.integers(len(hull))]
            t_lp = convex.weight_function(poly, y, x)
            t_ref = weight_bisect(member, y, x)
            assert abs(t_lp - t_ref) < 1e-8


def test_weight_matches_bisection_3d():
    rng = np.random.default_rng(12)
    for _ in range(5):
        verts = _random_simplex(rng)
        poly = convex.Polytope(verts)

        def member(z, verts=verts):
            return simplex_contains(verts, z, tol=1e-12)

        for _ in range(6):
            y = _interior_point(rng, verts)
            x = verts[rng.integers(len(verts))]
            t_lp = convex.weight_function(poly, y, x)
            t_ref = weight_bisect(member, y, x)
            assert abs(t_lp - t_ref) < 1e-8


def test_weight_of_self_is_one():
    tri = convex.unit_triangle()
    y = np.array([0.4, 0.3])
    assert convex.weight_function(tri, y, y) == 1.0


def test_inverse_weight_is_convex_in_y():
    # 1/t_y(x) <= lam/t_y1(x) + (1-lam)/t_y2(x) for y on the segment
    rng = np.random.default_rng(13)
    polys = [convex.Polytope(_random_hull(rng)) for _ in range(3)]
    polys += [convex.Polytope(_random_simplex(rng)) for _ in range(3)]
    for poly in polys:
        verts = poly.vertices
        for _ in range(50):
            y1 = _interior_point(rng, verts)
            y2 = _interior_point(rng, verts)
            lam = rng.random()
            x = verts[rng.integers(len(verts))]
            t1 = convex.weight_function(poly, y1, x)
            t2 = convex.weight_function(poly, y2, x)
            t = convex.weight_function(poly, lam * y1 + (1 - lam) * y2, x)
            assert 1.0 / t <= lam / t1 + (1 - lam) / t2 + 1e-8


def test_boundariness_is_vertex_minimum():
    rng = np.random.default_rng(14)
    for _ in range(4):
        hull = _random_hull(rng)
        poly = convex.Polytope(hull)
        y = _interior_point(rng, hull)
        b, cert = convex.boundariness_polytope(poly, y)
        weights = [convex.weight_function(poly, y, v) for v in hull]
        assert abs(b - min(weights)) < 1e-12
        assert b <= convex.BOUNDARINESS_CAP + 1e-12
        # certificate reconstructs y with an in-set residue
        assert np.abs(cert.t * cert.x + (1 - cert.t) * cert.z - y).max() < 1e-10
        assert cert.residual < 1e-10
        assert poly.contains(cert.z)


def test_boundariness_tie_breaks_to_lowest_index():
    sq = convex.unit_square()
    b, cert = convex.boundariness_polytope(sq, [0.5, 0.5])
    assert abs(b - 0.5) < 1e-12
    assert np.array_equal(cert.x, sq.vertices[0])


def test_boundariness_edge_cases():
    point = convex.Polytope(np.array([[2.0, 3.0]]))
    b, cert = convex.boundariness_polytope(point, [2.0, 3.0])
    assert b == 0.0 and cert.t == 0.0
    tri = convex.unit_triangle()
    b, _ = convex.boundariness_polytope(tri, tri.vertices[2])
    assert b < 1e-9
    with pytest.raises(ValidationError):
        convex.boundariness_polytope(tri, [5.0, 5.0])


def test_certificate_json_real_points():
    tri = convex.unit_triangle()
    _, cert = convex.boundariness_polytope(tri, [0.5, 0.3])
    obj = cert.to_json()
    assert set(obj) == {"t", "x", "z", "residual"}
    assert isinstance(obj["x"], list) and len(obj["x"]) == 2


def test_strict_interior():
    tri = convex.unit_triangle()
    assert convex.strict_interior(tri, [0.5, 0.2])
    assert not convex.strict_interior(tri, tri.vertices[0])
    assert not convex.strict_interior(tri, [0.5, 0.0])   # edge midpoint
    assert not convex.strict_interior(tri, [9.0, 9.0])
    point = convex.Polytope(np.array([[1.0, 1.0]]))
    assert not convex.strict_interior(point, [1.0, 1.0])


def test_known_center_values():
    tri = convex.unit_triangle()
    centroid = tri.vertices.mean(axis=0)
    b_tri, _ = convex.boundariness_polytope(tri, centroid)
    assert abs(b_tri - 1.0 / 3.0) < 1e-10
    sq = convex.unit_square()
    b_sq, _ = convex.boundariness_polytope(sq, [0.5, 0.5])
    assert abs(b_sq - 0.5) < 1e-10
    assert convex.disk_boundariness(0.0) == 0.5
    assert convex.disk_boundariness(1.0) == 0.0
    assert abs(convex.disk_boundariness(0.3) - disk_chord_boundariness(0.3)) < 1e-15
    with pytest.raises(ValidationError):
        convex.disk_boundariness(1.5)
    with pytest.raises(ValidationError):
        convex.disk_boundariness(0.1, radius=-1.0)


def test_remark1_scan_on_disk():
    disk = convex.disk_oracle()
    # the center admits t = 1/2 against every extremal point
    bound, witness = convex.remark1_scan(disk, [0.0, 0.0], 64, seed=3)
    assert bound == 0.5 and witness is None
    # off center the bound approaches the chord value from above
    y = np.array([0.4, 0.0])
    bound, witness = convex.remark1_scan(disk, y, 600, seed=3)
    truth = disk_chord_boundariness(0.4)
    assert truth - 1e-9 <= bound <= truth + 5e-3
    assert witness is not None
    assert abs(np.linalg.norm(witness) - 1.0) < 1e-12


def test_remark1_scan_validation():
    disk = convex.disk_oracle()
    with pytest.raises(ValidationError):
        convex.remark1_scan(disk, [3.0, 0.0], 10, seed=0)
    with pytest.raises(ValidationError):
        convex.remark1_scan(disk, [0.0, 0.0], 0, seed=0)
    with pytest.raises(ValidationError):
        convex.remark1_scan(disk, [0.0, 0.0], 10, seed=0, depth=5)
    with pytest.raises(ValidationError):
        convex.remark1_scan(disk, [0.0], 10, seed=0)


def test_gauge_identity_links_weight():
    # t_y(x) = 1 / (1 + p_y(2y - x)) with p_y the gauge based at y
    rng = np.random.default_rng(15)
    for _ in range(4):
        hull = _random_hull(rng)
        poly = convex.Polytope(hull)
        y = _interior_point(rng, hull, floor=0.2)
        for _ in range(4):
            x = _interior_point(rng, hull)
            t = convex.weight_function(poly, y, x)
            gauge = convex.minkowski_gauge(poly, y, 2.0 * y - x)
            assert abs(t - 1.0 / (1.0 + gauge)) < 1e-8


def test_gauge_basics():
    sq = convex.unit_square()
    center = np.array([0.5, 0.5])
    assert convex.minkowski_gauge(sq, center, center) == 0.0
    assert abs(convex.minkowski_gauge(sq, center, [1.0, 1.0]) - 1.0) < 1e-12
    assert abs(convex.minkowski_gauge(sq, center, [1.5, 0.5]) - 2.0) < 1e-12
    with pytest.raises(ValidationError, match="interior"):
        convex.minkowski_gauge(sq, [0.0, 0.0], center)


def test_cone_base_rejects_origin():
    with pytest.raises(ValidationError, match="origin"):
        convex.ConeBase(convex.Polytope(np.array([[-1.0, -1.0], [1.0, 1.0]])))


def test_cone_membership_and_base_norm():
    slab = convex.ConeBase(convex.Polytope(np.array([[1.0, 0.0], [1.0, 1.0]])))
    assert slab.in_cone([2.0, 1.0])
    assert slab.in_cone([0.0, 0.0])
    assert not slab.in_cone([1.0, 2.0])
    assert not slab.in_cone([-1.0, 0.0])
    assert abs(convex.base_norm(slab, [2.0, 1.0]) - 2.0) < 1e-12
    # (0,1) = u2 - u1 costs one unit in each direction
    assert abs(convex.base_norm(slab, [0.0, 1.0]) - 2.0) < 1e-12
    axis = convex.ConeBase(convex.Polytope(np.array([[1.0, 0.0]])))
    with pytest.raises(ValidationError, match="span"):
        convex.base_norm(axis, [0.0, 1.0])


def test_hilbert_inf_equals_weight():
    rng = np.random.default_rng(16)
    for _ in range(3):
        hull = _random_hull(rng)
        poly = convex.Polytope(hull)
        lifted = convex.ConeBase(convex.Polytope(
            np.hstack([hull, np.ones((len(hull), 1))])))
        for _ in range(4):
            y = _interior_point(rng, hull)
            x = hull[rng.integers(len(hull))]
            inf_val, sup_val = convex.hilbert_inf_sup(
                lifted, np.append(y, 1.0), np.append(x, 1.0))
            t = convex.weight_function(poly, y, x)
            assert abs(inf_val - t) < 1e-8
            assert sup_val >= inf_val - 1e-12


def test_hilbert_sup_infeasible_is_inf():
    slab = convex.ConeBase(convex.Polytope(np.array([[1.0, 0.0], [1.0, 1.0]])))
    inf_val, sup_val = convex.hilbert_inf_sup(slab, [1.0, 1.0], [1.0, 0.0])
    assert inf_val == pytest.approx(0.0, abs=1e-12)
    assert sup_val == math.inf
    assert convex.hilbert_metric(slab, [1.0, 1.0], [1.0, 0.0]) == math.inf
    with pytest.raises(ValidationError):
        convex.hilbert_inf_sup(slab, [0.0, 0.0], [1.0, 0.0])
    with pytest.raises(ValidationError):
        convex.hilbert_inf_sup(slab, [-1.0, 0.0], [1.0, 0.0])


def test_hilbert_metric_symmetry_cases():
    slab = convex.ConeBase(convex.Polytope(np.array([[1.0, 0.0], [1.0, 1.0]])))
    v = np.array([2.0, 0.5])
    assert convex.hilbert_metric(slab, v, v) == pytest.approx(0.0, abs=1e-12)
    w = np.array([3.0, 2.0])
    d_vw = convex.hilbert_metric(slab, v, w)
    d_wv = convex.hilbert_metric(slab, w, v)
    assert d_vw == pytest.approx(d_wv, abs=1e-10)
    assert convex.hilbert_metric(slab, v, 7.0 * v) == pytest.approx(0.0, abs=1e-12)
