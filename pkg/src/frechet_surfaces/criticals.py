"""Candidate critical values of eps at which the free-space combinatorics or
the coverage status of a surface pair can change.

Kinds:
  T1   edge/triangle image distances (a boundary cell becomes nonempty)
  T2a  vertex/triangle image distances (last point covered at a vertex)
  T2b  equidistance of two triangles along an image edge
  T2c  equidistance of three triangles in the plane of an image triangle
  T2d  distances between parallel image feature pairs (degenerate position)
"""

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .scalar import DEFAULT_TOL, quadratic_roots
from .geometry import (closest_point_triangle, conic_conic_points, cross_norm,
                       dist_point_triangle, dist_segment_triangle,
                       dist_triangle_triangle, closest_segment_segment,
                       frame_of_triangle, vadd, vcross3, vdot, vnorm, vscale,
                       vsub)


@dataclass(frozen=True)
class CriticalValue:
    value: float
    kind: str          # "T1" | "T2a" | "T2b" | "T2c" | "T2d"
    provenance: tuple  # generating simplices, e.g. ("K-edge", (i,j), "L-tri", t)

    def as_dict(self):
        return {"value": self.value, "kind": self.kind,
                "provenance": list(self.provenance)}


def _unit(v):
    n = vnorm(v)
    return vscale(v, 1.0 / n) if n > 0 else v


def _perp_component(v, u):
    return vsub(v, vscale(u, vdot(v, u)))


# ---------------------------------------------------------------------------
# T2b: equidistant points of two triangles along a segment
# ---------------------------------------------------------------------------

def _region_breakpoints_on_segment(seg, tri):
    """Parameters t where the nearest feature of the triangle can switch along
    the segment: crossings of the (linear) feature-region boundaries."""
    s0, s1 = seg
    d = vsub(s1, s0)
    ts = []

    def add_plane(grad, val0):
        v0 = vdot(grad, s0) + val0
        slope = vdot(grad, d)
        if slope != 0.0:
            t = -v0 / slope
            if 0.0 < t < 1.0:
                ts.append(t)

    for i in range(3):
        vi = tri[i]
        for j in range(3):
            if j == i:
                continue
            grad = vsub(tri[j], vi)
            add_plane(grad, -vdot(vi, grad))
    for i in range(3):
        a, b = tri[i], tri[(i + 1) % 3]
        c = tri[(i + 2) % 3]
        u = _unit(vsub(b, a))
        w = _perp_component(vsub(c, a), u)
        add_plane(w, -vdot(a, w))
    return ts


def _feature_sqdist_quadratic(seg, tri, feature):
    """Coefficients (A, B, C) of squared distance to a triangle feature along
    the segment: d^2(t) = A t^2 + B t + C, valid while that feature is nearest."""
    s0, s1 = seg
    d = vsub(s1, s0)
    kind, idx = feature
    if kind == "vertex":
        w0 = vsub(s0, tri[idx])
        return (vdot(d, d), 2.0 * vdot(w0, d), vdot(w0, w0))
    if kind == "edge":
        a = tri[idx]
        b = tri[(idx + 1) % 3]
        u = _unit(vsub(b, a))
        w0 = vsub(s0, a)
        du = vdot(d, u)
        wu = vdot(w0, u)
        return (vdot(d, d) - du * du,
                2.0 * (vdot(w0, d) - wu * du),
                vdot(w0, w0) - wu * wu)
    # face
    if len(s0) == 2:
        return (0.0, 0.0, 0.0)  # inside a 2D triangle the distance is zero
    n = _unit(vcross3(vsub(tri[1], tri[0]), vsub(tri[2], tri[0])))
    lam0 = vdot(n, vsub(s0, tri[0]))
    lamd = vdot(n, d)
    return (lamd * lamd, 2.0 * lam0 * lamd, lam0 * lam0)


def equidistance_values_on_segment(seg, tri_a, tri_b, tol=DEFAULT_TOL):
    """Common distances at points of the segment equidistant to both triangles.

    The segment is cut at every parameter where either triangle's nearest
    feature can change; on each piece both squared distances are quadratics,
    so equidistance reduces to a quadratic equation.  Every root is verified
    against the true distances before being reported."""
    ts = sorted(set([0.0, 1.0]
                    + _region_breakpoints_on_segment(seg, tri_a)
                    + _region_breakpoints_on_segment(seg, tri_b)))
    s0, s1 = seg
    out = []
    slack = 1e-9
    for ta, tb in zip(ts, ts[1:]):
        if tb - ta <= 1e-13:
            continue
        tm = 0.5 * (ta + tb)
        pm = tuple(a + tm * (b - a) for a, b in zip(s0, s1))
        _, feat_a = closest_point_triangle(pm, tri_a)
        _, feat_b = closest_point_triangle(pm, tri_b)
        qa = _feature_sqdist_quadratic(seg, tri_a, feat_a)
        qb = _feature_sqdist_quadratic(seg, tri_b, feat_b)
        diff = (qa[0] - qb[0], qa[1] - qb[1], qa[2] - qb[2])
        if max(abs(c) for c in diff) == 0.0:
            continue  # identical quadratics: equidistant on the whole piece;
            # endpoints of the piece are breakpoints of other kinds
        try:
            roots = quadratic_roots(diff[0], diff[1], diff[2], tol)
        except Exception:
            roots = []
        for t in roots:
            if not (ta - slack <= t <= tb + slack):
                continue
            t = min(1.0, max(0.0, t))
            p = tuple(a + t * (b - a) for a, b in zip(s0, s1))
            da = dist_point_triangle(p, tri_a, tol, degenerate_ok=True)
            db = dist_point_triangle(p, tri_b, tol, degenerate_ok=True)
            if abs(da - db) <= 10.0 * tol.gap(max(da, db)):
                out.append(0.5 * (da + db))
    return sorted(out)


# ---------------------------------------------------------------------------
# T2d: parallel feature pairs
# ---------------------------------------------------------------------------

def _triangle_normal(tri):
    if len(tri[0]) == 2:
        return None
    return _unit(vcross3(vsub(tri[1], tri[0]), vsub(tri[2], tri[0])))


def parallel_pair_values(f, g, tol=DEFAULT_TOL):
    """Distances between parallel (edge|triangle) image feature pairs."""
    out = []
    f_edges = [(e, f.image_segment(e)) for e in f.param.edges()]
    g_edges = [(e, g.image_segment(e)) for e in g.param.edges()]
    f_tris = [(i, f.image_triangle(i)) for i in range(f.n_triangles)]
    g_tris = [(i, g.image_triangle(i)) for i in range(g.n_triangles)]
    zero = lambda x: x <= 1e-9

    for (ek, sk) in f_edges:
        uk = _unit(vsub(sk[1], sk[0]))
        for (el, sl) in g_edges:
            ul = _unit(vsub(sl[1], sl[0]))
            if zero(cross_norm(uk, ul)):
                d, _, _ = closest_segment_segment(sk[0], sk[1], sl[0], sl[1])
                out.append(CriticalValue(d, "T2d", ("K-edge", ek, "L-edge", el)))
        for (lt, tl) in g_tris:
            nl = _triangle_normal(tl)
            if nl is not None and zero(abs(vdot(uk, nl))):
                out.append(CriticalValue(
                    dist_segment_triangle(sk, tl, tol), "T2d",
                    ("K-edge", ek, "L-tri", lt)))
    for (el, sl) in g_edges:
        ul = _unit(vsub(sl[1], sl[0]))
        for (kt, tk) in f_tris:
            nk = _triangle_normal(tk)
            if nk is not None and zero(abs(vdot(ul, nk))):
                out.append(CriticalValue(
                    dist_segment_triangle(sl, tk, tol), "T2d",
                    ("L-edge", el, "K-tri", kt)))
    for (kt, tk) in f_tris:
        nk = _triangle_normal(tk)
        for (lt, tl) in g_tris:
            nl = _triangle_normal(tl)
            if nk is not None and nl is not None and zero(cross_norm(nk, nl)):
                out.append(CriticalValue(
                    dist_triangle_triangle(tk, tl, tol), "T2d",
                    ("K-tri", kt, "L-tri", lt)))
            elif nk is None and nl is None:
                # d=2: every triangle pair is "parallel" only in the degenerate
                # sense of sharing the plane; skip to avoid flooding candidates
                continue
    return out


# ---------------------------------------------------------------------------
# C1 = T1, T2a, T2b, T2d
# ---------------------------------------------------------------------------

def critical_values_C1(f, g, tol=DEFAULT_TOL):
    """All type 1/2a/2b/2d candidates, sorted ascending, deduplicated per kind."""
    vals = []

    for (tagE, tagT, se, st) in (("K-edge", "L-tri", f, g), ("L-edge", "K-tri", g, f)):
        tris = [(i, st.image_triangle(i)) for i in range(st.n_triangles)]
        for e in se.param.edges():
            seg = se.image_segment(e)
            for (ti, tri) in tris:
                vals.append(CriticalValue(
                    dist_segment_triangle(seg, tri, tol), "T1", (tagE, e, tagT, ti)))

    for (tagV, tagT, sv, st) in (("K-vertex", "L-tri", f, g), ("L-vertex", "K-tri", g, f)):
        tris = [(i, st.image_triangle(i)) for i in range(st.n_triangles)]
        for vi, p in enumerate(sv.image):
            for (ti, tri) in tris:
                vals.append(CriticalValue(
                    dist_point_triangle(p, tri, tol), "T2a", (tagV, vi, tagT, ti)))

    for (tagE, tagT, se, st) in (("K-edge", "L-tris", f, g), ("L-edge", "K-tris", g, f)):
        tris = [(i, st.image_triangle(i)) for i in range(st.n_triangles)]
        for e in se.param.edges():
            seg = se.image_segment(e)
            for (i, ta), (j, tb) in combinations(tris, 2):
                for v in equidistance_values_on_segment(seg, ta, tb, tol):
                    vals.append(CriticalValue(v, "T2b", (tagE, e, tagT, (i, j))))

    vals.extend(parallel_pair_values(f, g, tol))
    return dedup_critical_values(vals, tol)


def dedup_critical_values(vals, tol=DEFAULT_TOL):
    """Sort ascending; merge values within 10x tolerance, per kind."""
    out = []
    last_by_kind = {}
    for cv in sorted(vals, key=lambda c: (c.value, c.kind, repr(c.provenance))):
        last = last_by_kind.get(cv.kind)
        if last is not None and abs(cv.value - last) <= 10.0 * tol.gap(cv.value):
            continue
        last_by_kind[cv.kind] = cv.value
        out.append(cv)
    return out


# ---------------------------------------------------------------------------
# T2c: triple equidistance in the plane of an image triangle
# ---------------------------------------------------------------------------

_FEATURES = [("vertex", 0), ("vertex", 1), ("vertex", 2),
             ("edge", 0), ("edge", 1), ("edge", 2), ("face", 0)]


def _feature_sqdist_conic(frame, tri, feature):
    """Implicit conic coefficients (A,B,C,D,E,F) of the squared distance to a
    triangle feature as a function of plane coordinates, or None when the
    feature does not define one (2D face)."""
    kind, idx = feature
    g1, g2 = frame.b1, frame.b2
    o = frame.origin
    if kind == "vertex":
        r = vsub(o, tri[idx])
        return (1.0, 0.0, 1.0,
                2.0 * vdot(r, g1), 2.0 * vdot(r, g2), vdot(r, r))
    if kind == "edge":
        a = tri[idx]
        b = tri[(idx + 1) % 3]
        u = _unit(vsub(b, a))
        r = vsub(o, a)
        u1, u2 = vdot(g1, u), vdot(g2, u)
        ru = vdot(r, u)
        return (1.0 - u1 * u1, -2.0 * u1 * u2, 1.0 - u2 * u2,
                2.0 * (vdot(r, g1) - ru * u1), 2.0 * (vdot(r, g2) - ru * u2),
                vdot(r, r) - ru * ru)
    # face
    if len(tri[0]) == 2:
        return None
    n = _unit(vcross3(vsub(tri[1], tri[0]), vsub(tri[2], tri[0])))
    alpha = vdot(n, g1)
    beta = vdot(n, g2)
    gamma = vdot(n, vsub(o, tri[0]))
    return (alpha * alpha, 2.0 * alpha * beta, beta * beta,
            2.0 * alpha * gamma, 2.0 * beta * gamma, gamma * gamma)


def _conic_diff(c1, c2):
    return tuple(a - b for a, b in zip(c1, c2))


def _feature_bbox(frame, tri, feature, pad):
    kind, idx = feature
    if kind == "vertex":
        pts = [tri[idx]]
    elif kind == "edge":
        pts = [tri[idx], tri[(idx + 1) % 3]]
    else:
        pts = list(tri)
    uv = [frame.to_plane(p) for p in pts]
    xs = [p[0] for p in uv]
    ys = [p[1] for p in uv]
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def _bbox_intersect(b1, b2):
    xlo = max(b1[0], b2[0])
    ylo = max(b1[1], b2[1])
    xhi = min(b1[2], b2[2])
    yhi = min(b1[3], b2[3])
    if xlo > xhi or ylo > yhi:
        return None
    return (xlo, ylo, xhi, yhi)


def _point_in_triangle_2d(p, tri2d, slack):
    def area2(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    s = area2(*tri2d)
    for i in range(3):
        a, b = tri2d[i], tri2d[(i + 1) % 3]
        if area2(a, b, p) * (1.0 if s > 0 else -1.0) < -slack:
            return False
    return True


def _resultant_coeffs(C1, C2):
    """Quartic coefficients of the y-resultant of conic pairs, vectorized.

    C1, C2 are (N, 6) rows (A, B, C, D, E, F).  Valid whenever at least one
    of each pair's y^2 coefficients is nonzero; the all-linear case needs the
    cubic b1*c2 - b2*c1 instead (also returned)."""
    A1, B1, Cc1, D1, E1, F1 = (C1[:, i] for i in range(6))
    A2, B2, Cc2, D2, E2, F2 = (C2[:, i] for i in range(6))
    # t = a1*c2(x) - a2*c1(x), degree 2
    p0 = Cc1 * F2 - Cc2 * F1
    p1 = Cc1 * D2 - Cc2 * D1
    p2 = Cc1 * A2 - Cc2 * A1
    # u = a1*b2(x) - a2*b1(x), degree 1
    q0 = Cc1 * E2 - Cc2 * E1
    q1 = Cc1 * B2 - Cc2 * B1
    # v = b1*c2(x) - b2*c1(x), degree 3
    v0 = E1 * F2 - E2 * F1
    v1 = E1 * D2 + B1 * F2 - (E2 * D1 + B2 * F1)
    v2 = E1 * A2 + B1 * D2 - (E2 * A1 + B2 * D1)
    v3 = B1 * A2 - B2 * A1
    res = np.empty((C1.shape[0], 5))
    res[:, 0] = p0 * p0 - q0 * v0
    res[:, 1] = 2 * p0 * p1 - (q0 * v1 + q1 * v0)
    res[:, 2] = p1 * p1 + 2 * p0 * p2 - (q0 * v2 + q1 * v1)
    res[:, 3] = 2 * p1 * p2 - (q0 * v3 + q1 * v2)
    res[:, 4] = p2 * p2 - q1 * v3
    cubic = np.stack([v0, v1, v2, v3], axis=1)
    return res, cubic


def _batched_poly_roots(coeffs, xlo, xhi):
    """Real roots of many low-degree polynomials (rows, lowest degree first),
    restricted to per-row intervals [xlo, xhi].

    Returns (rows, xs) arrays.  Rows are normalized, trimmed by magnitude and
    solved per effective degree: closed form up to degree 2, companion-matrix
    eigenvalues for degrees 3 and 4."""
    n, width = coeffs.shape
    rows_out = []
    xs_out = []
    mags = np.abs(coeffs).max(axis=1)
    ok = mags > 0
    norm = coeffs.copy()
    norm[ok] = coeffs[ok] / mags[ok, None]
    tiny = 1e-12
    degs = np.zeros(n, dtype=int)
    for d in range(width - 1, 0, -1):
        mask = (degs == 0) & (np.abs(norm[:, d]) > tiny)
        degs[mask] = d

    def emit(rows, xs):
        keep = (xs >= xlo[rows]) & (xs <= xhi[rows])
        rows_out.append(rows[keep])
        xs_out.append(xs[keep])

    for d in (3, 4):
        rows = np.where(degs == d)[0]
        if len(rows) == 0:
            continue
        sub = norm[rows][:, : d + 1]
        comp = np.zeros((len(rows), d, d))
        comp[:, 1:, :-1] = np.eye(d - 1)
        comp[:, :, -1] = -sub[:, :d] / sub[:, d:d + 1]
        eig = np.linalg.eigvals(comp)
        realish = np.abs(eig.imag) <= 1e-7 * (1.0 + np.abs(eig.real))
        rr = np.repeat(rows, d)[realish.ravel()]
        emit(rr, eig.real.ravel()[realish.ravel()])
    rows = np.where(degs == 2)[0]
    if len(rows):
        a = norm[rows, 2]
        b = norm[rows, 1]
        c = norm[rows, 0]
        disc = b * b - 4 * a * c
        has = disc >= 0
        sq = np.sqrt(np.where(has, disc, 0.0))
        for sgn in (-1.0, 1.0):
            emit(rows[has], ((-b + sgn * sq) / (2 * a))[has])
    rows = np.where(degs == 1)[0]
    if len(rows):
        emit(rows, -norm[rows, 0] / norm[rows, 1])
    if not rows_out:
        return np.array([], dtype=int), np.array([])
    return np.concatenate(rows_out), np.concatenate(xs_out)


def _y_on_conic(c, x, tol):
    A, B, C, D, E, F = c
    b = B * x + E
    cc = A * x * x + D * x + F
    if abs(C) > 1e-12:
        try:
            return quadratic_roots(C, b, cc, tol)
        except Exception:
            return []
    if abs(b) > 1e-12:
        return [-cc / b]
    return []


def _conic_value(c, x, y):
    A, B, C, D, E, F = c
    return A * x * x + B * x * y + C * y * y + D * x + E * y + F


def triple_equidistance_values(frame, tri2d, others, lo, hi, tol=DEFAULT_TOL):
    """Equidistance values of triangle triples within an image triangle.

    `others` is a list of (index, triangle) candidates already filtered by
    distance; returns (value, (i, j, k)) tuples with lo <= value <= hi.

    For each feature combination the two pairwise bisectors of the squared
    distance conics are intersected; the x-resultants of all combinations are
    solved in one batch, and every surviving point is verified against the
    true triangle distances before its common value is reported."""
    out = []
    txs = [p[0] for p in tri2d]
    tys = [p[1] for p in tri2d]
    tri_box = np.array([min(txs), min(tys), max(txs), max(tys)])
    scale = max(1.0, hi)
    slack = 1e-7 * scale

    n_feat = len(_FEATURES)
    n_others = len(others)
    conic_arr = np.full((n_others, n_feat, 6), np.nan)
    box_arr = np.full((n_others, n_feat, 4), np.nan)
    for a, (oi, tri) in enumerate(others):
        for fi, feat in enumerate(_FEATURES):
            c = _feature_sqdist_conic(frame, tri, feat)
            if c is None:
                continue
            conic_arr[a, fi] = c
            box_arr[a, fi] = _feature_bbox(frame, tri, feat, hi * 1.0001)

    fi_g, fj_g, fk_g = np.meshgrid(np.arange(n_feat), np.arange(n_feat),
                                   np.arange(n_feat), indexing="ij")
    fi_g = fi_g.ravel()
    fj_g = fj_g.ravel()
    fk_g = fk_g.ravel()

    for (ia, ib, ic) in combinations(range(n_others), 3):
        i, tri_i = others[ia]
        j, tri_j = others[ib]
        k, tri_k = others[ic]
        Ci = conic_arr[ia][fi_g]
        Cj = conic_arr[ib][fj_g]
        Ck = conic_arr[ic][fk_g]
        # intersect the three hi-padded feature boxes with the triangle box
        blo_x = np.maximum.reduce([box_arr[ia][fi_g, 0], box_arr[ib][fj_g, 0],
                                   box_arr[ic][fk_g, 0], np.full(len(fi_g), tri_box[0])])
        bhi_x = np.minimum.reduce([box_arr[ia][fi_g, 2], box_arr[ib][fj_g, 2],
                                   box_arr[ic][fk_g, 2], np.full(len(fi_g), tri_box[2])])
        blo_y = np.maximum.reduce([box_arr[ia][fi_g, 1], box_arr[ib][fj_g, 1],
                                   box_arr[ic][fk_g, 1], np.full(len(fi_g), tri_box[1])])
        bhi_y = np.minimum.reduce([box_arr[ia][fi_g, 3], box_arr[ib][fj_g, 3],
                                   box_arr[ic][fk_g, 3], np.full(len(fi_g), tri_box[3])])
        C1 = Ci - Cj
        C2 = Ci - Ck
        with np.errstate(invalid="ignore"):
            keep = ((blo_x <= bhi_x) & (blo_y <= bhi_y)
                    & ~np.isnan(C1).any(axis=1) & ~np.isnan(C2).any(axis=1)
                    & (np.abs(C1).max(axis=1) > 1e-12)
                    & (np.abs(C2).max(axis=1) > 1e-12))
        if not keep.any():
            continue
        C1 = C1[keep]
        C2 = C2[keep]
        xlo = blo_x[keep] - slack
        xhi = bhi_x[keep] + slack
        ylo = blo_y[keep] - slack
        yhi = bhi_y[keep] + slack

        res, cubic = _resultant_coeffs(C1, C2)
        both_linear = (np.abs(C1[:, 2]) <= 1e-12) & (np.abs(C2[:, 2]) <= 1e-12)
        polys = np.where(both_linear[:, None],
                         np.hstack([cubic, np.zeros((len(cubic), 1))]), res)
        seen = set()
        root_rows, root_xs = _batched_poly_roots(polys, xlo, xhi)
        for row, x in zip(root_rows, root_xs):
            c1 = tuple(C1[row])
            c2 = tuple(C2[row])
            ys = _y_on_conic(c1, x, tol) if abs(c1[2]) >= abs(c2[2]) \
                else _y_on_conic(c2, x, tol)
            for y in ys:
                if not (ylo[row] <= y <= yhi[row]):
                    continue
                r1 = _conic_value(c1, x, y)
                r2 = _conic_value(c2, x, y)
                conic_scale = 1e-5 * max(1.0, abs(x) + abs(y)) ** 2 * scale
                if abs(r1) > conic_scale or abs(r2) > conic_scale:
                    continue
                if not _point_in_triangle_2d((x, y), tri2d, slack):
                    continue
                key = (round(x / (10 * slack)), round(y / (10 * slack)))
                if key in seen:
                    continue
                seen.add(key)
                p3 = frame.from_plane((x, y))
                di = dist_point_triangle(p3, tri_i, tol, degenerate_ok=True)
                dj = dist_point_triangle(p3, tri_j, tol, degenerate_ok=True)
                dk = dist_point_triangle(p3, tri_k, tol, degenerate_ok=True)
                dmax = max(di, dj, dk)
                dmin = min(di, dj, dk)
                if dmax - dmin > 1e3 * tol.gap(dmax):
                    continue
                val = (di + dj + dk) / 3.0
                if lo - tol.gap(val) <= val <= hi + tol.gap(val):
                    out.append((val, (i, j, k)))
    return out


def critical_values_2c(f, g, lo, hi, tol=DEFAULT_TOL):
    """Type-2c candidates in [lo, hi]: for each image triangle of one surface,
    equidistance points of triples of the other surface's triangles within it."""
    if lo > hi:
        return []
    vals = []
    for (tagT, tagO, sq, so) in (("K-tri", "L-tris", f, g), ("L-tri", "K-tris", g, f)):
        o_tris = [(i, so.image_triangle(i)) for i in range(so.n_triangles)]
        for q in range(sq.n_triangles):
            tri_img = sq.image_triangle(q)
            frame = frame_of_triangle(tri_img, tol)
            tri2d = [frame.to_plane(p) for p in tri_img]
            near = [(i, tri) for (i, tri) in o_tris
                    if dist_triangle_triangle(tri_img, tri, tol) <= hi + tol.gap(hi)]
            if len(near) < 3:
                continue
            for val, triple in triple_equidistance_values(frame, tri2d, near,
                                                          lo, hi, tol):
                vals.append(CriticalValue(val, "T2c", (tagT, q, tagO, triple)))
    return dedup_critical_values(vals, tol)
