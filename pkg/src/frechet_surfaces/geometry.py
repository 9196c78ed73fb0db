"""Primitive geometry in R^2/R^3.

Minimum distances between points, segments and triangles; plane frames; and
the conic arcs that bound the intersection of a triangle's eps-neighborhood
with a plane.  Points are plain tuples of floats (length 2 or 3); batch
variants take numpy arrays where oracles and sampling need throughput.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .scalar import (DEFAULT_TOL, DegeneratePolynomialError, Ordering, cmp,
                     poly_add, poly_mul, poly_scale, poly_sub, quadratic_roots,
                     real_roots)

TWO_PI = 2.0 * math.pi


class GeometryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Small vector helpers (dimension 2 or 3, plain floats for speed)
# ---------------------------------------------------------------------------

def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vscale(a, s):
    return tuple(x * s for x in a)


def vdot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vnorm(a):
    return math.sqrt(vdot(a, a))


def vdist(a, b):
    return vnorm(vsub(a, b))


def vlerp(a, b, t):
    return tuple(x + t * (y - x) for x, y in zip(a, b))


def vcross3(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def cross_norm(a, b):
    """Norm of the cross product, valid for d=2 (scalar) and d=3."""
    if len(a) == 2:
        return abs(a[0] * b[1] - a[1] * b[0])
    return vnorm(vcross3(a, b))


def triangle_area(tri):
    return 0.5 * cross_norm(vsub(tri[1], tri[0]), vsub(tri[2], tri[0]))


def triangle_scale(tri):
    return max(vdist(tri[0], tri[1]), vdist(tri[1], tri[2]), vdist(tri[2], tri[0]))


def check_triangle(tri, tol=DEFAULT_TOL, degenerate_ok=False):
    if degenerate_ok:
        return
    s = triangle_scale(tri)
    if s == 0.0 or triangle_area(tri) <= tol.rel * s * s:
        raise GeometryError("degenerate triangle (zero area)")


# ---------------------------------------------------------------------------
# Closest points and minimum distances
# ---------------------------------------------------------------------------

def closest_point_segment(p, a, b):
    """Closest point of segment [a, b] to p, as (point, t)."""
    ab = vsub(b, a)
    denom = vdot(ab, ab)
    if denom == 0.0:
        return a, 0.0
    t = vdot(vsub(p, a), ab) / denom
    t = min(1.0, max(0.0, t))
    return vadd(a, vscale(ab, t)), t


def closest_point_triangle(p, tri):
    """Closest point of a triangle to p, with the nearest feature.

    Returns (point, feature) where feature is ("vertex", i), ("edge", i) with
    edge i joining vertices i and (i+1) % 3, or ("face", 0).  Works in any
    dimension >= 2 since only dot products are used.
    """
    a, b, c = tri
    ab = vsub(b, a)
    ac = vsub(c, a)
    ap = vsub(p, a)
    d1 = vdot(ab, ap)
    d2 = vdot(ac, ap)
    if d1 <= 0.0 and d2 <= 0.0:
        return a, ("vertex", 0)

    bp = vsub(p, b)
    d3 = vdot(ab, bp)
    d4 = vdot(ac, bp)
    if d3 >= 0.0 and d4 <= d3:
        return b, ("vertex", 1)

    vc = d1 * d4 - d3 * d2
    if vc <= 0.0 and d1 >= 0.0 and d3 <= 0.0:
        t = d1 / (d1 - d3)
        return vadd(a, vscale(ab, t)), ("edge", 0)

    cp = vsub(p, c)
    d5 = vdot(ab, cp)
    d6 = vdot(ac, cp)
    if d6 >= 0.0 and d5 <= d6:
        return c, ("vertex", 2)

    vb = d5 * d2 - d1 * d6
    if vb <= 0.0 and d2 >= 0.0 and d6 <= 0.0:
        t = d2 / (d2 - d6)
        return vadd(a, vscale(ac, t)), ("edge", 2)

    va = d3 * d6 - d5 * d4
    if va <= 0.0 and (d4 - d3) >= 0.0 and (d5 - d6) >= 0.0:
        t = (d4 - d3) / ((d4 - d3) + (d5 - d6))
        return vadd(b, vscale(vsub(c, b), t)), ("edge", 1)

    denom = va + vb + vc
    if denom == 0.0:
        # Degenerate triangle; fall back to the best edge.
        best = None
        for i in range(3):
            q, _ = closest_point_segment(p, tri[i], tri[(i + 1) % 3])
            d = vdist(p, q)
            if best is None or d < best[0]:
                best = (d, q, ("edge", i))
        return best[1], best[2]
    v = vb / denom
    w = vc / denom
    q = vadd(a, vadd(vscale(ab, v), vscale(ac, w)))
    return q, ("face", 0)


def dist_point_triangle(p, tri, tol=DEFAULT_TOL, degenerate_ok=False):
    check_triangle(tri, tol, degenerate_ok)
    q, _ = closest_point_triangle(p, tri)
    return vdist(p, q)


def closest_segment_segment(p1, q1, p2, q2):
    """Closest points of two segments; returns (dist, s, t)."""
    d1 = vsub(q1, p1)
    d2 = vsub(q2, p2)
    r = vsub(p1, p2)
    a = vdot(d1, d1)
    e = vdot(d2, d2)
    f = vdot(d2, r)
    if a == 0.0 and e == 0.0:
        return vdist(p1, p2), 0.0, 0.0
    if a == 0.0:
        t = min(1.0, max(0.0, f / e))
        return vdist(p1, vadd(p2, vscale(d2, t))), 0.0, t
    c = vdot(d1, r)
    if e == 0.0:
        s = min(1.0, max(0.0, -c / a))
        return vdist(vadd(p1, vscale(d1, s)), p2), s, 0.0
    b = vdot(d1, d2)
    denom = a * e - b * b
    if denom > 0.0:
        s = min(1.0, max(0.0, (b * f - c * e) / denom))
    else:
        s = 0.0
    t = (b * s + f) / e
    if t < 0.0:
        t = 0.0
        s = min(1.0, max(0.0, -c / a))
    elif t > 1.0:
        t = 1.0
        s = min(1.0, max(0.0, (b - c) / a))
    pa = vadd(p1, vscale(d1, s))
    pb = vadd(p2, vscale(d2, t))
    return vdist(pa, pb), s, t


def segment_crosses_triangle(a, b, tri):
    """True when segment [a, b] meets the closed triangle (d=3 proper crossing;
    coplanar contact is resolved by the edge/vertex distance terms instead)."""
    if len(a) == 2:
        return False
    u = vsub(tri[1], tri[0])
    v = vsub(tri[2], tri[0])
    n = vcross3(u, v)
    nn = vnorm(n)
    if nn == 0.0:
        return False
    da = vdot(n, vsub(a, tri[0]))
    db = vdot(n, vsub(b, tri[0]))
    if (da > 0.0 and db > 0.0) or (da < 0.0 and db < 0.0):
        return False
    denom = da - db
    if denom == 0.0:
        return False  # coplanar; handled elsewhere
    t = da / denom
    p = vlerp(a, b, t)
    # barycentric inside test
    w = vsub(p, tri[0])
    uu = vdot(u, u)
    uv = vdot(u, v)
    vv = vdot(v, v)
    wu = vdot(w, u)
    wv = vdot(w, v)
    det = uu * vv - uv * uv
    if det == 0.0:
        return False
    s = (vv * wu - uv * wv) / det
    r = (uu * wv - uv * wu) / det
    return s >= 0.0 and r >= 0.0 and s + r <= 1.0


def dist_segment_triangle(seg, tri, tol=DEFAULT_TOL, degenerate_ok=False):
    check_triangle(tri, tol, degenerate_ok)
    a, b = seg
    if segment_crosses_triangle(a, b, tri):
        return 0.0
    best = min(dist_point_triangle(a, tri, tol, True),
               dist_point_triangle(b, tri, tol, True))
    for i in range(3):
        d, _, _ = closest_segment_segment(a, b, tri[i], tri[(i + 1) % 3])
        if d < best:
            best = d
    return best


def dist_triangle_triangle(t1, t2, tol=DEFAULT_TOL, degenerate_ok=False):
    check_triangle(t1, tol, degenerate_ok)
    check_triangle(t2, tol, degenerate_ok)
    best = math.inf
    for i in range(3):
        e1 = (t1[i], t1[(i + 1) % 3])
        d = dist_segment_triangle(e1, t2, tol, True)
        if d < best:
            best = d
        e2 = (t2[i], t2[(i + 1) % 3])
        d = dist_segment_triangle(e2, t1, tol, True)
        if d < best:
            best = d
    return best


def dist_points_triangle(points, tri):
    """Vectorized point-to-triangle distances. points: (n, d) array."""
    P = np.asarray(points, dtype=float)
    a = np.asarray(tri[0], dtype=float)
    b = np.asarray(tri[1], dtype=float)
    c = np.asarray(tri[2], dtype=float)
    ab = b - a
    ac = c - a
    ap = P - a
    d1 = ap @ ab
    d2 = ap @ ac
    bp = P - b
    d3 = bp @ ab
    d4 = bp @ ac
    cp = P - c
    d5 = cp @ ab
    d6 = cp @ ac
    va = d3 * d6 - d5 * d4
    vb = d5 * d2 - d1 * d6
    vc = d1 * d4 - d3 * d2

    n = P.shape[0]
    closest = np.empty_like(P)
    done = np.zeros(n, dtype=bool)

    m = (d1 <= 0) & (d2 <= 0)
    closest[m] = a
    done |= m

    m = (~done) & (d3 >= 0) & (d4 <= d3)
    closest[m] = b
    done |= m

    m = (~done) & (vc <= 0) & (d1 >= 0) & (d3 <= 0)
    if m.any():
        t = d1[m] / (d1[m] - d3[m])
        closest[m] = a + t[:, None] * ab
    done |= m

    m = (~done) & (d6 >= 0) & (d5 <= d6)
    closest[m] = c
    done |= m

    m = (~done) & (vb <= 0) & (d2 >= 0) & (d6 <= 0)
    if m.any():
        t = d2[m] / (d2[m] - d6[m])
        closest[m] = a + t[:, None] * ac
    done |= m

    m = (~done) & (va <= 0) & ((d4 - d3) >= 0) & ((d5 - d6) >= 0)
    if m.any():
        t = (d4[m] - d3[m]) / ((d4[m] - d3[m]) + (d5[m] - d6[m]))
        closest[m] = b + t[:, None] * (c - b)
    done |= m

    m = ~done
    if m.any():
        denom = va[m] + vb[m] + vc[m]
        denom = np.where(denom == 0.0, 1.0, denom)
        v = (vb[m] / denom)[:, None]
        w = (vc[m] / denom)[:, None]
        closest[m] = a + v * ab + w * ac

    return np.linalg.norm(P - closest, axis=1)


def dist_points_mesh(points, triangles):
    """Min distance from each point to a list of triangles (vectorized)."""
    best = None
    for tri in triangles:
        d = dist_points_triangle(points, tri)
        best = d if best is None else np.minimum(best, d)
    return best


# ---------------------------------------------------------------------------
# Plane frames
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Plane2Frame:
    """Orthonormal 2D coordinate frame spanning a plane in R^d."""

    origin: tuple
    b1: tuple
    b2: tuple

    def __post_init__(self):
        tol = DEFAULT_TOL
        if not (tol.zero(vnorm(self.b1) - 1.0, 1.0) and tol.zero(vnorm(self.b2) - 1.0, 1.0)
                and tol.zero(vdot(self.b1, self.b2), 1.0)):
            raise GeometryError("plane frame basis must be orthonormal")

    @property
    def dim(self):
        return len(self.origin)

    def normal(self):
        if self.dim != 3:
            raise GeometryError("plane normal only defined in R^3")
        return vcross3(self.b1, self.b2)

    def to_plane(self, p):
        d = vsub(p, self.origin)
        return (vdot(d, self.b1), vdot(d, self.b2))

    def from_plane(self, uv):
        return vadd(self.origin, vadd(vscale(self.b1, uv[0]), vscale(self.b2, uv[1])))

    def offset_of(self, p):
        """Signed distance of p from the plane (0 in d=2)."""
        if self.dim == 2:
            return 0.0
        return vdot(vsub(p, self.origin), self.normal())

    def affine_in_plane(self, grad, value_at_origin):
        """Restrict the ambient affine functional grad . p + c to plane coords.

        Returns (alpha, beta, gamma) with functional = alpha*u + beta*v + gamma.
        """
        return (vdot(grad, self.b1), vdot(grad, self.b2),
                value_at_origin + vdot(grad, self.origin))

    def rotated(self, angle):
        c, s = math.cos(angle), math.sin(angle)
        nb1 = vadd(vscale(self.b1, c), vscale(self.b2, s))
        nb2 = vadd(vscale(self.b1, -s), vscale(self.b2, c))
        return Plane2Frame(self.origin, nb1, nb2)


def frame_of_triangle(tri, tol=DEFAULT_TOL):
    """Orthonormal frame of the plane supporting a (non-degenerate) triangle."""
    check_triangle(tri, tol)
    if len(tri[0]) == 2:
        return Plane2Frame((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))
    e1 = vsub(tri[1], tri[0])
    b1 = vscale(e1, 1.0 / vnorm(e1))
    e2 = vsub(tri[2], tri[0])
    e2p = vsub(e2, vscale(b1, vdot(e2, b1)))
    b2 = vscale(e2p, 1.0 / vnorm(e2p))
    return Plane2Frame(tri[0], b1, b2)


def identity_frame_2d():
    return Plane2Frame((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))


# ---------------------------------------------------------------------------
# Conic arcs in a plane frame
# ---------------------------------------------------------------------------

@dataclass
class ConicArc:
    """Arc of a circle/ellipse, or a straight segment, in plane coordinates.

    Circle/ellipse arcs are parameterized as
        p(t) = center + rx*cos(t)*u_axis + ry*sin(t)*v_axis
    with t in [t0, t1] (t1 <= t0 + 2*pi); segments use p(t) = p0 + t*(p1-p0),
    t in [0, 1].  ``coeffs`` stores the implicit supporting conic
    A x^2 + B xy + C y^2 + D x + E y + F = 0.  ``source`` records the triangle
    feature ("vertex" i / "edge" i / "face" 0) whose distance level set
    produced the arc.
    """

    kind: str  # "circle" | "ellipse" | "segment"
    center: tuple = (0.0, 0.0)
    rx: float = 0.0
    ry: float = 0.0
    rot: float = 0.0
    t0: float = 0.0
    t1: float = 0.0
    p0: tuple = (0.0, 0.0)
    p1: tuple = (0.0, 0.0)
    coeffs: tuple = (0.0,) * 6
    source: tuple = ("face", 0)

    def point(self, t):
        if self.kind == "segment":
            return (self.p0[0] + t * (self.p1[0] - self.p0[0]),
                    self.p0[1] + t * (self.p1[1] - self.p0[1]))
        cr, sr = math.cos(self.rot), math.sin(self.rot)
        x = self.rx * math.cos(t)
        y = self.ry * math.sin(t)
        return (self.center[0] + x * cr - y * sr,
                self.center[1] + x * sr + y * cr)

    def midpoint(self):
        return self.point(0.5 * (self.t0 + self.t1))

    def endpoints(self):
        return self.point(self.t0), self.point(self.t1)

    def sample(self, n):
        ts = [self.t0 + (self.t1 - self.t0) * i / (n - 1) for i in range(n)]
        return [self.point(t) for t in ts]

    def param_of_point(self, p, tol=DEFAULT_TOL):
        """Parameter of a point assumed on the supporting curve, or None if
        outside the arc's parameter range."""
        if self.kind == "segment":
            dx = self.p1[0] - self.p0[0]
            dy = self.p1[1] - self.p0[1]
            L2 = dx * dx + dy * dy
            if L2 == 0.0:
                return None
            t = ((p[0] - self.p0[0]) * dx + (p[1] - self.p0[1]) * dy) / L2
            slack = tol.gap(1.0) * 1e3
            if -slack <= t <= 1.0 + slack:
                return min(1.0, max(0.0, t))
            return None
        cr, sr = math.cos(self.rot), math.sin(self.rot)
        dx = p[0] - self.center[0]
        dy = p[1] - self.center[1]
        xl = dx * cr + dy * sr
        yl = -dx * sr + dy * cr
        t = math.atan2(yl / self.ry if self.ry > 0 else 0.0,
                       xl / self.rx if self.rx > 0 else 0.0)
        # shift into [t0, t0 + 2*pi)
        while t < self.t0 - 1e-12:
            t += TWO_PI
        slack = 1e-7 + tol.rel * 1e3
        if t <= self.t1 + slack:
            return min(self.t1, max(self.t0, t))
        return None

    def x_extreme_params(self):
        """Parameters interior to the arc where dx/dt = 0 (vertical tangents)."""
        if self.kind == "segment":
            return []
        # x(t) = cx + rx cos t cos rot - ry sin t sin rot
        # dx/dt = -rx sin t cos rot - ry cos t sin rot = 0
        a = -self.rx * math.cos(self.rot)
        b = -self.ry * math.sin(self.rot)
        if a == 0.0 and b == 0.0:
            return []
        t_base = math.atan2(-b, a)  # solves a sin t + b cos t = 0
        out = []
        for k in (-2, -1, 0, 1, 2):
            for off in (0.0, math.pi):
                t = t_base + off + k * TWO_PI
                if self.t0 < t < self.t1:
                    out.append(t)
        return sorted(set(out))

    def aabb(self):
        pts = [self.point(self.t0), self.point(self.t1)]
        pts += [self.point(t) for t in self.x_extreme_params()]
        if self.kind != "segment":
            # also y-extremes for a proper box
            a = -self.rx * math.sin(self.rot)
            b = self.ry * math.cos(self.rot)
            if not (a == 0.0 and b == 0.0):
                t_base = math.atan2(b, a)
                for k in (-2, -1, 0, 1, 2):
                    for off in (0.0, math.pi):
                        t = t_base + off + k * TWO_PI
                        if self.t0 < t < self.t1:
                            pts.append(self.point(t))
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return (min(xs), min(ys), max(xs), max(ys))

    def vertical_line_hits(self, x):
        """y-values where the arc meets the vertical line u = x."""
        out = []
        if self.kind == "segment":
            dx = self.p1[0] - self.p0[0]
            if dx == 0.0:
                return []
            t = (x - self.p0[0]) / dx
            if 0.0 <= t <= 1.0:
                out.append(self.p0[1] + t * (self.p1[1] - self.p0[1]))
            return out
        A, B, C, D, E, F = self.coeffs
        # C y^2 + (B x + E) y + (A x^2 + D x + F) = 0
        ys = quadratic_roots(C, B * x + E, A * x * x + D * x + F)
        for y in ys:
            if self.param_of_point((x, y)) is not None:
                out.append(y)
        return out

    def implicit_residual(self, p):
        A, B, C, D, E, F = self.coeffs
        x, y = p
        return A * x * x + B * x * y + C * y * y + D * x + E * y + F


def _circle_coeffs(cx, cy, r):
    return (1.0, 0.0, 1.0, -2.0 * cx, -2.0 * cy, cx * cx + cy * cy - r * r)


def _ellipse_coeffs(cx, cy, rx, ry, rot):
    # Expand ((x') / rx)^2 + ((y') / ry)^2 = 1 with x' = rotation of (x - c).
    c, s = math.cos(rot), math.sin(rot)
    irx2 = 1.0 / (rx * rx)
    iry2 = 1.0 / (ry * ry)
    A = c * c * irx2 + s * s * iry2
    B = 2.0 * c * s * (irx2 - iry2)
    C = s * s * irx2 + c * c * iry2
    # substitute x -> x - cx, y -> y - cy
    D = -2.0 * A * cx - B * cy
    E = -B * cx - 2.0 * C * cy
    F = A * cx * cx + B * cx * cy + C * cy * cy - 1.0
    return (A, B, C, D, E, F)


def _line_coeffs(p0, p1):
    nx = -(p1[1] - p0[1])
    ny = p1[0] - p0[0]
    return (0.0, 0.0, 0.0, nx, ny, -(nx * p0[0] + ny * p0[1]))


def make_segment_arc(p0, p1, source=("face", 0)):
    return ConicArc(kind="segment", p0=tuple(p0), p1=tuple(p1), t0=0.0, t1=1.0,
                    coeffs=_line_coeffs(p0, p1), source=source)


def make_circle_arc(center, r, t0, t1, source):
    return ConicArc(kind="circle", center=tuple(center), rx=r, ry=r, rot=0.0,
                    t0=t0, t1=t1, coeffs=_circle_coeffs(center[0], center[1], r),
                    source=source)


def make_ellipse_arc(center, rx, ry, rot, t0, t1, source):
    return ConicArc(kind="ellipse", center=tuple(center), rx=rx, ry=ry, rot=rot,
                    t0=t0, t1=t1,
                    coeffs=_ellipse_coeffs(center[0], center[1], rx, ry, rot),
                    source=source)


# ---------------------------------------------------------------------------
# Clipping parameter intervals of a carrier curve against half-planes
# ---------------------------------------------------------------------------

def _halfplane_values_on_ellipse(hp, center, rx, ry, rot):
    """Rewrite alpha*u + beta*v + gamma on the ellipse as a*cos t + b*sin t + c."""
    alpha, beta, gamma = hp
    cr, sr = math.cos(rot), math.sin(rot)
    # u = cx + rx cos t cr - ry sin t sr ; v = cy + rx cos t sr + ry sin t cr
    a = alpha * rx * cr + beta * rx * sr
    b = -alpha * ry * sr + beta * ry * cr
    c = alpha * center[0] + beta * center[1] + gamma
    return a, b, c


def _clip_intervals(intervals, crossings, inside_fn):
    """Split intervals at crossing params; keep parts whose midpoint passes."""
    out = []
    for (a, b) in intervals:
        cuts = sorted([a, b] + [t for t in crossings if a < t < b])
        for lo, hi in zip(cuts, cuts[1:]):
            if hi - lo <= 1e-13:
                continue
            if inside_fn(0.5 * (lo + hi)):
                if out and abs(out[-1][1] - lo) <= 1e-13:
                    out[-1] = (out[-1][0], hi)
                else:
                    out.append((lo, hi))
    return out


def clip_ellipse_by_halfplanes(center, rx, ry, rot, halfplanes, tol=DEFAULT_TOL):
    """Parameter intervals of the full ellipse where all alpha*u+beta*v+gamma <= 0."""
    intervals = [(0.0, TWO_PI)]
    for hp in halfplanes:
        a, b, c = _halfplane_values_on_ellipse(hp, center, rx, ry, rot)
        R = math.hypot(a, b)
        scale = max(R, abs(c), 1e-300)
        if R <= tol.rel * scale:
            if c > 0.0:
                return []
            continue
        crossings = []
        if abs(c) <= R:
            phi = math.atan2(b, a)
            delta = math.acos(max(-1.0, min(1.0, -c / R)))
            for base in (phi + delta, phi - delta):
                t = base % TWO_PI
                crossings.extend([t, t + TWO_PI])
        val = lambda t, a=a, b=b, c=c: a * math.cos(t) + b * math.sin(t) + c
        intervals = _clip_intervals(intervals, crossings, lambda t: val(t) <= 0.0)
        if not intervals:
            return []
    # merge a wrap-around pair (..., 2*pi) + (0, ...) into one arc
    if len(intervals) >= 2 and intervals[0][0] <= 1e-12 \
            and intervals[-1][1] >= TWO_PI - 1e-12:
        first = intervals.pop(0)
        last = intervals.pop()
        intervals.append((last[0], first[1] + TWO_PI))
    return intervals


def clip_segment_by_halfplanes(p0, p1, halfplanes, tol=DEFAULT_TOL):
    """Sub-intervals of the segment param [0,1] where all half-planes hold."""
    intervals = [(0.0, 1.0)]
    dx = p1[0] - p0[0]
    dy = p1[1] - p0[1]
    for (alpha, beta, gamma) in halfplanes:
        v0 = alpha * p0[0] + beta * p0[1] + gamma
        slope = alpha * dx + beta * dy
        scale = max(abs(v0), abs(slope), 1e-300)
        if abs(slope) <= tol.rel * scale:
            if v0 > 0.0:
                return []
            continue
        crossings = [-v0 / slope]
        intervals = _clip_intervals(
            intervals, crossings, lambda t: v0 + slope * t <= 0.0)
        if not intervals:
            return []
    return intervals


# ---------------------------------------------------------------------------
# eps-neighborhood of a triangle intersected with a plane
# ---------------------------------------------------------------------------

SLICE_EMPTY = "empty"
SLICE_BOUNDARY = "boundary"
SLICE_INSIDE = "inside"  # region nonempty but contributes no boundary curve


@dataclass
class PlaneSlice:
    """Boundary of {p in plane : dist(p, triangle) <= eps} as conic arcs."""

    arcs: list = field(default_factory=list)
    status: str = SLICE_BOUNDARY


def _perp_component(v, unit_axis):
    return vsub(v, vscale(unit_axis, vdot(v, unit_axis)))


def _classify_restricted_quadric(frame, A2, b2, c0, source, scene_halfwidth,
                                 halfplanes, tol):
    """Zero set of a PSD quadratic on the plane, clipped by half-planes.

    A2 is the symmetric 2x2 quadratic part in plane coords, b2 the linear part,
    c0 the constant:  q(w) = w^T A2 w + 2 b2 . w + c0.
    Returns a list of ConicArcs.
    """
    arcs = []
    A = np.array(A2, dtype=float)
    b = np.array(b2, dtype=float)
    evals, evecs = np.linalg.eigh(A)
    lam_small, lam_big = float(evals[0]), float(evals[1])
    scale = max(lam_big, abs(c0), float(np.max(np.abs(b))), 1e-300)

    if lam_big <= tol.rel * scale:
        # q is affine: 2 b . w + c0 = 0
        bn = math.hypot(b[0], b[1])
        if bn <= tol.rel * scale:
            return []
        line_hps = [(2.0 * b[0], 2.0 * b[1], c0)]
        arcs.extend(_line_to_arcs(line_hps[0], scene_halfwidth, halfplanes,
                                  source, tol))
        return arcs

    if lam_small > 1e-7 * lam_big:
        # positive definite: ellipse (or circle)
        center = np.linalg.solve(A, -b)
        q0 = c0 + float(b @ center)
        if q0 >= -tol.abs * max(1.0, scale):
            return []  # empty or a single point
        r1 = math.sqrt(-q0 / lam_big)
        r2 = math.sqrt(-q0 / lam_small)
        # axis of lam_big has the SMALL radius r1
        ax = evecs[:, 1]
        rot = math.atan2(ax[1], ax[0])
        cx, cy = float(center[0]), float(center[1])
        if abs(r1 - r2) <= tol.rel * max(r1, r2):
            mk = lambda t0, t1: make_circle_arc((cx, cy), 0.5 * (r1 + r2), t0, t1, source)
            ivals = clip_ellipse_by_halfplanes((cx, cy), 0.5 * (r1 + r2),
                                               0.5 * (r1 + r2), 0.0, halfplanes, tol)
        else:
            mk = lambda t0, t1: make_ellipse_arc((cx, cy), r1, r2, rot, t0, t1, source)
            ivals = clip_ellipse_by_halfplanes((cx, cy), r1, r2, rot, halfplanes, tol)
        for (t0, t1) in ivals:
            arcs.append(mk(t0, t1))
        return arcs

    # rank one: q = lam_big * (e . w + s0)^2 + const -> 0, 1 or 2 parallel lines
    e = evecs[:, 1]
    # q(w) = lam*(e.w)^2 + 2 b.w + c0 with b parallel to e (PSD cylinder case)
    be = float(b @ e)
    c_line = c0
    # lam * s^2 + 2 be * s + c_line = 0 for s = e.w
    roots = quadratic_roots(lam_big, 2.0 * be, c_line, tol)
    for s in roots:
        # line: e . w = s  ->  e0*u + e1*v - s = 0, both orientations clipped
        arcs.extend(_line_to_arcs((float(e[0]), float(e[1]), -s),
                                  scene_halfwidth, halfplanes, source, tol))
    return arcs


def _line_to_arcs(line, scene_halfwidth, halfplanes, source, tol):
    """Clip the line alpha*u + beta*v + gamma = 0 to a big box, then by the
    half-planes, producing segment arcs."""
    alpha, beta, gamma = line
    n = math.hypot(alpha, beta)
    if n == 0.0:
        return []
    alpha, beta, gamma = alpha / n, beta / n, gamma / n
    # point on line closest to origin, direction along line
    px, py = -gamma * alpha, -gamma * beta
    dx, dy = -beta, alpha
    M = scene_halfwidth
    p0 = (px - M * dx, py - M * dy)
    p1 = (px + M * dx, py + M * dy)
    ivals = clip_segment_by_halfplanes(p0, p1, halfplanes, tol)
    out = []
    for (t0, t1) in ivals:
        q0 = vlerp(p0, p1, t0)
        q1 = vlerp(p0, p1, t1)
        if vdist(q0, q1) <= tol.abs:
            continue
        out.append(make_segment_arc(q0, q1, source))
    return out


def plane_triangle_distance(frame, tri):
    """Distance from the (infinite) plane of the frame to a triangle."""
    if frame.dim == 2:
        return 0.0
    n = frame.normal()
    offs = [vdot(vsub(v, frame.origin), n) for v in tri]
    if min(offs) <= 0.0 <= max(offs):
        return 0.0
    return min(abs(o) for o in offs)


def eps_neighborhood_plane_boundary(tri, eps, frame, tol=DEFAULT_TOL):
    """Boundary arcs of the eps-neighborhood of a triangle within a plane.

    Assembles the level set dist(., tri) = eps from the triangle's seven
    features: three vertices (sphere cap -> circle), three edges (cylinder ->
    ellipse / parallel lines) and the face (two offset planes -> lines, d=3
    only).  Each feature's curve is clipped to the region where that feature
    is the nearest one — those regions are intersections of half-spaces, so
    the clipping is exact.
    """
    if eps < 0.0:
        raise GeometryError("eps must be nonnegative")
    check_triangle(tri, tol)
    d = len(tri[0])

    dmin = plane_triangle_distance(frame, tri)
    if cmp(dmin, eps, tol) == Ordering.GREATER:
        return PlaneSlice([], SLICE_EMPTY)

    # Half-width of a box (in plane coords, around the frame origin) certain to
    # contain every boundary point of the neighborhood slice.
    reach = max(vdist(frame.origin, v) for v in tri)
    scene = reach + triangle_scale(tri) + eps + 1.0
    arcs = []

    def hp_in_plane(grad, val0):
        # ambient affine functional (grad . p + val0 <= 0) restricted to plane
        return frame.affine_in_plane(grad, val0)

    # vertex features
    for i in range(3):
        v = tri[i]
        h = frame.offset_of(v)
        rho2 = eps * eps - h * h
        if rho2 <= (tol.abs + tol.rel * eps) ** 2:
            continue
        rho = math.sqrt(rho2)
        cuv = frame.to_plane(v)
        hps = []
        for j in range(3):
            if j == i:
                continue
            w = tri[j]
            grad = vsub(w, v)  # (p - v) . (w - v) <= 0
            hps.append(hp_in_plane(grad, -vdot(v, grad)))
        ivals = clip_ellipse_by_halfplanes(cuv, rho, rho, 0.0, hps, tol)
        for (t0, t1) in ivals:
            arcs.append(make_circle_arc(cuv, rho, t0, t1, ("vertex", i)))

    # edge features
    for i in range(3):
        a = tri[i]
        b = tri[(i + 1) % 3]
        c = tri[(i + 2) % 3]
        axis = vsub(b, a)
        L = vnorm(axis)
        u = vscale(axis, 1.0 / L)
        # q(p) = |p - a|^2 - ((p-a).u)^2 - eps^2, restricted to the plane.
        # p = o + w1*b1 + w2*b2 ; let r = o - a.
        r = vsub(frame.origin, a)
        g1, g2 = frame.b1, frame.b2
        u1, u2 = vdot(g1, u), vdot(g2, u)
        ru = vdot(r, u)
        A2 = ((1.0 - u1 * u1, -u1 * u2), (-u1 * u2, 1.0 - u2 * u2))
        b2v = (vdot(r, g1) - ru * u1, vdot(r, g2) - ru * u2)
        c0 = vdot(r, r) - ru * ru - eps * eps
        # nearest-region: 0 <= (p-a).u*L <= L^2 and (p-a) . perp(c-a) <= 0
        hps = []
        grad = vsub(a, b)  # -(p - a).(b - a) <= 0
        hps.append(hp_in_plane(grad, -vdot(a, grad)))
        grad = vsub(b, a)  # (p - a).(b - a) - L^2 <= 0
        hps.append(hp_in_plane(grad, -vdot(a, grad) - L * L))
        wout = _perp_component(vsub(c, a), u)
        hps.append(hp_in_plane(wout, -vdot(a, wout)))
        arcs.extend(_classify_restricted_quadric(
            frame, A2, b2v, c0, ("edge", i), scene, hps, tol))

    # face feature (two offset planes), d=3 only
    if d == 3:
        e1 = vsub(tri[1], tri[0])
        e2 = vsub(tri[2], tri[0])
        n = vcross3(e1, e2)
        n = vscale(n, 1.0 / vnorm(n))
        alpha, beta, gamma0 = frame.affine_in_plane(n, -vdot(tri[0], n))
        # lambda(u,v) = alpha*u + beta*v + gamma0 is the signed plane offset
        if math.hypot(alpha, beta) > tol.rel:
            # projection-inside-triangle half-planes: barycentric >= 0 of
            # proj(p) = p - lambda(p) * n, expressed via 2D barycentric in the
            # triangle's own frame.
            tf = frame_of_triangle(tri, tol)
            vs2 = [tf.to_plane(v) for v in tri]
            hps_proj = []
            for j in range(3):
                pA = vs2[j]
                pB = vs2[(j + 1) % 3]
                # inside means left of each CCW edge; build as ambient affine
                # functional of p (projection kills the n-component, and the
                # triangle-frame coords of p equal those of proj(p)).
                ex = pB[0] - pA[0]
                ey = pB[1] - pA[1]
                # left-of test: ex*(y - ay) - ey*(x - ax) >= 0 where (x, y) are
                # coords of p in tf; as ambient gradient:
                grad = vsub(vscale(tf.b2, ex), vscale(tf.b1, ey))
                val0 = -(ex * pA[1] - ey * pA[0]) - vdot(tf.origin, grad)
                # want grad.p + val0 >= 0  ->  -(grad.p + val0) <= 0
                # (vs2 is CCW by construction of the triangle frame, so the
                # interior has positive left-of values)
                hps_proj.append(hp_in_plane(vscale(grad, -1.0), -val0))
            for sign in (1.0, -1.0):
                line = (alpha, beta, gamma0 - sign * eps)
                arcs.extend(_line_to_arcs(line, scene, hps_proj,
                                          ("face", 0), tol))

    if not arcs:
        return PlaneSlice([], SLICE_INSIDE)
    return PlaneSlice(arcs, SLICE_BOUNDARY)


# ---------------------------------------------------------------------------
# Conic-conic intersection
# ---------------------------------------------------------------------------

class OverlappingArcsError(GeometryError):
    pass


def _conic_as_y_quadratic(coeffs):
    """Return (a, b(x), c(x)) with conic = a*y^2 + b(x)*y + c(x)."""
    A, B, C, D, E, F = coeffs
    return C, [E, B], [F, D, A]


def _normalize_coeffs(coeffs):
    m = max(abs(c) for c in coeffs)
    if m == 0.0:
        return None
    v = [c / m for c in coeffs]
    # canonical sign: first nonzero positive
    for c in v:
        if abs(c) > 1e-14:
            if c < 0:
                v = [-x for x in v]
            break
    return v


def conics_identical(c1, c2, tol=DEFAULT_TOL):
    n1 = _normalize_coeffs(c1)
    n2 = _normalize_coeffs(c2)
    if n1 is None or n2 is None:
        return False
    return all(abs(a - b) <= 1e-9 for a, b in zip(n1, n2))


def conic_conic_points(c1, c2, xlo, xhi, tol=DEFAULT_TOL, _depth=0):
    """Intersection points of two implicit conics with x in [xlo, xhi].

    Eliminates y via the resultant of the two polynomials viewed as quadratics
    in y (degree <= 4 in x), isolates the x-roots with the scalar kernel, then
    recovers matching y values.  Degenerate lead coefficients fall back to
    substitution; a rotated retry covers near-vertical pathologies.
    """
    if conics_identical(c1, c2, tol):
        raise OverlappingArcsError("overlapping arcs (identical supporting conics)")

    s1 = max(abs(c) for c in c1)
    s2 = max(abs(c) for c in c2)
    if s1 == 0.0 or s2 == 0.0:
        return []
    c1 = [c / s1 for c in c1]
    c2 = [c / s2 for c in c2]

    a1, b1, cc1 = _conic_as_y_quadratic(c1)
    a2, b2, cc2 = _conic_as_y_quadratic(c2)

    def eval_conic(c, x, y):
        A, B, C, D, E, F = c
        return A * x * x + B * x * y + C * y * y + D * x + E * y + F

    pts = []
    tiny = 1e-10

    if abs(a1) > tiny or abs(a2) > tiny:
        # ensure conic 1 is the one with a y^2 term
        if abs(a1) <= tiny:
            a1, b1, cc1, a2, b2, cc2 = a2, b2, cc2, a1, b1, cc1
            c1, c2 = c2, c1
        if abs(a2) > tiny:
            # resultant of two quadratics in y
            t1 = poly_sub(poly_scale(cc2, a1), poly_scale(cc1, a2))
            res = poly_sub(poly_mul(t1, t1),
                           poly_mul(poly_sub(poly_scale(b2, a1), poly_scale(b1, a2)),
                                    poly_sub(poly_mul(b1, cc2), poly_mul(b2, cc1))))
        else:
            # conic 2 linear in y: y = -cc2(x)/b2(x); substitute into conic 1
            # a1*y^2 + b1(x) y + cc1(x) = 0 multiplied by b2(x)^2
            res = poly_add(
                poly_scale(poly_mul(cc2, cc2), a1),
                poly_add(poly_scale(poly_mul(poly_mul(b1, cc2), b2), -1.0),
                         poly_mul(cc1, poly_mul(b2, b2))))
        try:
            xs = real_roots(res, xlo, xhi, tol)
        except DegeneratePolynomialError:
            xs = []
        for x in xs:
            ys = []
            try:
                ys = quadratic_roots(a1, b1[0] + b1[1] * x,
                                     cc1[0] + cc1[1] * x + cc1[2] * x * x, tol)
            except DegeneratePolynomialError:
                ys = []
            for y in ys:
                if abs(eval_conic(c2, x, y)) <= 1e-6 * (1.0 + x * x + y * y):
                    pts.append((x, y))
    else:
        # both linear in y: b_i(x) y + c_i(x) = 0
        num = poly_sub(poly_mul(b1, cc2), poly_mul(b2, cc1))
        try:
            xs = real_roots(num, xlo, xhi, tol)
        except DegeneratePolynomialError:
            xs = []
        for x in xs:
            den1 = b1[0] + b1[1] * x
            den2 = b2[0] + b2[1] * x
            if abs(den1) > tiny:
                y = -(cc1[0] + cc1[1] * x + cc1[2] * x * x) / den1
            elif abs(den2) > tiny:
                y = -(cc2[0] + cc2[1] * x + cc2[2] * x * x) / den2
            else:
                continue
            if (abs(eval_conic(c1, x, y)) <= 1e-6 * (1.0 + x * x + y * y)
                    and abs(eval_conic(c2, x, y)) <= 1e-6 * (1.0 + x * x + y * y)):
                pts.append((x, y))
        # vertical-line components (both conics independent of y at some x)
        if _depth == 0 and not pts:
            rot = 0.3826834323650898  # fixed angle, no special alignment
            cr, sr = math.cos(rot), math.sin(rot)

            def rot_conic(c):
                A, B, C, D, E, F = c
                # substitute x = cr*x' - sr*y', y = sr*x' + cr*y'
                A2 = A * cr * cr + B * cr * sr + C * sr * sr
                B2 = -2.0 * A * cr * sr + B * (cr * cr - sr * sr) + 2.0 * C * sr * cr
                C2 = A * sr * sr - B * sr * cr + C * cr * cr
                D2 = D * cr + E * sr
                E2 = -D * sr + E * cr
                return (A2, B2, C2, D2, E2, F)

            span = max(abs(xlo), abs(xhi), 1.0) * 2.0
            sub = conic_conic_points(rot_conic(tuple(c1)), rot_conic(tuple(c2)),
                                     -span, span, tol, _depth=1)
            for (xp, yp) in sub:
                x = cr * xp - sr * yp
                y = sr * xp + cr * yp
                if xlo - 1e-9 <= x <= xhi + 1e-9:
                    pts.append((x, y))

    # dedup
    out = []
    for p in pts:
        if not any(math.hypot(p[0] - q[0], p[1] - q[1]) <= 100.0 * tol.gap(max(abs(p[0]), abs(p[1])))
                   for q in out):
            out.append(p)
    return out


def arc_pair_intersections(a, b, tol=DEFAULT_TOL):
    """Intersection points of two coplanar arcs, within both parameter ranges."""
    if a.kind == "segment" and b.kind == "segment":
        if conics_identical(a.coeffs, b.coeffs, tol):
            # Same supporting line.  Touching at one point is fine; an overlap
            # of positive length is caller's problem.
            dx = b.p1[0] - b.p0[0]
            dy = b.p1[1] - b.p0[1]
            L2 = dx * dx + dy * dy
            if L2 == 0.0:
                return []
            sa = ((a.p0[0] - b.p0[0]) * dx + (a.p0[1] - b.p0[1]) * dy) / L2
            sb = ((a.p1[0] - b.p0[0]) * dx + (a.p1[1] - b.p0[1]) * dy) / L2
            lo = max(0.0, min(sa, sb))
            hi = min(1.0, max(sa, sb))
            gap = tol.gap(1.0) * 10.0
            if hi - lo > gap:
                raise OverlappingArcsError("overlapping arcs (collinear segments)")
            if abs(hi - lo) <= gap and hi >= lo - gap:
                t = 0.5 * (lo + hi)
                return [(b.p0[0] + t * dx, b.p0[1] + t * dy)]
            return []
    elif a.kind != "segment" and b.kind != "segment":
        if conics_identical(a.coeffs, b.coeffs, tol):
            raise OverlappingArcsError("overlapping arcs (identical supporting conics)")

    ax0, ay0, ax1, ay1 = a.aabb()
    bx0, by0, bx1, by1 = b.aabb()
    pad = 10.0 * tol.gap(max(abs(ax0), abs(ax1), abs(bx0), abs(bx1)))
    xlo = max(ax0, bx0) - pad
    xhi = min(ax1, bx1) + pad
    if xlo > xhi:
        return []
    pts = conic_conic_points(a.coeffs, b.coeffs, xlo, xhi, tol)
    out = []
    for p in pts:
        if a.param_of_point(p, tol) is not None and b.param_of_point(p, tol) is not None:
            out.append(p)
    return out
