"""Weak Fréchet decision and distance computation for surface pairs.

decide() answers "is the weak Fréchet distance <= eps" by looking for a
connected component of the free-space graph whose projections cover both
parameter spaces.  compute() locates the distance by binary search over the
enumerated critical values, refining the final bracket either with type-2c
candidates ("exact" mode) or by plain bisection ("bisect" mode).
"""

from dataclasses import dataclass, field

from .scalar import DEFAULT_TOL
from .coverage import component_extensive
from .criticals import critical_values_C1, critical_values_2c
from .freespace import build_graph
from .geometry import dist_points_mesh
from .surface import (image_diameter_bound, require_valid, sample_image_points)


@dataclass
class WeakFrechetResult:
    distance: float
    witness_eps: float
    witness_component: list
    mode: str
    probes: list = field(default_factory=list)  # (eps, verdict) in probe order

    def as_dict(self):
        return {
            "distance": self.distance,
            "mode": self.mode,
            "witness_eps": self.witness_eps,
            "witness_component": [list(c) for c in self.witness_component],
            "probes": [[e, ok] for (e, ok) in self.probes],
        }


def decide(f, g, eps, tol=DEFAULT_TOL, threads=1, validated=False):
    """Weak Fréchet decision at eps.  Returns (verdict, witness_component);
    the witness is the extensive component (list of cells) or None."""
    if eps < 0.0:
        return False, None
    if not validated:
        require_valid(f, tol)
        require_valid(g, tol)
    graph = build_graph(f, g, eps, tol)
    for comp in graph.components():
        if component_extensive(comp, f, g, eps, tol, threads=threads):
            return True, comp
    return False, None


MODE_EXACT = "exact"
MODE_BISECT = "bisect"


def compute(f, g, mode=MODE_EXACT, tol=DEFAULT_TOL, threads=1):
    """Weak Fréchet distance: min eps with decide(f, g, eps) true.

    "exact" mode walks the enumerated critical values (types 1/2a/2b/2d, then
    type-2c candidates inside the final bracket); "bisect" mode bisects the
    bracket down to tolerance instead of enumerating type-2c values.
    """
    if mode not in (MODE_EXACT, MODE_BISECT):
        raise ValueError(f"unknown mode {mode!r}")
    require_valid(f, tol)
    require_valid(g, tol)

    probes = []
    witnesses = {}

    def probe(eps):
        ok, wit = decide(f, g, eps, tol, threads=threads, validated=True)
        probes.append((eps, ok))
        if ok:
            witnesses[eps] = wit
        return ok

    def probe_candidate(v):
        # enumerated candidates carry up to ~10x-tolerance numerical error;
        # probing with the dedup radius keeps the search from skipping the
        # true flip when a candidate lands marginally below it
        return probe(v + 10.0 * tol.gap(v))

    if probe(0.0):
        return WeakFrechetResult(0.0, 0.0, witnesses[0.0], mode, probes)

    c1 = critical_values_C1(f, g, tol)
    vals = []
    for cv in c1:
        if cv.value <= 10.0 * tol.gap(cv.value):
            continue  # tolerance-zero candidates behave like eps = 0
        if not vals or abs(cv.value - vals[-1]) > 10.0 * tol.gap(cv.value):
            vals.append(cv.value)
    eps_max = image_diameter_bound(f, g) * (1.0 + 1e-9) + tol.abs + 1e-12
    if not vals or vals[-1] < eps_max:
        vals.append(eps_max)

    # binary search: smallest candidate with a true verdict
    lo_i, hi_i = 0, len(vals) - 1
    if not probe_candidate(vals[hi_i]):
        # the diameter bound guarantees this never happens for valid surfaces
        raise ArithmeticError("decision failed at the diameter upper bound")
    while lo_i < hi_i:
        mid = (lo_i + hi_i) // 2
        if probe_candidate(vals[mid]):
            hi_i = mid
        else:
            lo_i = mid + 1
    bracket_hi = vals[hi_i]
    bracket_lo = vals[hi_i - 1] if hi_i > 0 else 0.0

    if mode == MODE_EXACT:
        c2 = critical_values_2c(f, g, bracket_lo, bracket_hi, tol)
        inner = []
        for cv in c2:
            gapv = 10.0 * tol.gap(cv.value)
            if bracket_lo + gapv < cv.value < bracket_hi - gapv:
                if not inner or abs(cv.value - inner[-1]) > gapv:
                    inner.append(cv.value)
        cands = inner + [bracket_hi]
        lo_i, hi_i = 0, len(cands) - 1
        while lo_i < hi_i:
            mid = (lo_i + hi_i) // 2
            if probe_candidate(cands[mid]):
                hi_i = mid
            else:
                lo_i = mid + 1
        distance = cands[hi_i]
    else:
        # the candidate search probed with slack, so the flip may sit just
        # above bracket_hi; widen by the slack and bisect with exact probes
        lo = bracket_lo
        hi = bracket_hi + 10.0 * tol.gap(bracket_hi)
        while hi - lo > max(tol.abs, tol.rel * max(hi, 1.0)):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if probe(mid):
                hi = mid
            else:
                lo = mid
        distance = hi

    witness_eps = distance + 10.0 * tol.gap(distance) if mode == MODE_EXACT \
        else distance
    witness = witnesses.get(witness_eps)
    if witness is None:
        ok, witness = decide(f, g, witness_eps, tol, threads=threads,
                             validated=True)
        probes.append((witness_eps, ok))
    return WeakFrechetResult(distance, witness_eps, witness or [], mode, probes)


def hausdorff_sampled(f, g, density, tol=DEFAULT_TOL):
    """Sampled bracket (lower, upper) of the Hausdorff distance of the images.

    Samples each image at covering radius <= density and measures exact
    point-to-mesh distances, so `lower` never exceeds the true value and the
    1-Lipschitz distance field bounds the excess by the covering radius.
    """
    if density <= 0.0:
        raise ValueError("density must be positive")
    require_valid(f, tol)
    require_valid(g, tol)
    pf = sample_image_points(f, density)
    pg = sample_image_points(g, density)
    d_fg = float(dist_points_mesh(pf, g.image_triangles()).max())
    d_gf = float(dist_points_mesh(pg, f.image_triangles()).max())
    lower = max(d_fg, d_gf)
    return lower, lower + density
