import numpy as np
import pytest

from frechet_surfaces import build_graph, component_extensive, triangle_covered
from frechet_surfaces.geometry import dist_triangle_triangle
from .conftest import flat_surface, random_surface_pair, translate_surface
from .oracles import mc_triangle_covered


def test_self_cover_identity():
    f = flat_surface()
    assert triangle_covered(f, f, 0, [0], 0.01)
    assert triangle_covered(f, f, 1, [1], 0.01)


def test_translate_uncovered():
    f = flat_surface()
    g = translate_surface(f, (0.0, 0.0, 1.0))
    assert not triangle_covered(f, g, 0, [0, 1], 0.5)


def test_empty_partners_uncovered():
    f = flat_surface()
    assert not triangle_covered(f, f, 0, [], 1.0)


def test_partial_partner_cover():
    # neighborhood of the same triangle at eps below the far-corner distance
    f = flat_surface()
    g = translate_surface(f, (0.6, 0.0, 0.0))
    # triangle 0 of f is (0,0)-(1,0)-(1,1); partner 0 of g shifted by 0.6:
    # small eps cannot reach f's left corner (0,0)
    assert not triangle_covered(f, g, 0, [0], 0.2)
    assert triangle_covered(f, g, 0, [0, 1], 0.85)


def test_coverage_monotone_in_partners_and_eps(rng):
    for _ in range(6):
        f, g = random_surface_pair(rng, tri_range=(4, 6))
        k = int(rng.integers(0, f.n_triangles))
        all_partners = list(range(g.n_triangles))
        eps1 = float(rng.uniform(0.1, 0.8))
        eps2 = eps1 + float(rng.uniform(0.05, 0.5))
        few = all_partners[: max(1, len(all_partners) // 2)]
        if triangle_covered(f, g, k, few, eps1):
            assert triangle_covered(f, g, k, all_partners, eps1)
        if triangle_covered(f, g, k, all_partners, eps1):
            assert triangle_covered(f, g, k, all_partners, eps2)


def test_coverage_vs_monte_carlo(rng):
    checked = 0
    attempts = 0
    while checked < 60 and attempts < 400:
        attempts += 1
        f, g = random_surface_pair(rng, tri_range=(4, 7))
        k = int(rng.integers(0, f.n_triangles))
        n_partners = int(rng.integers(1, g.n_triangles + 1))
        partners = sorted(rng.choice(g.n_triangles, size=n_partners, replace=False)
                          .tolist())
        eps = float(rng.uniform(0.1, 1.0))
        verdict_mc, margin = mc_triangle_covered(f, g, k, partners, eps, rng=rng)
        if margin <= 1e-6:
            continue
        verdict = triangle_covered(f, g, k, partners, eps)
        assert verdict == verdict_mc, (k, partners, eps)
        checked += 1
    assert checked >= 60


def test_component_extensive_identity():
    f = flat_surface()
    graph = build_graph(f, f, 0.01)
    comps = graph.components()
    assert len(comps) == 1
    assert component_extensive(comps[0], f, f, 0.01)


def test_component_missing_triangle_not_extensive():
    f = flat_surface()
    graph = build_graph(f, f, 0.01)
    comp = [c for c in graph.components()[0] if c[0] != 0]
    assert not component_extensive(comp, f, f, 0.01)


def test_component_extensive_vs_projection_oracle(rng):
    from frechet_surfaces.geometry import dist_points_triangle
    from .oracles import sample_triangle
    done = 0
    tries = 0
    while done < 10 and tries < 60:
        tries += 1
        f, g = random_surface_pair(rng, tri_range=(4, 6))
        eps = float(rng.uniform(0.3, 1.0))
        graph = build_graph(f, g, eps)
        comps = graph.components()
        if not comps:
            continue
        comp = comps[0]
        mine = component_extensive(comp, f, g, eps)
        # Monte-Carlo projection oracle with margin filter
        ok = True
        margin_ok = True
        for (surfA, surfB, idx_of) in ((f, g, 0), (g, f, 1)):
            partners = {}
            for cell in comp:
                partners.setdefault(cell[idx_of], []).append(cell[1 - idx_of])
            for t in range(surfA.n_triangles):
                pts = sample_triangle(surfA.image_triangle(t), 2000, rng=rng)
                ls = partners.get(t, [])
                if not ls:
                    ok = False
                    continue
                best = None
                for l in ls:
                    d = dist_points_triangle(pts, surfB.image_triangle(l))
                    best = d if best is None else np.minimum(best, d)
                if np.abs(best - eps).min() <= 1e-6:
                    margin_ok = False
                    break
                if not (best <= eps).all():
                    ok = False
            if not margin_ok:
                break
        if not margin_ok:
            continue
        assert mine == ok
        done += 1
    assert done >= 10


def test_threads_give_same_answer(rng):
    f, g = random_surface_pair(rng, tri_range=(4, 6))
    eps = 0.6
    graph = build_graph(f, g, eps)
    comps = graph.components()
    if not comps:
        pytest.skip("empty graph for this draw")
    for comp in comps[:2]:
        assert component_extensive(comp, f, g, eps, threads=1) == \
            component_extensive(comp, f, g, eps, threads=4)


def test_svg_dump(tmp_path, rng):
    import xml.etree.ElementTree as ET
    f, g = random_surface_pair(rng, tri_range=(4, 5))
    path = tmp_path / "arr.svg"
    triangle_covered(f, g, 0, list(range(g.n_triangles)), 0.5, svg_path=str(path))
    tree = ET.parse(path)
    assert tree.getroot().tag.endswith("svg")
