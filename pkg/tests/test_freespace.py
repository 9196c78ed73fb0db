import pytest

from frechet_surfaces import (boundary_cell_nonempty, build_graph, cell_nonempty,
                              components)
from .conftest import flat_surface, random_surface_pair, translate_surface
from .oracles import bfs_components


def test_identical_surfaces_large_eps():
    f = flat_surface()
    g = flat_surface()
    graph = build_graph(f, g, 10.0)
    assert len(graph.vertices) == 4  # all 2x2 cells
    assert len(components(graph)) == 1


def test_eps_below_min_distance_is_empty():
    f = flat_surface()
    g = translate_surface(f, (0.0, 0.0, 1.0))
    graph = build_graph(f, g, 0.5)
    assert graph.vertices == []
    assert components(graph) == []


def test_diagonal_cells_at_zero():
    f = flat_surface()
    assert cell_nonempty(f, f, (0, 0), 0.0)
    assert cell_nonempty(f, f, (1, 1), 0.0)
    assert boundary_cell_nonempty(f, f, ("k_edge", (0, 2), 0), 0.0)
    graph = build_graph(f, f, 0.0)
    assert len(components(graph)) == 1


def test_subgraph_monotonicity(rng):
    for _ in range(8):
        f, g = random_surface_pair(rng, tri_range=(4, 6))
        eps1 = float(rng.uniform(0.05, 0.6))
        eps2 = eps1 + float(rng.uniform(0.05, 0.6))
        g1 = build_graph(f, g, eps1)
        g2 = build_graph(f, g, eps2)
        assert set(g1.vertices) <= set(g2.vertices)
        assert set(map(tuple, g1.edges)) <= set(map(tuple, g2.edges))


def test_transposition_symmetry(rng):
    f, g = random_surface_pair(rng, tri_range=(4, 6))
    eps = 0.4
    ab = build_graph(f, g, eps)
    ba = build_graph(g, f, eps)
    assert set(ba.vertices) == {(l, k) for (k, l) in ab.vertices}
    assert set(map(tuple, ba.edges)) == \
        {tuple(sorted(((b, a), (d, c)))) for ((a, b), (c, d)) in ab.edges}


def test_edge_implies_endpoints(rng):
    f, g = random_surface_pair(rng, tri_range=(4, 7))
    graph = build_graph(f, g, 0.5)
    vs = set(graph.vertices)
    for a, b in graph.edges:
        assert a in vs and b in vs


def test_components_match_bfs_oracle(rng):
    for _ in range(6):
        f, g = random_surface_pair(rng, tri_range=(4, 7))
        eps = float(rng.uniform(0.1, 0.8))
        graph = build_graph(f, g, eps)
        mine = sorted(tuple(c) for c in components(graph))
        oracle = sorted(tuple(c) for c in bfs_components(graph.vertices, graph.edges))
        assert mine == oracle


def test_cell_nonempty_vs_distance_oracle(rng):
    from .oracles import sampled_triangle_triangle
    f, g = random_surface_pair(rng, tri_range=(4, 5))
    eps = 0.4
    for k in range(f.n_triangles):
        for l in range(g.n_triangles):
            d = sampled_triangle_triangle(f.image_triangle(k), g.image_triangle(l))
            mine = cell_nonempty(f, g, (k, l), eps)
            if abs(d - eps) > 1e-3:
                assert mine == (d <= eps)


def test_vertex_count_bound(rng):
    f, g = random_surface_pair(rng, tri_range=(4, 8))
    graph = build_graph(f, g, 1e9)
    assert len(graph.vertices) == f.n_triangles * g.n_triangles


def test_adjacency_text_deterministic(rng):
    f, g = random_surface_pair(rng, tri_range=(4, 5))
    a = build_graph(f, g, 0.5).adjacency_text()
    b = build_graph(f, g, 0.5).adjacency_text()
    assert a == b
    assert "vertices" in a
