"""Combinatorial free-space graph of a surface pair at a given eps.

Vertices are the nonempty cells (pairs of triangles whose images come within
eps); edges join neighboring cells whose shared boundary cell (a parameter
edge of one triangulation times a triangle of the other) is nonempty.  Cells
meeting only at a parameter vertex are not adjacent.
"""

from dataclasses import dataclass, field

from .scalar import DEFAULT_TOL, Ordering, cmp
from .geometry import dist_segment_triangle, dist_triangle_triangle


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # deterministic: smaller key wins
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def within(dist, eps, tol):
    """Closed predicate: dist <= eps, with tolerance-equal counted inside."""
    return cmp(dist, eps, tol) != Ordering.GREATER


def cell_nonempty(f, g, cell, eps, tol=DEFAULT_TOL):
    """True iff the free-space cell of (triangle of f, triangle of g) is
    nonempty, i.e. the image triangles come within eps."""
    k, l = cell
    d = dist_triangle_triangle(f.image_triangle(k), g.image_triangle(l), tol)
    return within(d, eps, tol)


def boundary_cell_nonempty(f, g, boundary, eps, tol=DEFAULT_TOL):
    """Boundary cell nonemptiness.  `boundary` is ("k_edge", edge, l_tri) or
    ("l_edge", k_tri, edge) with edge a vertex-index pair."""
    kind = boundary[0]
    if kind == "k_edge":
        _, edge, l_tri = boundary
        d = dist_segment_triangle(f.image_segment(edge), g.image_triangle(l_tri), tol)
    elif kind == "l_edge":
        _, k_tri, edge = boundary
        d = dist_segment_triangle(g.image_segment(edge), f.image_triangle(k_tri), tol)
    else:
        raise ValueError(f"unknown boundary cell kind {kind!r}")
    return within(d, eps, tol)


@dataclass
class FreeSpaceGraph:
    eps: float
    vertices: list                      # sorted list of (k, l) cells
    edges: list                         # sorted list of ((k,l), (k,l)) pairs
    component_of: dict = field(default_factory=dict)

    def components(self):
        """Connected components as sorted lists of cells, deterministic order:
        larger components first, ties by smallest cell."""
        groups = {}
        for cell in self.vertices:
            groups.setdefault(self.component_of[cell], []).append(cell)
        comps = [sorted(cells) for cells in groups.values()]
        comps.sort(key=lambda cs: (-len(cs), cs[0]))
        return comps

    def adjacency_text(self):
        adj = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        lines = [f"eps {self.eps!r}",
                 f"vertices {len(self.vertices)} edges {len(self.edges)}"]
        for v in self.vertices:
            nb = " ".join(f"{k},{l}" for k, l in sorted(adj[v]))
            lines.append(f"{v[0]},{v[1]}: {nb}")
        return "\n".join(lines) + "\n"


def build_graph(f, g, eps, tol=DEFAULT_TOL):
    """Free-space graph at eps: nonempty cells, adjacency through nonempty
    boundary cells, and union-find component labels."""
    m = f.n_triangles
    n = g.n_triangles
    f_imgs = f.image_triangles()
    g_imgs = g.image_triangles()

    cells = set()
    for k in range(m):
        for l in range(n):
            d = dist_triangle_triangle(f_imgs[k], g_imgs[l], tol)
            if within(d, eps, tol):
                cells.add((k, l))

    vertices = sorted(cells)
    uf = UnionFind(vertices)
    edges = []

    em_f = f.param.edge_map()
    for edge, tris in sorted(em_f.items()):
        if len(tris) != 2:
            continue
        k1, k2 = sorted(tris)
        seg = f.image_segment(edge)
        for l in range(n):
            if (k1, l) in cells and (k2, l) in cells:
                d = dist_segment_triangle(seg, g_imgs[l], tol)
                if within(d, eps, tol):
                    edges.append(((k1, l), (k2, l)))
                    uf.union((k1, l), (k2, l))

    em_g = g.param.edge_map()
    for edge, tris in sorted(em_g.items()):
        if len(tris) != 2:
            continue
        l1, l2 = sorted(tris)
        seg = g.image_segment(edge)
        for k in range(m):
            if (k, l1) in cells and (k, l2) in cells:
                d = dist_segment_triangle(seg, f_imgs[k], tol)
                if within(d, eps, tol):
                    edges.append(((k, l1), (k, l2)))
                    uf.union((k, l1), (k, l2))

    component_of = {v: uf.find(v) for v in vertices}
    return FreeSpaceGraph(eps=eps, vertices=vertices, edges=sorted(edges),
                          component_of=component_of)


def components(graph):
    return graph.components()
