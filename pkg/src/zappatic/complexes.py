"""Dual graphs / CW-complexes of plane configurations and their homology.

The dual complex has one vertex per plane and one edge per double line.
Cycle points (E_n) attach honest 2-cells; chain points (R_n) only contribute
an open face (recorded, drawn dashed, but never part of the boundary map);
fork points (S_n) contribute an angle.  Homology is computed over Q from the
ranks of the two integer boundary matrices.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from zappatic import linalg
from zappatic.errors import InternalCheckError, RangeError
from zappatic.arrangement import Arrangement, IncidenceData, ZappaticReport


@dataclass(frozen=True)
class DualGraph:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]  # unordered pairs; index = edge id
    two_cells: tuple[tuple[int, ...], ...] = ()  # edge ids along each cycle
    open_faces: tuple[tuple[int, ...], ...] = ()  # edge ids along each chain
    angles: tuple[tuple[int, ...], ...] = ()  # edge ids of each star

    def __post_init__(self):
        e = len(self.edges)
        for a, b in self.edges:
            if not (0 <= a < self.num_vertices and 0 <= b < self.num_vertices):
                raise RangeError("edge endpoint out of range")
        for cell in self.two_cells + self.open_faces + self.angles:
            for k in cell:
                if not (0 <= k < e):
                    raise RangeError("face references a missing edge")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_faces(self) -> int:
        return len(self.two_cells)

    def face_counts(self) -> dict[int, int]:
        return dict(Counter(len(c) for c in self.two_cells))

    def open_face_counts(self) -> dict[int, int]:
        # an R_n point has n-1 real edges
        return dict(Counter(len(c) + 1 for c in self.open_faces))

    def angle_counts(self) -> dict[int, int]:
        return dict(Counter(len(c) + 1 for c in self.angles))


@dataclass(frozen=True)
class HomologyReport:
    h0: int
    h1: int
    h2: int
    euler: int

    def __post_init__(self):
        if self.euler != self.h0 - self.h1 + self.h2:
            raise InternalCheckError("Euler characteristic mismatch")

    def as_tuple(self):
        return (self.h0, self.h1, self.h2)


def _cycle_boundary(graph: DualGraph, cell):
    """Signed incidence of one 2-cell: walk the edge cycle and orient."""
    edges = graph.edges
    if len(cell) < 2:
        raise RangeError("a 2-cell needs at least two edges")
    first, last = edges[cell[0]], edges[cell[-1]]
    shared = set(first) & set(last)
    if not shared:
        raise RangeError("2-cell boundary is not a closed walk")
    at = min(shared)
    signs = []
    for k in cell:
        a, b = edges[k]
        if at == a:
            signs.append(1)
            at = b
        elif at == b:
            signs.append(-1)
            at = a
        else:
            raise RangeError("2-cell boundary is not a closed walk")
    return signs


def homology(graph: DualGraph) -> HomologyReport:
    """Ranks of H_0, H_1, H_2 over the rationals."""
    v, e, f = graph.num_vertices, graph.num_edges, graph.num_faces
    if e:
        d1 = [[0] * e for _ in range(v)]
        for k, (a, b) in enumerate(graph.edges):
            if a != b:
                d1[a][k] -= 1
                d1[b][k] += 1
        r1 = linalg.rank(d1)
    else:
        r1 = 0
    if f:
        d2 = [[0] * f for _ in range(e)]
        for c, cell in enumerate(graph.two_cells):
            for k, s in zip(cell, _cycle_boundary(graph, cell)):
                d2[k][c] += s
        r2 = linalg.rank(d2)
    else:
        r2 = 0
    h0 = v - r1
    h1 = e - r1 - r2
    h2 = f - r2
    return HomologyReport(h0, h1, h2, v - e + f)


def build_dual_graph(
    arr: Arrangement, inc: IncidenceData, report: ZappaticReport
) -> DualGraph:
    """Dual complex of a Zappatic arrangement."""
    if not report.is_zappatic:
        raise RangeError("arrangement is not Zappatic")
    edge_ids = {}
    edges = []
    for i, j, _line in inc.double_lines:
        edge_ids[(i, j)] = len(edges)
        edges.append((i, j))

    def eid(a, b):
        return edge_ids[(min(a, b), max(a, b))]

    two_cells = []
    open_faces = []
    angles = []
    for t in report.types:
        order = t.vertex_order
        if t.kind == "E":
            cyc = [eid(order[k], order[(k + 1) % t.n]) for k in range(t.n)]
            two_cells.append(tuple(cyc))
        elif t.kind == "R":
            open_faces.append(
                tuple(eid(order[k], order[k + 1]) for k in range(t.n - 1))
            )
        elif t.kind == "S":
            center = order[0]
            angles.append(tuple(eid(center, leaf) for leaf in order[1:]))
    return DualGraph(
        num_vertices=len(arr),
        edges=tuple(edges),
        two_cells=tuple(two_cells),
        open_faces=tuple(open_faces),
        angles=tuple(angles),
    )


def build_torus_complex(n: int, m: int) -> DualGraph:
    """Dual complex of the degree-2nm planar degeneration of an abelian surface.

    Each cell of an n-by-m torus grid of quadrics splits into two triangles
    (vertices A and B); the complex has 2nm vertices, 3nm edges and nm
    hexagonal 2-cells, one per E_6 point, tiling a torus.
    """
    if n < 2 or m < 2:
        raise RangeError("torus complex requires n >= 2 and m >= 2")

    def A(i, j):
        return 2 * ((i % n) * m + (j % m))

    def B(i, j):
        return A(i, j) + 1

    edges = []
    eid = {}

    def add_edge(u, v, key):
        eid[key] = len(edges)
        edges.append((min(u, v), max(u, v)))

    for i in range(n):
        for j in range(m):
            add_edge(A(i, j), B(i, j), ("d", i, j))  # diagonal of cell (i,j)
            add_edge(A(i, j), B(i, (j - 1) % m), ("b", i, j))  # bottom edge
            add_edge(B(i, j), A((i - 1) % n, j), ("l", i, j))  # left edge

    two_cells = []
    for i in range(n):
        for j in range(m):
            # hexagon around grid vertex (i, j)
            cyc = (
                eid[("d", i, j)],
                eid[("l", i, j)],
                eid[("b", (i - 1) % n, j)],
                eid[("d", (i - 1) % n, (j - 1) % m)],
                eid[("l", i, (j - 1) % m)],
                eid[("b", i, j)],
            )
            two_cells.append(cyc)

    g = DualGraph(
        num_vertices=2 * n * m, edges=tuple(edges), two_cells=tuple(two_cells)
    )
    if g.num_vertices - g.num_edges + g.num_faces != 0:
        raise InternalCheckError("torus complex Euler characteristic is not 0")
    return g


def to_dot(graph: DualGraph) -> str:
    """DOT rendering: labeled edges, dashed open-face closures, face comments."""
    lines = ["graph zappatic {"]
    for v in range(graph.num_vertices):
        lines.append(f"  v{v};")
    for a, b in graph.edges:
        lines.append(f'  v{a} -- v{b} [label="C_{{{a},{b}}}"];')
    for face in graph.open_faces:
        ends = _open_face_ends(graph, face)
        if ends is not None:
            lines.append(f"  v{ends[0]} -- v{ends[1]} [style=dashed];")
    for cell in graph.two_cells:
        verts = _cycle_vertices(graph, cell)
        lines.append("  /* face: " + " ".join(f"v{x}" for x in verts) + " */")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _open_face_ends(graph: DualGraph, face):
    """Extremal vertices of an open face's edge path."""
    cnt = Counter()
    for k in face:
        a, b = graph.edges[k]
        cnt[a] += 1
        cnt[b] += 1
    ends = sorted(v for v, c in cnt.items() if c == 1)
    return (ends[0], ends[1]) if len(ends) == 2 else None


def _cycle_vertices(graph: DualGraph, cell):
    signs = _cycle_boundary(graph, cell)
    verts = []
    for k, s in zip(cell, signs):
        a, b = graph.edges[k]
        verts.append(a if s == 1 else b)
    return verts
