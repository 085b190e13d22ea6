"""Generators for the extremal host graphs and their saturated witnesses.

Every generator returns the host, a plane witness on the same vertex labels,
and the identity map as the proof embedding.  Vertex numbering of the wheel
families (``general_family`` and ``decorated_double_wheel``):

    0 .. m-1            the rim cycle
    m, m+1              the two hubs
    next 2m             one vertex per triangular face (hub m faces first)
    next 3m*k2          degree-2 vertices: rim edges, then hub m spokes,
                        then hub m+1 spokes, k2 consecutive per edge
    next (m+2)*k1       pendants: rim vertices, then the hubs, k1 per vertex
    last 4              the separate K4
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import MTooSmallError, NTooSmallError
from .graph import Graph
from .plane import (
    ComponentEmbedding,
    Inside,
    PlaneGraph,
    TopLevel,
    cycle_rotation,
    k4_rotation,
    tree_rotation,
)
from .search import Embedding


@dataclass(frozen=True)
class FamilyInstance:
    name: str
    host: Graph
    witness: PlaneGraph
    predicted_host_edges: int
    predicted_witness_edges: int
    predicted_ratio: Fraction
    embedding: Embedding

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.witness.underlying.m, self.host.m)


def _identity(n: int) -> Embedding:
    return Embedding(tuple(range(n)))


def _geometric_rotation(coords: dict[int, tuple[float, float]], edges) -> dict[int, tuple[int, ...]]:
    """Counter-clockwise rotation system of a straight-line drawing."""
    nbrs: dict[int, list[int]] = {v: [] for v in coords}
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)

    def angle(v: int, w: int) -> float:
        (x0, y0), (x1, y1) = coords[v], coords[w]
        return math.atan2(y1 - y0, x1 - x0)

    return {v: tuple(sorted(ns, key=lambda w: angle(v, w))) for v, ns in nbrs.items()}


def _face_with_vertices(comp: ComponentEmbedding, verts: set[int]) -> int:
    for i, face in enumerate(comp.faces):
        if len(face) == len(verts) and {u for u, _ in face} == verts:
            return i
    raise ValueError(f"no face bounded by exactly {sorted(verts)}")


# -- the small examples ----------------------------------------------------------


def example_1_1(n: int, prime: bool = False) -> FamilyInstance:
    """Triangle plus K_{2,n-5}; the prime variant drops one hub and its partner.

    Labels: triangle 0,1,2; hubs 3 (joined to 0) and 4 (joined to 1); the
    n-5 degree-2 vertices are 5..n-1.  The prime variant removes hub 3 and
    shifts everything above it down by one.
    """
    if n <= 5 or (prime and n - 1 < 6):
        raise NTooSmallError(f"n={n} too small" + (" for the prime variant" if prime else ""))
    tri = [(0, 1), (1, 2), (0, 2)]
    if not prime:
        host = Graph.from_edges(n, tri + [(0, 3), (1, 4)] + [(h, x) for h in (3, 4) for x in range(5, n)])
        w_edges = tri + [(0, 3), (1, 4)]
        coords = {0: (0.0, 0.0), 1: (4.0, 0.0), 2: (2.0, 4.0), 3: (1.5, 1.0), 4: (2.5, 1.0)}
        size, predicted = n, Fraction(5, 2 * n - 5)
    else:
        size = n - 1
        host = Graph.from_edges(size, tri + [(1, 3)] + [(3, x) for x in range(4, size)])
        w_edges = tri + [(1, 3)]
        coords = {0: (0.0, 0.0), 1: (4.0, 0.0), 2: (2.0, 4.0), 3: (2.5, 1.0)}
        predicted = Fraction(4, size)
    comp = ComponentEmbedding.from_rotation(_geometric_rotation(coords, w_edges))
    outer = _face_with_vertices(comp, {0, 1, 2})
    witness_graph = Graph.from_edges(size, w_edges)
    # isolated vertices land in the unbounded region, outside the triangle
    witness = PlaneGraph.assemble(witness_graph, [comp], [TopLevel(outer)])
    return FamilyInstance(
        f"example11{'p' if prime else ''}-{n}",
        host,
        witness,
        host.m,
        len(w_edges),
        predicted,
        _identity(size),
    )


def example_1_2(n: int) -> FamilyInstance:
    """Matching of size n, two vertices joined to all of it, and a linked triangle.

    Labels: triangle 0,1,2; 3 and 4 are the two hubs (3-0 and 4-1 are
    edges); matching edges are (5+2i, 6+2i).  The witness keeps the 7-vertex
    core with the triangle bounding the outer face and leaves the other
    matching edges outside it.
    """
    if n < 1:
        raise NTooSmallError(f"n={n} must be at least 1")
    size = 2 * n + 5
    tri = [(0, 1), (1, 2), (0, 2)]
    matching = [(5 + 2 * i, 6 + 2 * i) for i in range(n)]
    host_edges = tri + [(0, 3), (1, 4)] + matching
    host_edges += [(h, x) for h in (3, 4) for e in matching for x in e]
    host = Graph.from_edges(size, host_edges)

    core = tri + [(0, 3), (1, 4), (5, 6), (3, 5), (3, 6), (4, 5), (4, 6)]
    coords = {
        0: (7.3, 1.1), 1: (4.5, 1.1), 2: (6.0, 3.4),
        3: (6.5, 1.75), 4: (5.5, 1.75), 5: (6.0, 1.5), 6: (6.0, 2.0),
    }
    comp = ComponentEmbedding.from_rotation(_geometric_rotation(coords, core))
    outer = _face_with_vertices(comp, {0, 1, 2})
    comps = [comp]
    pls = [TopLevel(outer)]
    for a, b in matching[1:]:
        comps.append(ComponentEmbedding.from_rotation(tree_rotation([(a, b)])))
        pls.append(TopLevel(0))
    w_edges = core + matching[1:]
    witness = PlaneGraph.assemble(Graph.from_edges(size, w_edges), comps, pls)
    return FamilyInstance(
        f"example12-{n}", host, witness, 5 * n + 5, n + 9, Fraction(n + 9, 5 * n + 5), _identity(size)
    )


# -- wheel families ----------------------------------------------------------------


@dataclass(frozen=True)
class WheelLayout:
    m: int
    k1: int
    k2: int

    @property
    def hubs(self) -> tuple[int, int]:
        return (self.m, self.m + 1)

    @property
    def face_start(self) -> int:
        return self.m + 2

    @property
    def edge_start(self) -> int:
        return self.face_start + 2 * self.m

    @property
    def pendant_start(self) -> int:
        return self.edge_start + 3 * self.m * self.k2

    @property
    def k4_start(self) -> int:
        return self.pendant_start + (self.m + 2) * self.k1

    @property
    def n(self) -> int:
        return self.k4_start + 4

    def skeleton_edges(self) -> list[tuple[int, int]]:
        """Edges of the double wheel: rim edges, then spokes of each hub."""
        m = self.m
        rim = [(i, (i + 1) % m) for i in range(m)]
        spokes = [(i, h) for h in self.hubs for i in range(m)]
        return rim + spokes

    def edges(self) -> list[tuple[int, int]]:
        m, k1, k2 = self.m, self.k1, self.k2
        out = self.skeleton_edges()
        f = self.face_start
        for h in self.hubs:
            for i in range(m):
                out += [(f, h), (f, i), (f, (i + 1) % m)]
                f += 1
        x = self.edge_start
        for a, b in self.skeleton_edges():
            for _ in range(k2):
                out += [(x, a), (x, b)]
                x += 1
        x = self.pendant_start
        for v in range(m + 2):
            for _ in range(k1):
                out.append((x, v))
                x += 1
        q = self.k4_start
        out += [(q + i, q + j) for i in range(4) for j in range(i + 1, 4)]
        return out


def _wheel_instance(name: str, m: int, k1: int, k2: int) -> FamilyInstance:
    lay = WheelLayout(m, k1, k2)
    host = Graph.from_edges(lay.n, lay.edges())
    leaves_per_star = k1 + 4 * k2 + 9

    cyc = list(range(m))
    q = lay.k4_start
    k4 = ComponentEmbedding.from_rotation(k4_rotation(q, q + 1, q + 2, q + 3))
    k4_index = 0
    comps = [k4, ComponentEmbedding.from_rotation(cycle_rotation(cyc))]
    pls = [TopLevel(3), Inside(k4_index, 0, 0)]
    w_edges = [(i, (i + 1) % m) for i in range(m)]
    for h in lay.hubs:
        leaves = sorted(w for w in host.adj[h] if w >= m + 2)[:leaves_per_star]
        star = [(h, w) for w in leaves]
        comps.append(ComponentEmbedding.from_rotation(tree_rotation(star)))
        pls.append(Inside(k4_index, 1, 0))
        w_edges += star
    w_edges += [(q + i, q + j) for i in range(4) for j in range(i + 1, 4)]
    witness = PlaneGraph.assemble(
        Graph.from_edges(lay.n, w_edges), comps, pls, Inside(k4_index, 2, 0)
    )
    pred_host = (9 + k1 + 6 * k2) * m + (2 * k1 + 6)
    pred_wit = m + 2 * k1 + 8 * k2 + 24
    return FamilyInstance(
        name, host, witness, pred_host, pred_wit, Fraction(pred_wit, pred_host), _identity(lay.n)
    )


def decorated_double_wheel(m: int) -> FamilyInstance:
    """Twin-free host with 7m+8 vertices and 16m+8 edges (the k1 = k2 = 1 wheel)."""
    if m < 7:
        raise MTooSmallError(f"m={m} must be at least 7")
    return _wheel_instance(f"ddw-{m}", m, 1, 1)


def general_family(m: int, k1: int, k2: int) -> FamilyInstance:
    if m < 9:
        raise MTooSmallError(f"m={m} must be at least 9")
    if k1 < 0 or k2 < 0:
        raise ValueError("k1 and k2 must be non-negative")
    return _wheel_instance(f"general-{m}-{k1}-{k2}", m, k1, k2)
