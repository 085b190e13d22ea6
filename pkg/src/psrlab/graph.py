"""Simple undirected graphs on dense 0-based vertex indices.

Graphs are immutable values.  Adjacency is cached both as frozensets and as
Python-int bitsets (bit ``t`` of ``g.bits[v]`` is set iff ``vt`` is an edge);
the search code leans on the bitsets for pruning.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Sequence

if TYPE_CHECKING:
    from .plane import PlaneGraph

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) is not normalized or out of range")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        seen: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            e = _norm(int(u), int(v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            if not (0 <= e[0] and e[1] < n):
                raise ValueError(f"edge {e} out of range for {n} vertices")
            seen.add(e)
        return cls(n, frozenset(seen))

    # -- basic queries -----------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def bits(self) -> tuple[int, ...]:
        out = [0] * self.n
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.adj)

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def isolated(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if not self.adj[v])

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    # -- derived graphs ----------------------------------------------------

    def add_edge(self, u: int, v: int) -> "Graph":
        e = _norm(u, v)
        if u == v or e in self.edges:
            raise ValueError(f"cannot add edge {e}")
        return Graph(self.n, self.edges | {e})

    def remove_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        drop = {_norm(u, v) for u, v in edges}
        return Graph(self.n, self.edges - drop)

    def with_vertex_count(self, n: int) -> "Graph":
        """Same edges, padded with isolated vertices up to ``n``."""
        if n < self.n:
            raise ValueError("cannot shrink a graph")
        return Graph(n, self.edges)

    def relabel(self, mapping: Mapping[int, int] | Sequence[int], n: int | None = None) -> "Graph":
        n = self.n if n is None else n
        return Graph.from_edges(n, ((mapping[u], mapping[v]) for u, v in self.edges))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph relabeled to 0..k-1; returns it with the old labels."""
        keep = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(keep)}
        sub = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(keep), sub), keep

    def remove_vertices(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def components(self) -> list[tuple[int, ...]]:
        """Connected components (isolated vertices included), sorted by minimum vertex."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
                        comp.append(y)
            out.append(tuple(sorted(comp)))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.n))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- constructors -------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


def from_networkx(nxg) -> Graph:
    nodes = sorted(nxg.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), ((index[u], index[v]) for u, v in nxg.edges()))


# -- twins and the (k1, k2) profile ------------------------------------------


@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[frozenset[int], ...]

    def class_of(self, v: int) -> frozenset[int]:
        for c in self.classes:
            if v in c:
                return c
        raise KeyError(v)

    def max_class_size(self) -> int:
        return max((len(c) for c in self.classes), default=0)


@dataclass(frozen=True)
class KProfile:
    k1: int
    k2: int

    @property
    def twin_free_low_degree(self) -> bool:
        return self.k1 <= 1 and self.k2 <= 1


def twins_partition(g: Graph) -> TwinPartition:
    """Classes of vertices with equal open neighborhoods."""
    groups: dict[frozenset[int], list[int]] = defaultdict(list)
    for v in range(g.n):
        groups[g.adj[v]].append(v)
    classes = sorted((frozenset(vs) for vs in groups.values()), key=min)
    return TwinPartition(tuple(classes))


def classify_k(g: Graph) -> KProfile:
    counts = {1: defaultdict(int), 2: defaultdict(int)}
    for v in range(g.n):
        d = g.degrees[v]
        if d in counts:
            counts[d][g.adj[v]] += 1
    k1 = max(counts[1].values(), default=0)
    k2 = max(counts[2].values(), default=0)
    return KProfile(k1, k2)


# -- planarity ------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    witness: "PlaneGraph | None" = None

    def __bool__(self) -> bool:
        return self.planar


def is_planar(g: Graph) -> PlanarityResult:
    """Planarity test; on success the witness embeds every component with genus 0."""
    import networkx as nx

    from .plane import ComponentEmbedding, PlaneGraph, TopLevel

    if g.n >= 3 and g.m > 3 * g.n - 6:
        return PlanarityResult(False)
    ok, emb = nx.check_planarity(g.to_networkx())
    if not ok:
        return PlanarityResult(False)
    components = []
    for comp in g.components():
        rotation = {v: tuple(emb.neighbors_cw_order(v)) for v in comp}
        components.append(ComponentEmbedding.from_rotation(rotation))
    placements = tuple(TopLevel(0) for _ in components)
    return PlanarityResult(True, PlaneGraph(g, tuple(components), placements))
