"""Combinatorial plane embeddings of possibly disconnected graphs.

A connected component is embedded by a rotation system: for every vertex the
cyclic order of its neighbours.  Faces are traced with the rule

    next(u -> v) = (v -> w),  w = successor of u in the rotation at v,

starting each face at the lexicographically smallest unvisited dart, which
fixes face indices.  A one-vertex component has one face with no darts.

Components sit inside faces of other components.  Every component has a
designated outer face and a placement: either top level (its outer face is
part of the unbounded region) or inside face ``f`` of a parent component.
Faces glued together this way form a :class:`CompositeFace`; two vertices can
be joined without a crossing exactly when they share a composite face.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from .errors import NotAddableError
from .graph import Graph

Dart = tuple[int, int]
Face = tuple[Dart, ...]


def _cyclic_normal(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    i = seq.index(min(seq))
    return tuple(seq[i:]) + tuple(seq[:i])


def trace_faces(rotation: Mapping[int, Sequence[int]]) -> tuple[Face, ...]:
    """Trace the faces of one connected component given its rotation system."""
    if len(rotation) == 1:
        (v, nbrs), = rotation.items()
        if not nbrs:
            return ((),)
    pos = {v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in rotation.items()}
    darts = sorted((u, v) for u, nbrs in rotation.items() for v in nbrs)
    seen: set[Dart] = set()
    faces = []
    for start in darts:
        if start in seen:
            continue
        face = []
        d = start
        while d not in seen:
            seen.add(d)
            face.append(d)
            u, v = d
            rv = rotation[v]
            d = (v, rv[(pos[v][u] + 1) % len(rv)])
        if d != start:
            raise ValueError("rotation system is inconsistent (dart orbit not closed)")
        faces.append(tuple(face))
    return tuple(faces)


@dataclass(frozen=True, eq=True)
class ComponentEmbedding:
    vertices: tuple[int, ...]
    rotation: Mapping[int, tuple[int, ...]] = field(compare=False)
    faces: tuple[Face, ...] = field(compare=False)
    _key: tuple = field(repr=False)

    @classmethod
    def from_rotation(cls, rotation: Mapping[int, Sequence[int]]) -> "ComponentEmbedding":
        rot = {v: _cyclic_normal(list(nbrs)) for v, nbrs in rotation.items()}
        for v, nbrs in rot.items():
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"rotation at {v} repeats a neighbour")
            for w in nbrs:
                if w not in rot or v not in rot[w]:
                    raise ValueError(f"rotation is not symmetric on edge ({v}, {w})")
        verts = tuple(sorted(rot))
        key = tuple((v, rot[v]) for v in verts)
        return cls(verts, rot, trace_faces(rot), key)

    @property
    def edge_count(self) -> int:
        return sum(len(n) for n in self.rotation.values()) // 2

    def face_vertices(self, f: int) -> frozenset[int]:
        if not self.faces[f]:
            return frozenset(self.vertices)
        return frozenset(u for u, _ in self.faces[f])

    @cached_property
    def dart_face(self) -> dict[Dart, int]:
        return {d: i for i, face in enumerate(self.faces) for d in face}

    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, nbrs in self.rotation.items() for v in nbrs if u < v)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ComponentEmbedding) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)


def euler_genus(comp: ComponentEmbedding) -> int:
    """Genus of the surface the rotation system lives on; 0 iff plane."""
    deficiency = 2 - len(comp.vertices) + comp.edge_count - len(comp.faces)
    if deficiency % 2:
        raise ValueError("odd Euler deficiency: inconsistent face tracing")
    return deficiency // 2


@dataclass(frozen=True)
class TopLevel:
    outer_face: int = 0


@dataclass(frozen=True)
class Inside:
    parent: int
    parent_face: int
    outer_face: int = 0


Placement = Union[TopLevel, Inside]


@dataclass(frozen=True)
class CompositeFace:
    members: frozenset[tuple[int, int]]
    incident_vertices: frozenset[int]
    isolated: frozenset[int]
    unbounded: bool


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


_ROOT = "root"


@dataclass(frozen=True)
class PlaneGraph:
    underlying: Graph
    components: tuple[ComponentEmbedding, ...]
    placements: tuple[Placement, ...]

    def __post_init__(self) -> None:
        g = self.underlying
        if len(self.placements) != len(self.components):
            raise ValueError("one placement per component required")
        seen: set[int] = set()
        mins = []
        edges: set[tuple[int, int]] = set()
        for comp in self.components:
            if seen.intersection(comp.vertices):
                raise ValueError("components overlap")
            seen.update(comp.vertices)
            mins.append(comp.vertices[0])
            for v, nbrs in comp.rotation.items():
                if set(nbrs) != g.adj[v]:
                    raise ValueError(f"rotation at {v} does not list N({v})")
            edges |= comp.edges()
            if euler_genus(comp) != 0:
                raise ValueError(f"component at {comp.vertices[0]} is not plane (Euler check failed)")
        if seen != set(range(g.n)):
            raise ValueError("components must cover every vertex")
        if edges != g.edges:
            raise ValueError("rotation systems disagree with the underlying edges")
        if mins != sorted(mins):
            raise ValueError("components must be ordered by minimum vertex")
        for i, pl in enumerate(self.placements):
            comp = self.components[i]
            if not 0 <= pl.outer_face < len(comp.faces):
                raise ValueError(f"component {i}: outer face {pl.outer_face} does not exist")
            if isinstance(pl, Inside):
                if not 0 <= pl.parent < len(self.components) or pl.parent == i:
                    raise ValueError(f"component {i}: bad parent {pl.parent}")
                if not 0 <= pl.parent_face < len(self.components[pl.parent].faces):
                    raise ValueError(f"component {i}: parent face {pl.parent_face} does not exist")
        # containment must be a forest
        for i in range(len(self.components)):
            steps, j = 0, i
            while isinstance(self.placements[j], Inside):
                j = self.placements[j].parent
                steps += 1
                if steps > len(self.components):
                    raise ValueError("placements contain a containment cycle")

    # -- construction helpers ---------------------------------------------

    @classmethod
    def assemble(
        cls,
        graph: Graph,
        components: Sequence[ComponentEmbedding],
        placements: Sequence[Placement],
        isolated_placement: Placement | None = None,
    ) -> "PlaneGraph":
        """Build from components in any order; parents index into ``components``.

        Vertices not covered by any component become one-vertex components
        placed with ``isolated_placement`` (top level by default).
        """
        comps = list(components)
        pls = list(placements)
        covered = {v for c in comps for v in c.vertices}
        for v in range(graph.n):
            if v not in covered:
                comps.append(ComponentEmbedding.from_rotation({v: ()}))
                pls.append(isolated_placement or TopLevel(0))
        order = sorted(range(len(comps)), key=lambda i: comps[i].vertices[0])
        new_index = {old: new for new, old in enumerate(order)}
        new_pls = []
        for old in order:
            pl = pls[old]
            if isinstance(pl, Inside):
                pl = Inside(new_index[pl.parent], pl.parent_face, pl.outer_face)
            new_pls.append(pl)
        return cls(graph, tuple(comps[i] for i in order), tuple(new_pls))

    @classmethod
    def isolated_vertices(cls, n: int) -> "PlaneGraph":
        """``n`` isolated vertices, all in the unbounded region."""
        return cls.assemble(Graph(n, frozenset()), [], [])

    # -- queries ------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.underlying.n

    @cached_property
    def component_of(self) -> tuple[int, ...]:
        out = [0] * self.underlying.n
        for i, comp in enumerate(self.components):
            for v in comp.vertices:
                out[v] = i
        return tuple(out)

    @cached_property
    def isolated(self) -> frozenset[int]:
        return self.underlying.isolated()

    @cached_property
    def skeleton_components(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.components) if len(c.vertices) > 1)

    @cached_property
    def composite_faces(self) -> tuple[CompositeFace, ...]:
        uf = _UnionFind()
        for i, comp in enumerate(self.components):
            for f in range(len(comp.faces)):
                uf.find((i, f))
        for i, pl in enumerate(self.placements):
            if isinstance(pl, Inside):
                uf.union((pl.parent, pl.parent_face), (i, pl.outer_face))
            else:
                uf.union(_ROOT, (i, pl.outer_face))
        groups: dict = {}
        for i, comp in enumerate(self.components):
            for f in range(len(comp.faces)):
                groups.setdefault(uf.find((i, f)), []).append((i, f))
        root_class = uf.find(_ROOT) if self.components else None
        out = []
        for rep, members in groups.items():
            verts: set[int] = set()
            iso: set[int] = set()
            for i, f in members:
                comp = self.components[i]
                verts |= comp.face_vertices(f)
                if len(comp.vertices) == 1:
                    iso.add(comp.vertices[0])
            out.append(
                CompositeFace(frozenset(members), frozenset(verts), frozenset(iso), rep == root_class)
            )
        out.sort(key=lambda cf: min(cf.members))
        return tuple(out)

    @cached_property
    def _vertex_faces(self) -> tuple[tuple[int, ...], ...]:
        acc: list[list[int]] = [[] for _ in range(self.underlying.n)]
        for k, cf in enumerate(self.composite_faces):
            for v in cf.incident_vertices:
                acc[v].append(k)
        return tuple(tuple(a) for a in acc)

    def common_face(self, u: int, v: int) -> int | None:
        """Index of the first composite face incident to both ``u`` and ``v``."""
        fv = set(self._vertex_faces[v])
        for k in self._vertex_faces[u]:
            if k in fv:
                return k
        return None

    @cached_property
    def addable_pairs(self) -> frozenset[tuple[int, int]]:
        edges = self.underlying.edges
        out: set[tuple[int, int]] = set()
        for cf in self.composite_faces:
            vs = sorted(cf.incident_vertices)
            for i, u in enumerate(vs):
                for v in vs[i + 1:]:
                    if (u, v) not in edges:
                        out.add((u, v))
        return frozenset(out)

    def face_signature(self) -> frozenset[frozenset[int]]:
        """The family of composite-face vertex sets (what co-faciality depends on)."""
        return frozenset(cf.incident_vertices for cf in self.composite_faces)

    def __repr__(self) -> str:
        return (
            f"PlaneGraph(n={self.n}, m={self.underlying.m}, "
            f"components={len(self.components)}, faces={len(self.composite_faces)})"
        )


def composite_faces(p: PlaneGraph) -> tuple[CompositeFace, ...]:
    return p.composite_faces


def addable_pairs(p: PlaneGraph) -> frozenset[tuple[int, int]]:
    return p.addable_pairs


def one_isolated_per_face(p: PlaneGraph) -> bool:
    return all(len(cf.isolated) <= 1 for cf in p.composite_faces)


# -- edge insertion -------------------------------------------------------------


def _corner_predecessor(comp: ComponentEmbedding, face: int, x: int) -> int | None:
    """Tail of the first dart of ``face`` entering ``x`` (None for an isolated x)."""
    for a, b in comp.faces[face]:
        if b == x:
            return a
    if not comp.faces[face]:
        return None
    raise ValueError(f"vertex {x} is not on face {face}")


def _splice(rot: dict[int, tuple[int, ...]], x: int, after: int | None, new: int) -> None:
    nbrs = list(rot.get(x, ()))
    if after is None:
        nbrs.append(new)
    else:
        nbrs.insert(nbrs.index(after) + 1, new)
    rot[x] = tuple(nbrs)


def insert_edge(p: PlaneGraph, u: int, v: int, face: CompositeFace | int) -> PlaneGraph:
    """Draw ``uv`` inside ``face``; returns the new plane graph.

    New darts are spliced into each endpoint's rotation right after the tail
    of the first dart of the chosen face that enters the endpoint.
    """
    faces = p.composite_faces
    if isinstance(face, int):
        if not 0 <= face < len(faces):
            raise NotAddableError(f"no composite face {face}")
        face = faces[face]
    if u == v or p.underlying.has_edge(u, v) or not {u, v} <= face.incident_vertices:
        raise NotAddableError(f"pair ({u}, {v}) is not addable through the given face")
    if u > v:
        u, v = v, u

    cu, cv = p.component_of[u], p.component_of[v]
    fu = next(f for c, f in face.members if c == cu)
    fv = next(f for c, f in face.members if c == cv)
    comp_u, comp_v = p.components[cu], p.components[cv]

    rot: dict[int, tuple[int, ...]] = {}
    rot.update(comp_u.rotation)
    rot.update(comp_v.rotation)
    _splice(rot, u, _corner_predecessor(comp_u, fu, u), v)
    _splice(rot, v, _corner_predecessor(comp_v, fv, v), u)
    merged = ComponentEmbedding.from_rotation(rot)
    target = merged.dart_face[(u, v)]

    def remap_face(old_comp: int, old_face: int) -> int:
        comp = p.components[old_comp]
        if (old_comp == cu and old_face == fu) or (old_comp == cv and old_face == fv):
            return target
        return merged.dart_face[comp.faces[old_face][0]]

    pl_u, pl_v = p.placements[cu], p.placements[cv]
    if cu == cv:
        new_pl: Placement = _with_outer(pl_u, remap_face(cu, pl_u.outer_face))
    else:
        hole_u = pl_u.outer_face == fu
        hole_v = pl_v.outer_face == fv
        if hole_u and hole_v:
            owner = next(
                ((c, f) for c, f in sorted(face.members) if p.placements[c].outer_face != f),
                None,
            )
            new_pl = TopLevel(target) if owner is None else Inside(owner[0], owner[1], target)
        elif hole_v:
            new_pl = _with_outer(pl_u, remap_face(cu, pl_u.outer_face))
        else:
            new_pl = _with_outer(pl_v, remap_face(cv, pl_v.outer_face))

    # rebuild the component list with the merged component last, then reorder
    keep = [i for i in range(len(p.components)) if i not in (cu, cv)]
    old_to_tmp = {old: k for k, old in enumerate(keep)}
    merged_tmp = len(keep)
    old_to_tmp[cu] = old_to_tmp[cv] = merged_tmp

    def fix(pl: Placement) -> Placement:
        if isinstance(pl, Inside):
            parent_face = pl.parent_face
            if pl.parent in (cu, cv):
                parent_face = remap_face(pl.parent, pl.parent_face)
            return Inside(old_to_tmp[pl.parent], parent_face, pl.outer_face)
        return pl

    comps = [p.components[i] for i in keep] + [merged]
    pls = [fix(p.placements[i]) for i in keep] + [fix(new_pl)]
    return PlaneGraph.assemble(p.underlying.add_edge(u, v), comps, pls)


def _with_outer(pl: Placement, outer: int) -> Placement:
    if isinstance(pl, Inside):
        return Inside(pl.parent, pl.parent_face, outer)
    return TopLevel(outer)


# -- standard rotations -----------------------------------------------------------


def cycle_rotation(cycle: Sequence[int]) -> dict[int, tuple[int, ...]]:
    k = len(cycle)
    return {cycle[i]: (cycle[i - 1], cycle[(i + 1) % k]) for i in range(k)}


def tree_rotation(edges: Iterable[tuple[int, int]]) -> dict[int, tuple[int, ...]]:
    """Any rotation of a forest is plane; neighbours in increasing order."""
    acc: dict[int, list[int]] = {}
    for a, b in edges:
        acc.setdefault(a, []).append(b)
        acc.setdefault(b, []).append(a)
    return {v: tuple(sorted(ns)) for v, ns in acc.items()}


def k4_rotation(a: int, b: int, c: int, d: int) -> dict[int, tuple[int, ...]]:
    return {a: (b, c, d), b: (a, d, c), c: (a, b, d), d: (a, c, b)}


def plane_embedding_of(g: Graph, vertices: Iterable[int] | None = None) -> ComponentEmbedding:
    """A plane rotation system for one connected component of ``g``."""
    from .graph import is_planar

    verts = g.components()[0] if vertices is None else tuple(sorted(vertices))
    sub, labels = g.induced(verts)
    res = is_planar(sub)
    if not res.planar:
        raise ValueError("component is not planar")
    comp = res.witness.components[0]
    return ComponentEmbedding.from_rotation(
        {labels[v]: tuple(labels[w] for w in comp.rotation[v]) for v in comp.vertices}
    )
