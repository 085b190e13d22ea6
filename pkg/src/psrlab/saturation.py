"""Plane-saturation checking and greedy saturation.

A plane subgraph ``h`` (with v(h) = v(g)) is saturated when no co-facial
non-adjacent pair can be joined with the result still contained in ``g``.
Containment is abstract, so pairs whose augmented graphs are isomorphic share
one search; the augmented graphs are bucketed by a colour-refinement
fingerprint and then compared exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import NotASubgraphError, SizeMismatchError
from .graph import Graph
from .plane import Inside, PlaneGraph, TopLevel, insert_edge
from .search import Embedding, are_isomorphic, find_embedding, refinement_invariant

SATURATED = "SATURATED"
ADDABLE = "ADDABLE"


@dataclass(frozen=True)
class SaturationVerdict:
    status: str
    pair: tuple[int, int] | None = None
    face: int | None = None
    embedding: Embedding | None = None
    pairs_checked: int = field(default=0, compare=False)
    classes: int = field(default=0, compare=False)

    @property
    def saturated(self) -> bool:
        return self.status == SATURATED


class _ClassCache:
    """Containment results keyed by isomorphism class of the tested graph."""

    def __init__(self, g: Graph) -> None:
        self.g = g
        self.buckets: dict[tuple, list[tuple[Graph, bool]]] = {}

    def embeds(self, candidate: Graph) -> bool:
        key = refinement_invariant(candidate)
        bucket = self.buckets.setdefault(key, [])
        for rep, verdict in bucket:
            if are_isomorphic(rep, candidate):
                return verdict
        verdict = find_embedding(candidate, self.g) is not None
        bucket.append((candidate, verdict))
        return verdict

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.buckets.values())


def _check_preconditions(g: Graph, h: PlaneGraph) -> None:
    if h.n != g.n:
        raise SizeMismatchError(
            f"v(h)={h.n} but v(g)={g.n}; pad h with isolated vertices in a named face first"
        )
    if find_embedding(h.underlying, g) is None:
        raise NotASubgraphError("the plane graph's underlying graph does not embed in the host")


def is_plane_saturated(g: Graph, h: PlaneGraph) -> SaturationVerdict:
    _check_preconditions(g, h)
    cache = _ClassCache(g)
    base = h.underlying
    checked = 0
    for u, v in sorted(h.addable_pairs):
        checked += 1
        if cache.embeds(base.add_edge(u, v)):
            emb = find_embedding(base.add_edge(u, v), g)
            return SaturationVerdict(ADDABLE, (u, v), h.common_face(u, v), emb, checked, cache.size)
    return SaturationVerdict(SATURATED, pairs_checked=checked, classes=cache.size)


def pad_isolated(h: PlaneGraph, n: int, face: int) -> PlaneGraph:
    """Add isolated vertices ``h.n .. n-1`` inside composite face ``face`` of ``h``."""
    if n < h.n:
        raise ValueError("cannot pad to fewer vertices")
    if n == h.n:
        return h
    if not h.components:
        placement = TopLevel(0)
    else:
        faces = h.composite_faces
        if not 0 <= face < len(faces):
            raise ValueError(f"no composite face {face}")
        c, f = min(faces[face].members)
        placement = Inside(c, f, 0)
    return PlaneGraph.assemble(
        h.underlying.with_vertex_count(n), list(h.components), list(h.placements), placement
    )


def saturate_greedily(g: Graph, h: PlaneGraph, seed: int) -> PlaneGraph:
    """Insert random addable, still-embeddable edges until none is left."""
    _check_preconditions(g, h)
    rng = random.Random(seed)
    cache = _ClassCache(g)  # containment in g does not change as h grows
    while True:
        pairs = sorted(h.addable_pairs)
        rng.shuffle(pairs)
        for u, v in pairs:
            if cache.embeds(h.underlying.add_edge(u, v)):
                h = insert_edge(h, u, v, h.common_face(u, v))
                break
        else:
            return h
