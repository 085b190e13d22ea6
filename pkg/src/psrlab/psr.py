"""Exact and heuristic plane-saturation ratios of small graphs.

``psr_exact`` walks k = 0, 1, 2, ... and stops at the first edge count that
admits a saturated plane subgraph.  At each level it

1. grows the skeletons (graphs without isolated vertices) of the previous
   level by one edge, one pendant edge or one disjoint edge, keeps one graph
   per isomorphism class, and drops those that do not embed in ``g``;
2. pads each skeleton with isolated vertices up to v(g) and works out which
   non-adjacent pairs are "bad", i.e. can be added with the result still
   inside ``g``;
3. enumerates the ways to embed the padded skeleton up to the family of
   composite-face vertex sets: plane rotation classes per component, an
   outer face per component, a containment forest and a distribution of the
   (interchangeable) isolated vertices over the available faces.

A class is saturated exactly when no bad pair shares a composite face, so a
partial class that already puts a bad pair together is pruned.
"""

from __future__ import annotations

import hashlib
import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import LimitExceededError, NotPlanarError, SizeLimitError
from .graph import Graph, is_planar
from .plane import ComponentEmbedding, Inside, PlaneGraph, TopLevel, euler_genus
from .saturation import _ClassCache, saturate_greedily
from .search import are_isomorphic, find_embedding, refinement_invariant

DEFAULT_MAX_NODES = 10**7
DEFAULT_MAX_SECONDS = 300.0
MAX_VERTICES = 10


@dataclass(frozen=True)
class Limits:
    max_nodes: int = DEFAULT_MAX_NODES
    max_seconds: float = DEFAULT_MAX_SECONDS


@dataclass(frozen=True)
class PsrResult:
    value: Fraction
    witness: PlaneGraph
    explored: int = 0
    log: tuple[str, ...] = field(default=(), compare=False)


# -- skeleton generation -----------------------------------------------------------


def _augment(s: Graph, n_max: int) -> Iterator[Graph]:
    k = s.n
    for u in range(k):
        for v in range(u + 1, k):
            if not s.has_edge(u, v):
                yield s.add_edge(u, v)
    if k + 1 <= n_max:
        for u in range(k):
            yield Graph(k + 1, s.edges | {(u, k)})
    if k + 2 <= n_max:
        yield Graph(k + 2, s.edges | {(k, k + 1)})


def next_skeletons(level: Sequence[Graph], g: Graph) -> list[Graph]:
    """Skeletons with one more edge, one per isomorphism class, that embed in ``g``."""
    buckets: dict[tuple, list[Graph]] = {}
    out: list[Graph] = []
    for s in level:
        for cand in _augment(s, g.n):
            key = refinement_invariant(cand)
            bucket = buckets.setdefault(key, [])
            if any(are_isomorphic(cand, other) for other in bucket):
                continue
            bucket.append(cand)
            if find_embedding(cand, g) is not None:
                out.append(cand)
    return out


def skeleton_hash(s: Graph) -> str:
    text = f"{s.n}:" + ",".join(f"{u}-{v}" for u, v in s.edge_list)
    return hashlib.sha1(text.encode()).hexdigest()[:12]


# -- rotation classes --------------------------------------------------------------


def plane_rotations(vertices: Sequence[int], adj) -> Iterator[dict[int, tuple[int, ...]]]:
    """Every genus-0 rotation system of a connected component."""
    choices = []
    for v in vertices:
        nbrs = sorted(adj[v])
        first, rest = nbrs[0], nbrs[1:]
        choices.append([(first,) + p for p in itertools.permutations(rest)])
    for combo in itertools.product(*choices):
        rot = dict(zip(vertices, combo))
        comp = ComponentEmbedding.from_rotation(rot)
        if euler_genus(comp) == 0:
            yield rot


@dataclass(frozen=True)
class RotationClass:
    faces: tuple[frozenset[int], ...]  # face vertex sets in trace order
    rotation: dict = field(compare=False, hash=False)


_rotation_cache: dict[frozenset, list[RotationClass]] = {}


def rotation_classes(s: Graph, vertices: Sequence[int]) -> list[RotationClass]:
    """Plane rotation systems of one component, one per multiset of face vertex sets."""
    key = frozenset(e for e in s.edges if e[0] in vertices)
    if key in _rotation_cache:
        return _rotation_cache[key]
    seen: set[tuple] = set()
    out = []
    for rot in plane_rotations(vertices, s.adj):
        comp = ComponentEmbedding.from_rotation(rot)
        faces = tuple(comp.face_vertices(f) for f in range(len(comp.faces)))
        sig = tuple(sorted(tuple(sorted(f)) for f in faces))
        if sig in seen:
            continue
        seen.add(sig)
        out.append(RotationClass(faces, rot))
    _rotation_cache[key] = out
    return out


# -- exploring one skeleton ------------------------------------------------------------


@dataclass
class SkeletonOutcome:
    skeleton: Graph
    classes: int
    saturated: bool
    witness: PlaneGraph | None = None


class _Deadline:
    def __init__(self, limits: Limits, start: float, nodes: int = 0) -> None:
        self.limits = limits
        self.start = start
        self.nodes = nodes

    def tick(self, count: int = 1) -> None:
        self.nodes += count
        if self.nodes > self.limits.max_nodes:
            raise LimitExceededError(f"node limit {self.limits.max_nodes} exceeded")
        if self.nodes % 256 == 0 and time.monotonic() - self.start > self.limits.max_seconds:
            raise LimitExceededError(f"time limit {self.limits.max_seconds}s exceeded")


def _bad_pairs(s: Graph, g: Graph) -> tuple[list[int], int, bool]:
    """Bitmask of bad partners per skeleton vertex, bad-with-isolated mask, bad isolated pair."""
    n = g.n
    h = s.with_vertex_count(n)
    cache = _ClassCache(g)
    bad = [0] * s.n
    for u in range(s.n):
        for v in range(u + 1, s.n):
            if not s.has_edge(u, v) and cache.embeds(h.add_edge(u, v)):
                bad[u] |= 1 << v
                bad[v] |= 1 << u
    bad_iso = 0
    if n - s.n >= 1:
        for u in range(s.n):
            if cache.embeds(h.add_edge(u, s.n)):
                bad_iso |= 1 << u
    bad_ii = n - s.n >= 2 and cache.embeds(h.add_edge(s.n, s.n + 1))
    return bad, bad_iso, bad_ii


def _mask(vs) -> int:
    out = 0
    for v in vs:
        out |= 1 << v
    return out


def _has_bad(mask: int, bad: list[int]) -> bool:
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        if bad[v] & mask:
            return True
        m ^= low
    return False


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _forests(parents_options: list[list], owner_of_slot) -> Iterator[tuple]:
    """Parent choices (slot per component) without containment cycles."""
    t = len(parents_options)
    for choice in itertools.product(*parents_options):
        ok = True
        for j in range(t):
            seen, c = 0, j
            while choice[c] is not None:
                c = owner_of_slot(choice[c])
                seen += 1
                if seen > t:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield choice


def explore_skeleton(s: Graph, g: Graph, deadline: _Deadline, want_witness: bool = True) -> SkeletonOutcome:
    n = g.n
    n_iso = n - s.n
    bad, bad_iso, bad_ii = _bad_pairs(s, g)
    comps = [c for c in s.components()]
    pruned = 0

    per_comp: list[list[tuple[RotationClass, int]]] = []
    for verts in comps:
        options = []
        for rc in rotation_classes(s, verts):
            if any(_has_bad(_mask(f), bad) for f in rc.faces):
                pruned += 1
                deadline.tick()
                continue
            firsts: dict[frozenset, int] = {}
            for i, f in enumerate(rc.faces):
                firsts.setdefault(f, i)
            options.extend((rc, i) for i in sorted(firsts.values()))
        if not options:
            return SkeletonOutcome(s, max(pruned, 1), False)
        per_comp.append(options)

    seen: set[tuple] = set()
    witness_cfg = None
    for combo in itertools.product(*per_comp):
        # slots: None = unbounded region, (j, f) = non-outer face f of component j
        slots: list = [None]
        for j, (rc, outer) in enumerate(combo):
            slots.extend((j, f) for f in range(len(rc.faces)) if f != outer)
        options = [[sl for sl in slots if sl is None or sl[0] != j] for j in range(len(combo))]
        for parents in _forests(options, lambda sl: sl[0]):
            masks = {sl: (0 if sl is None else _mask(combo[sl[0]][0].faces[sl[1]])) for sl in slots}
            for j, (rc, outer) in enumerate(combo):
                masks[parents[j]] |= _mask(rc.faces[outer])
            if any(_has_bad(masks[sl], bad) for sl in slots):
                pruned += 1
                deadline.tick()
                continue
            for dist in _compositions(n_iso, len(slots)):
                sig = tuple(sorted((masks[sl], cnt) for sl, cnt in zip(slots, dist)))
                if sig in seen:
                    continue
                seen.add(sig)
                deadline.tick()
                ok = all(
                    cnt == 0 or (not masks[sl] & bad_iso and (cnt == 1 or not bad_ii))
                    for sl, cnt in zip(slots, dist)
                )
                if ok and witness_cfg is None:
                    witness_cfg = (combo, slots, parents, dist)
    classes = len(seen) + pruned
    if witness_cfg is None:
        return SkeletonOutcome(s, classes, False)
    witness = _build_witness(s, n, comps, *witness_cfg) if want_witness else None
    return SkeletonOutcome(s, classes, True, witness)


def _build_witness(s: Graph, n: int, comps, combo, slots, parents, dist) -> PlaneGraph:
    embeddings = [ComponentEmbedding.from_rotation(rc.rotation) for rc, _ in combo]
    placements: list = []
    for j, (rc, outer) in enumerate(combo):
        par = parents[j]
        placements.append(TopLevel(outer) if par is None else Inside(par[0], par[1], outer))
    iso = iter(range(s.n, n))
    for sl, cnt in zip(slots, dist):
        for _ in range(cnt):
            v = next(iso)
            embeddings.append(ComponentEmbedding.from_rotation({v: ()}))
            placements.append(TopLevel(0) if sl is None else Inside(sl[0], sl[1], 0))
    return PlaneGraph.assemble(s.with_vertex_count(n), embeddings, placements)


# -- drivers ---------------------------------------------------------------------------


def _threads() -> int:
    raw = os.environ.get("PSRLAB_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _explore_task(args) -> tuple[int, bool, PlaneGraph | None]:
    s, g, limits, start = args
    out = explore_skeleton(s, g, _Deadline(limits, start))
    return out.classes, out.saturated, out.witness


def _check_input(g: Graph, max_vertices: int) -> None:
    if g.n == 0 or g.m == 0:
        raise ValueError("the host graph needs at least one edge")
    if g.isolated():
        raise ValueError("remove isolated vertices from the host first; they do not change the ratio")
    if g.n > max_vertices:
        raise SizeLimitError(f"v(g)={g.n} exceeds the solver bound {max_vertices}")
    if not is_planar(g):
        raise NotPlanarError("host graph is not planar")


def psr_exact(
    g: Graph,
    limits: Limits | None = None,
    threads: int | None = None,
    max_vertices: int = MAX_VERTICES,
) -> PsrResult:
    limits = limits or Limits()
    _check_input(g, max_vertices)
    threads = threads or _threads()
    start = time.monotonic()
    deadline = _Deadline(limits, start)
    log: list[str] = []
    level = [Graph(0, frozenset())]
    try:
        for k in range(g.m + 1):
            if k > 0:
                level = next_skeletons(level, g)
            if threads > 1 and len(level) > 1:
                with ProcessPoolExecutor(max_workers=threads) as pool:
                    results = list(pool.map(_explore_task, [(s, g, limits, start) for s in level]))
                deadline.tick(sum(r[0] for r in results))
            else:
                results = []
                for s in level:
                    out = explore_skeleton(s, g, deadline)
                    results.append((out.classes, out.saturated, out.witness))
            found = None
            for s, (classes, sat, wit) in zip(level, results):
                log.append(f"k={k} skeleton={skeleton_hash(s)} classes={classes} saturated={int(sat)}")
                if sat and found is None:
                    found = wit
            if found is not None:
                return PsrResult(Fraction(k, g.m), found, deadline.nodes, tuple(log))
    except LimitExceededError as exc:
        upper = psr_upper(g, trials=3, seed=0)
        raise LimitExceededError(str(exc), best_upper=upper.value, witness=upper.witness) from None
    raise AssertionError("g itself is always a saturated plane subgraph")  # pragma: no cover


def psr_upper(g: Graph, trials: int = 8, seed: int = 0, start: PlaneGraph | None = None) -> PsrResult:
    """Best ratio over greedy saturations; each trial uses seed + trial index."""
    if not is_planar(g):
        raise NotPlanarError("host graph is not planar")
    base = start if start is not None else PlaneGraph.isolated_vertices(g.n)
    best: PlaneGraph | None = None
    for t in range(max(1, trials)):
        h = saturate_greedily(g, base, seed + t)
        if best is None or h.underlying.m < best.underlying.m:
            best = h
    assert best is not None
    return PsrResult(Fraction(best.underlying.m, g.m), best, max(1, trials))
