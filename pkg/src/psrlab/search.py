"""Subgraph containment, embedding normalization and skeleton classification.

``find_embedding`` is a backtracking search for an injective edge-preserving
map.  Two things keep it usable on the family instances (60-120 vertices,
stars with 14+ leaves around two hubs):

* leaves hanging off a non-leaf vertex are not branched on; once the rest is
  placed they are assigned by bipartite matching, and
* vertices whose static candidate set has at most two members are placed
  first, then components with cycles, then trees.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import InvalidEmbeddingError, UnclassifiableError
from .graph import Graph, KProfile
from .plane import PlaneGraph

_PIN_DOMAIN = 2


@dataclass(frozen=True)
class Embedding:
    """``map[x]`` is the image of vertex ``x`` of the pattern graph."""

    map: tuple[int, ...]

    def __getitem__(self, x: int) -> int:
        return self.map[x]

    def __len__(self) -> int:
        return len(self.map)

    def inverse(self) -> dict[int, int]:
        return {t: x for x, t in enumerate(self.map)}

    def image(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.map[x] for x in vertices)

    def is_valid(self, h: Graph, g: Graph) -> bool:
        if len(self.map) != h.n or len(set(self.map)) != h.n:
            return False
        if any(not 0 <= t < g.n for t in self.map):
            return False
        return all(g.has_edge(self.map[u], self.map[v]) for u, v in h.edges)


def _bits_of(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _dominated(small: Sequence[int], big: Sequence[int]) -> bool:
    """Sorted-descending sequence ``small`` fits under ``big`` entrywise."""
    if len(small) > len(big):
        return False
    return all(a <= b for a, b in zip(small, big))


class _Matcher:
    def __init__(self, h: Graph, g: Graph) -> None:
        self.h, self.g = h, g
        hdeg, gdeg = h.degrees, g.degrees
        self.active = [x for x in range(h.n) if hdeg[x] > 0]

        gsig = [tuple(sorted((gdeg[t] for t in g.adj[t]), reverse=True)) for t in range(g.n)]
        cache: dict[tuple, int] = {}
        self.domain = [0] * h.n
        for x in self.active:
            sig = tuple(sorted((hdeg[y] for y in h.adj[x]), reverse=True))
            if sig not in cache:
                mask = 0
                for t in range(g.n):
                    if gdeg[t] >= len(sig) and _dominated(sig, gsig[t]):
                        mask |= 1 << t
                cache[sig] = mask
            self.domain[x] = cache[sig]

        self.parent_of: dict[int, int] = {}
        for x in self.active:
            if hdeg[x] == 1:
                (p,) = h.adj[x]
                if hdeg[p] >= 2 or x > p:
                    self.parent_of[x] = p
        self.leaves = sorted(self.parent_of)
        self.core = [x for x in self.active if x not in self.parent_of]
        self.order = self._order_core()

    # -- ordering --------------------------------------------------------------

    def _order_core(self) -> list[int]:
        h = self.h
        core = set(self.core)
        size = {x: self.domain[x].bit_count() for x in core}
        ordered: list[int] = []
        placed: set[int] = set()

        def place(x: int) -> None:
            ordered.append(x)
            placed.add(x)

        for x in sorted((x for x in core if size[x] <= _PIN_DOMAIN),
                        key=lambda x: (size[x], -h.degrees[x], x)):
            place(x)

        comps = []
        for comp in h.components():
            members = [x for x in comp if x in core]
            if not members:
                continue
            cyclic = sum(h.degrees[x] for x in comp) // 2 >= len(comp)
            comps.append((not cyclic, -len(members), comp[0], members))
        comps.sort()

        for _, _, _, members in comps:
            rest = [x for x in members if x not in placed]
            while rest:
                def key(x: int) -> tuple:
                    links = sum(1 for y in h.adj[x] if y in placed)
                    return (-links, size[x], -h.degrees[x], x)

                x = min(rest, key=key)
                place(x)
                rest.remove(x)
        return ordered

    # -- search ------------------------------------------------------------------

    def run(self) -> list[int] | None:
        h, g = self.h, self.g
        order = self.order
        pos = {x: i for i, x in enumerate(order)}
        prev_nbrs = [[y for y in h.adj[x] if y in pos and pos[y] < i] for i, x in enumerate(order)]
        later_core_nbrs = [[y for y in h.adj[x] if y in pos and pos[y] > i] for i, x in enumerate(order)]
        gbits = g.bits
        phi = [-1] * h.n
        pend = list(h.degrees)
        assigned_with_pending: list[int] = []
        self.nodes = 0

        def forward_ok(i: int, used: int) -> bool:
            for z in later_core_nbrs[i]:
                cand = self.domain[z] & ~used
                for w in h.adj[z]:
                    if phi[w] >= 0:
                        cand &= gbits[phi[w]]
                        if not cand:
                            return False
            return True

        def dfs(i: int, used: int) -> list[int] | None:
            if i == len(order):
                return self._match_leaves(phi, used)
            x = order[i]
            cand = self.domain[x] & ~used
            for w in prev_nbrs[i]:
                cand &= gbits[phi[w]]
            if not cand:
                return None
            for w in prev_nbrs[i]:
                pend[w] -= 1
            pend[x] -= len(prev_nbrs[i])
            assigned_with_pending.append(x)
            try:
                for t in _bits_of(cand):
                    self.nodes += 1
                    nused = used | (1 << t)
                    if (gbits[t] & ~nused).bit_count() < pend[x]:
                        continue
                    phi[x] = t
                    ok = True
                    for w in assigned_with_pending:
                        if pend[w] > 0 and w != x and (gbits[t] >> phi[w]) & 1:
                            if (gbits[phi[w]] & ~nused).bit_count() < pend[w]:
                                ok = False
                                break
                    if ok and forward_ok(i, nused):
                        res = dfs(i + 1, nused)
                        if res is not None:
                            return res
                    phi[x] = -1
                return None
            finally:
                assigned_with_pending.pop()
                pend[x] += len(prev_nbrs[i])
                for w in prev_nbrs[i]:
                    pend[w] += 1

        return dfs(0, 0)

    def _match_leaves(self, phi: list[int], used: int) -> list[int] | None:
        leaves = self.leaves
        gbits = self.g.bits
        cands = [self.domain[x] & gbits[phi[self.parent_of[x]]] & ~used for x in leaves]
        if not leaves:
            return list(phi)
        if _perfect_matching(cands) is None:
            return None
        # lexicographically first matching, leaf by leaf
        result = list(phi)
        taken = 0
        for k, x in enumerate(leaves):
            for t in _bits_of(cands[k] & ~taken):
                rest = [c & ~(taken | (1 << t)) for c in cands[k + 1:]]
                if _perfect_matching(rest) is not None:
                    result[x] = t
                    taken |= 1 << t
                    break
            else:  # pragma: no cover - guarded by the feasibility test above
                return None
        return result


def _perfect_matching(cands: Sequence[int]) -> list[int] | None:
    """Kuhn's augmenting paths; ``cands[i]`` is a bitset of allowed targets."""
    owner: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for t in _bits_of(cands[i]):
            if t in seen:
                continue
            seen.add(t)
            if t not in owner or augment(owner[t], seen):
                owner[t] = i
                return True
        return False

    for i in sorted(range(len(cands)), key=lambda i: cands[i].bit_count()):
        if not augment(i, set()):
            return None
    out = [0] * len(cands)
    for t, i in owner.items():
        out[i] = t
    return out


def _quick_reject(h: Graph, g: Graph) -> bool:
    if h.n > g.n or h.m > g.m:
        return True
    hd = sorted(h.degrees, reverse=True)
    gd = sorted(g.degrees, reverse=True)
    return not _dominated(hd, gd)


def find_embedding(h: Graph, g: Graph) -> Embedding | None:
    """An injective edge-preserving map of ``h`` into ``g``, or None.

    Deterministic: candidates are tried in increasing order along a fixed
    vertex order, leaves get the lexicographically first matching, and
    isolated vertices of ``h`` take the smallest unused vertices of ``g``.
    """
    if _quick_reject(h, g):
        return None
    matcher = _Matcher(h, g)
    phi = matcher.run()
    if phi is None:
        return None
    used = {t for t in phi if t >= 0}
    free = (t for t in range(g.n) if t not in used)
    for x in range(h.n):
        if phi[x] < 0:
            phi[x] = next(free)
    return Embedding(tuple(phi))


def contains(g: Graph, h: Graph) -> bool:
    return find_embedding(h, g) is not None


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m or sorted(a.degrees) != sorted(b.degrees):
        return False
    return find_embedding(a, b) is not None


def refinement_invariant(g: Graph) -> tuple:
    """Colour-refinement fingerprint; isomorphic graphs get equal values."""
    colors = list(g.degrees)
    classes = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in g.adj[v]))) for v in range(g.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        history = tuple(sorted(Counter(sigs).items()))
        colors = [palette[s] for s in sigs]
        if len(palette) == classes:
            return (g.n, g.m, history)
        classes = len(palette)


# -- embedding normalization -----------------------------------------------------


@dataclass(frozen=True)
class Mode:
    """Which set of matching-edge definitions applies (and the (k1, k2) bound)."""

    general: bool = False
    k1: int = 1
    k2: int = 1

    @classmethod
    def twin_free(cls) -> "Mode":
        return cls(False, 1, 1)

    @classmethod
    def general_k(cls, k1: int, k2: int) -> "Mode":
        return cls(True, k1, k2)

    @classmethod
    def for_profile(cls, profile: KProfile) -> "Mode":
        if profile.k1 <= 1 and profile.k2 <= 1:
            return cls.twin_free()
        return cls.general_k(profile.k1, profile.k2)

    @property
    def label(self) -> str:
        return f"general({self.k1},{self.k2})" if self.general else "twinfree"


def matching_edges(h: PlaneGraph) -> list[tuple[int, int]]:
    out = []
    for i in h.skeleton_components:
        verts = h.components[i].vertices
        if len(verts) == 2:
            out.append((verts[0], verts[1]))
    return out


def check_embedding(h: Graph, g: Graph, phi: Embedding, bijective: bool = True) -> None:
    if bijective and h.n != g.n:
        raise InvalidEmbeddingError(f"v(h)={h.n} differs from v(g)={g.n}")
    if not phi.is_valid(h, g):
        raise InvalidEmbeddingError("map is not an injective edge-preserving embedding")


@dataclass(frozen=True)
class Swap:
    phase: int
    edge: tuple[int, int]
    released: int  # vertex of g leaving the skeleton image
    taken: int  # vertex of g entering it


def normalize_trace(
    g: Graph, h: PlaneGraph, phi: Embedding, k_profile: KProfile
) -> tuple[Embedding, list[Swap]]:
    """Run the two swap phases to a fixpoint and report every swap made."""
    check_embedding(h.underlying, g, phi)
    deg = g.degrees
    iso = sorted(h.isolated)
    mp = list(phi.map)
    inv = {t: x for x, t in enumerate(mp)}
    image_I = {mp[x] for x in iso}
    edges = matching_edges(h)
    swaps: list[Swap] = []
    n1 = sum(1 for d in deg if d == 1)
    n2 = sum(1 for d in deg if d == 2)
    cap = 2 * n1 + n2

    def find(phase: int):
        for e in edges:
            for a_h, b_h in (e, e[::-1]):
                a, b = mp[a_h], mp[b_h]
                s = sorted(w for w in g.adj[b] if w in image_I)
                if len(s) < 2:
                    continue
                if phase == 1:
                    if k_profile.k1 > 1 and deg[a] <= 1:
                        continue
                    c = next((w for w in s if deg[w] == 1), None)
                else:
                    if deg[a] < 3 or any(deg[w] < 2 for w in s):
                        continue
                    c = next((w for w in s if deg[w] == 2), None)
                if c is not None:
                    return e, a, c
        return None

    while True:
        hit = find(1)
        phase = 1
        if hit is None:
            hit, phase = find(2), 2
        if hit is None:
            break
        e, a, c = hit
        xa, xc = inv[a], inv[c]
        mp[xa], mp[xc] = c, a
        inv[c], inv[a] = xa, xc
        image_I.discard(c)
        image_I.add(a)
        swaps.append(Swap(phase, e, a, c))
        if len(swaps) > cap:
            raise RuntimeError("normalization did not terminate; is k_profile correct for g?")
    return Embedding(tuple(mp)), swaps


def normalize_embedding(g: Graph, h: PlaneGraph, phi: Embedding, k_profile: KProfile) -> Embedding:
    return normalize_trace(g, h, phi, k_profile)[0]


# -- skeleton classification ----------------------------------------------------


@dataclass(frozen=True)
class ComponentRecord:
    component: int
    kind: str
    vertices: tuple[int, ...]
    p_vertices: tuple[int, ...] = ()  # pattern vertices whose images go into P
    low_endpoint: int | None = None  # M1/M2: endpoint mapped to the degree 1/2 vertex
    center: int | None = None  # stars
    silent: tuple[int, ...] = ()  # vertices whose images have no neighbour in phi(I)


@dataclass(frozen=True)
class SkeletonClassification:
    r1: int = 0
    r2: int = 0
    r3: int = 0
    y: int = 0
    tree_sizes_A: tuple[int, ...] = ()
    tree_sizes_B: tuple[int, ...] = ()
    tree_sizes_C: tuple[int, ...] = ()
    star_sizes_D: tuple[int, ...] = ()
    star_sizes_E: tuple[int, ...] = ()
    star_sizes_F: tuple[int, ...] = ()
    star_sizes_L: tuple[int, ...] = ()
    m_s5: int = 0
    z_s6: int = 0
    n0: int = 0
    components: tuple[ComponentRecord, ...] = field(default=(), compare=False)
    isolated_in_one_face: bool = True
    isolated_image_independent: bool = True

    def vertex_total(self) -> int:
        return (
            2 * (self.r1 + self.r2 + self.r3 + self.y)
            + sum(self.tree_sizes_A) + sum(self.tree_sizes_B) + sum(self.tree_sizes_C)
            + sum(self.star_sizes_D) + sum(self.star_sizes_E)
            + sum(self.star_sizes_F) + sum(self.star_sizes_L)
            + 3 * (self.m_s5 + self.z_s6)
            + self.n0
        )

    def of_kind(self, *kinds: str) -> list[ComponentRecord]:
        return [c for c in self.components if c.kind in kinds]


def _tree_diameter_at_least_3(h: Graph, verts: Sequence[int]) -> bool:
    # a tree has diameter <= 2 iff it is a star
    return sum(1 for v in verts if h.degrees[v] > 1) > 1


def classify_components(
    g: Graph, h: PlaneGraph, phi: Embedding, mode: Mode | str = "twin-free"
) -> SkeletonClassification:
    if isinstance(mode, str):
        mode = Mode.twin_free() if mode in ("twin-free", "twinfree") else Mode.general_k(1, 1)
    hg = h.underlying
    check_embedding(hg, g, phi)
    deg = g.degrees
    image_I = phi.image(h.isolated)
    S = {x: frozenset(w for w in g.adj[phi[x]] if w in image_I) for x in range(hg.n)}

    counts: dict[str, list] = {k: [] for k in
                               ("M1", "M2", "M3", "M4", "T1", "T2", "T3",
                                "S1", "S2", "S3", "S4", "S5", "S6")}
    n0 = 0
    records = []
    for ci in h.skeleton_components:
        verts = h.components[ci].vertices
        n_edges = h.components[ci].edge_count
        if n_edges >= len(verts):
            n0 += len(verts)
            records.append(ComponentRecord(ci, "CYCLIC", verts))
            continue
        silent = tuple(x for x in verts if not S[x])
        if len(verts) == 2:
            rec = _classify_matching(ci, verts, phi, S, deg, mode)
        elif len(verts) == 3:
            busy = sum(1 for x in verts if S[x])
            center = next(x for x in verts if hg.degrees[x] == 2)
            kind = "S5" if busy <= 1 else "S6"
            rec = ComponentRecord(ci, kind, verts, verts if kind == "S6" else (), center=center)
        elif _tree_diameter_at_least_3(hg, verts):
            rec = _classify_tree(ci, verts, hg, S, silent)
        else:
            rec = _classify_star(ci, verts, hg, S)
        if rec is None:
            raise UnclassifiableError(
                f"skeleton component {ci} {verts} matches no component type", verts
            )
        records.append(_with_silent(rec, silent))
        counts[rec.kind].append(len(verts))

    faces_with_iso = sum(1 for cf in h.composite_faces if cf.isolated)
    independent = not any(g.adj[t] & image_I for t in image_I)
    return SkeletonClassification(
        r1=len(counts["M1"]), r2=len(counts["M2"]), r3=len(counts["M3"]), y=len(counts["M4"]),
        tree_sizes_A=tuple(counts["T1"]), tree_sizes_B=tuple(counts["T2"]),
        tree_sizes_C=tuple(counts["T3"]),
        star_sizes_D=tuple(counts["S1"]), star_sizes_E=tuple(counts["S2"]),
        star_sizes_F=tuple(counts["S3"]), star_sizes_L=tuple(counts["S4"]),
        m_s5=len(counts["S5"]), z_s6=len(counts["S6"]), n0=n0,
        components=tuple(records),
        isolated_in_one_face=faces_with_iso <= 1,
        isolated_image_independent=independent,
    )


def _with_silent(rec: ComponentRecord, silent: tuple[int, ...]) -> ComponentRecord:
    return ComponentRecord(rec.component, rec.kind, rec.vertices, rec.p_vertices,
                           rec.low_endpoint, rec.center, silent)


def _classify_matching(ci, verts, phi, S, deg, mode: Mode) -> ComponentRecord | None:
    x, y = verts
    orientations = ((x, y), (y, x))

    def busy(b: int, min_deg: int) -> bool:
        return len(S[b]) >= 2 and all(deg[w] >= min_deg for w in S[b])

    for a, b in orientations:
        if deg[phi[a]] == 1 and len(S[b]) >= 2 and (mode.general or busy(b, 2)):
            return ComponentRecord(ci, "M1", verts, low_endpoint=a)
    for a, b in orientations:
        if deg[phi[a]] == 2 and busy(b, 2):
            return ComponentRecord(ci, "M2", verts, low_endpoint=a)
    for a, b in orientations:
        if deg[phi[a]] >= 3 and busy(b, 3):
            return ComponentRecord(ci, "M3", verts)
    if len(S[x]) <= 1 and len(S[y]) <= 1:
        return ComponentRecord(ci, "M4", verts, p_vertices=verts)
    return None


def _leaf_pairs(hg: Graph, verts: Sequence[int]) -> list[tuple[int, int]]:
    return [(u, next(iter(hg.adj[u]))) for u in verts if hg.degrees[u] == 1]


def _classify_tree(ci, verts, hg, S, silent) -> ComponentRecord | None:
    if len(silent) >= 2:
        return ComponentRecord(ci, "T1", verts)
    shared = [(u, v) for u, v in _leaf_pairs(hg, verts) if S[u] == S[v] and len(S[u]) == 1]
    if len(silent) == 1 and shared:
        u, v = shared[0]
        return ComponentRecord(ci, "T2", verts, p_vertices=(u, v))
    for i, (u1, v1) in enumerate(shared):
        for u2, v2 in shared[i + 1:]:
            if not {u1, v1} & {u2, v2}:
                return ComponentRecord(ci, "T3", verts, p_vertices=(u1, v1, u2, v2))
    return None


def _classify_star(ci, verts, hg, S) -> ComponentRecord | None:
    center = max(verts, key=lambda v: hg.degrees[v])
    leaves = [v for v in verts if v != center]
    leaf_hits = frozenset().union(*(S[v] for v in leaves))
    if S[center] & leaf_hits:
        return ComponentRecord(ci, "S1", verts, p_vertices=verts, center=center)
    if S[center] and not leaf_hits:
        return ComponentRecord(ci, "S2", verts, center=center)
    if not S[center] and leaf_hits:
        return ComponentRecord(ci, "S3", verts, center=center)
    if not S[center] and not leaf_hits:
        return ComponentRecord(ci, "S4", verts, center=center)
    return None
