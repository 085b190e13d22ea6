"""Instance-level audit of the edge-counting argument behind the 1/16 bound.

Given a host ``g``, a plane subgraph ``h`` and a normalized embedding ``phi``
the audit classifies the skeleton, builds the vertex sets used by the count
(P, the stripped edges, the J_i layers, R and the auxiliary graphs), and
checks every counting inequality with exact integers.  Nothing here proves
anything in general; a failing check on a saturated instance is a finding.

The per-expression functions below take a classification and a :class:`Mode`
and return integers.  The strategy totals are plain sums of them, and
``ratio_floor_check`` gets its term-by-term comparison from the same
functions, evaluated one component at a time.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

from .graph import Graph, classify_k, is_planar
from .plane import PlaneGraph
from .search import (
    ComponentRecord,
    Embedding,
    Mode,
    SkeletonClassification,
    check_embedding,
    classify_components,
)

PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "n/a"


# -- bound expressions ---------------------------------------------------------------


def _base(c: SkeletonClassification) -> int:
    """Skeleton vertices whose images may carry a J1 neighbour."""
    return (
        c.n0
        + sum(a - 2 for a in c.tree_sizes_A)
        + sum(b - 3 for b in c.tree_sizes_B)
        + sum(x - 4 for x in c.tree_sizes_C)
        + len(c.star_sizes_E)
        + sum(f - 1 for f in c.star_sizes_F)
        + c.m_s5
    )


def _tree_star_vertices(c: SkeletonClassification) -> int:
    return (
        c.n0 + sum(c.tree_sizes_A) + sum(c.tree_sizes_B) + sum(c.tree_sizes_C)
        + sum(c.star_sizes_D) + sum(c.star_sizes_E) + sum(c.star_sizes_F) + sum(c.star_sizes_L)
    )


def h_lower_bound(c: SkeletonClassification) -> int:
    """Minimum edge count of a skeleton with this classification."""
    sizes = (c.tree_sizes_A + c.tree_sizes_B + c.tree_sizes_C
             + c.star_sizes_D + c.star_sizes_E + c.star_sizes_F + c.star_sizes_L)
    return c.n0 + sum(s - 1 for s in sizes) + 2 * (c.m_s5 + c.z_s6) + (c.r1 + c.r2 + c.r3 + c.y)


def skeleton_edge_bound(c: SkeletonClassification, mode: Mode) -> int:
    """Strict bound on edges of g among skeleton images (planarity, minus low-degree ends)."""
    return (3 * _tree_star_vertices(c) + 3 * (2 * (c.r1 + c.r2 + c.r3 + c.y) + 3 * (c.m_s5 + c.z_s6))
            - 2 * c.r1 - c.r2)


def skeleton_edge_bound_without_r(c: SkeletonClassification, mode: Mode) -> int:
    """Bound on edges among skeleton images once the degree-2 M2 ends are set aside."""
    verts = _tree_star_vertices(c) + 2 * c.r1 + c.r2 + 2 * c.r3 + 2 * c.y + 3 * (c.m_s5 + c.z_s6)
    return 3 * verts - 2 * c.r1


def p_adjacent_vertex_bound(c: SkeletonClassification) -> int:
    return len(c.tree_sizes_B) + 2 * len(c.tree_sizes_C) + len(c.star_sizes_D) + c.y + c.z_s6


def p_edge_bound(c: SkeletonClassification) -> int:
    return 2 * len(c.tree_sizes_B) + 4 * len(c.tree_sizes_C) + sum(c.star_sizes_D) + 2 * c.y + 3 * c.z_s6


def stripped_edge_bound(c: SkeletonClassification, mode: Mode) -> int:
    return p_edge_bound(c) + 2 * p_adjacent_vertex_bound(c)


def j1_bound(c: SkeletonClassification, mode: Mode) -> int:
    if mode.general:
        return mode.k1 * _base(c) + (mode.k1 - 1) * c.r1
    return _base(c)


def j2_aux_vertex_bound(c: SkeletonClassification) -> int:
    return _base(c) + c.r1 + c.r2


def j2_edge_bound(c: SkeletonClassification, mode: Mode) -> int:
    factor = 6 * mode.k2 if mode.general else 6
    return factor * j2_aux_vertex_bound(c)


def j3_edge_bound(c: SkeletonClassification, mode: Mode) -> int:
    core = (
        c.n0
        + sum(a - 2 for a in c.tree_sizes_A)
        + sum(b - 3 for b in c.tree_sizes_B)
        + sum(x - 4 for x in c.tree_sizes_C)
        + len(c.star_sizes_E)
        + c.r1 + c.r2 + c.r3
        + c.m_s5
    )
    return 6 * core + 3 * sum(f + 1 for f in c.star_sizes_F)


def jr_vertex_bound(c: SkeletonClassification) -> int:
    return (
        c.n0
        + sum(a - 2 for a in c.tree_sizes_A)
        + sum(b - 2 for b in c.tree_sizes_B)
        + sum(x - 2 for x in c.tree_sizes_C)
        + sum(s - 1 for s in c.star_sizes_D + c.star_sizes_E + c.star_sizes_F + c.star_sizes_L)
        + c.r1 + c.r2 + c.r3 + c.y
        + 2 * (c.m_s5 + c.z_s6)
    )


def jr_edge_bound(c: SkeletonClassification, mode: Mode) -> int:
    factor = 6 * mode.k2 if mode.general else 6
    return factor * jr_vertex_bound(c)


def strategy_one_total(c: SkeletonClassification, mode: Mode) -> int:
    return (skeleton_edge_bound(c, mode) + stripped_edge_bound(c, mode) + j1_bound(c, mode)
            + j2_edge_bound(c, mode) + j3_edge_bound(c, mode))


def strategy_two_total(c: SkeletonClassification, mode: Mode) -> int:
    return (skeleton_edge_bound_without_r(c, mode) + stripped_edge_bound(c, mode) + j1_bound(c, mode)
            + j3_edge_bound(c, mode) + jr_edge_bound(c, mode))


STRATEGIES: dict[int, Callable[[SkeletonClassification, Mode], int]] = {
    1: strategy_one_total,
    2: strategy_two_total,
}


# -- instance structure ----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # a, b, c, d
    detail: str
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class Check:
    id: str
    status: str
    lhs: int
    rhs: int
    relation: str

    @property
    def margin(self) -> int:
        """Slack of the inequality; negative exactly when an ordering check fails."""
        return self.lhs - self.rhs if self.relation == ">=" else self.rhs - self.lhs


@dataclass(frozen=True)
class AuditReport:
    mode: Mode
    classification: SkeletonClassification
    e_g: int
    e_h: int
    P: frozenset[int]
    R: frozenset[int]
    J_sizes: tuple[int, ...]  # J_sizes[i-1] = |J_i|, i = 1..q
    stripped_edges: int
    terms: dict[str, int]
    strategy_one: int
    strategy_two: int
    case: str
    checks: tuple[Check, ...]
    violations: tuple[Violation, ...] = ()

    @property
    def q(self) -> int:
        return len(self.J_sizes)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]


@dataclass
class _Structure:
    classification: SkeletonClassification
    image_I: frozenset[int]
    S: dict[int, frozenset[int]]  # pattern vertex -> its image's neighbours in phi(I)
    P: frozenset[int]
    R: frozenset[int]
    stripped: set[tuple[int, int]]
    remaining_degree: dict[int, int]
    J: dict[int, set[int]]


def _structure(g: Graph, h: PlaneGraph, phi: Embedding, mode: Mode) -> _Structure:
    c = classify_components(g, h, phi, mode)
    image_I = phi.image(h.isolated)
    S = {x: frozenset(w for w in g.adj[phi[x]] if w in image_I) for x in range(h.n)}
    P = frozenset(phi[x] for rec in c.components for x in rec.p_vertices)
    R = frozenset(phi[rec.low_endpoint] for rec in c.of_kind("M2"))
    stripped: set[tuple[int, int]] = set()
    for w in image_I:
        p_nbrs = g.adj[w] & P
        if not p_nbrs:
            continue
        others = g.adj[w] - P
        drop = g.adj[w] if len(others) <= 2 else p_nbrs
        stripped |= {(min(w, t), max(w, t)) for t in drop}
    remaining = {}
    J: dict[int, set[int]] = {}
    for w in image_I:
        d = sum(1 for t in g.adj[w] if (min(w, t), max(w, t)) not in stripped)
        remaining[w] = d
        if d > 0:
            J.setdefault(d, set()).add(w)
    return _Structure(c, image_I, S, P, R, stripped, remaining, J)


def _leaf_pairs(h: PlaneGraph, rec: ComponentRecord) -> list[tuple[int, int]]:
    hg = h.underlying
    if len(rec.vertices) == 2:
        a, b = rec.vertices
        return [(a, b), (b, a)]
    return [(u, next(iter(hg.adj[u]))) for u in rec.vertices if hg.degrees[u] == 1]


def _scan(g: Graph, h: PlaneGraph, phi: Embedding, st: _Structure) -> list[Violation]:
    c = st.classification
    out: list[Violation] = []

    lows = [(rec, phi[rec.low_endpoint]) for rec in c.of_kind("M1", "M2")]
    for i, (r1, t1) in enumerate(lows):
        for r2, t2 in lows[i + 1:]:
            if g.has_edge(t1, t2):
                out.append(Violation("a", f"low-degree ends {t1} and {t2} are adjacent", (t1, t2)))

    acyclic = [rec for rec in c.components if rec.kind != "CYCLIC"]
    for rec in acyclic:
        for u, v in _leaf_pairs(h, rec):
            su, sv = st.S[u], st.S[v]
            if su and sv and not (su == sv and len(su) == 1):
                out.append(Violation(
                    "b", f"leaf {u} and neighbour {v} see distinct isolated images", (phi[u], phi[v])
                ))

    for rec in c.of_kind("M4", "S6"):
        hg = h.underlying
        leaves = [x for x in rec.vertices if hg.degrees[x] == 1]
        for i, x in enumerate(leaves):
            for y in leaves[i + 1:]:
                if st.S[x] and st.S[y] and len(st.S[x] | st.S[y]) >= 2:
                    out.append(Violation(
                        "c", f"leaves {x} and {y} of a {rec.kind} component see distinct isolated images",
                        (phi[x], phi[y]),
                    ))

    J2 = st.J.get(2, set())
    for rec in acyclic:
        if rec.kind == "M2":
            continue
        for u, v in _leaf_pairs(h, rec):
            nu, nv = g.adj[phi[u]], g.adj[phi[v]]
            ru, rv = bool(nu & st.R), bool(nv & st.R)
            ju, jv = bool(nu & J2), bool(nv & J2)
            for label, hit in (("i", ru and rv), ("ii", ru and jv), ("iii", ju and rv)):
                if hit:
                    out.append(Violation(
                        "d", f"scenario ({label}) on leaf {u} and neighbour {v}", (phi[u], phi[v])
                    ))
    return out


def forbidden_config_scan(g: Graph, h: PlaneGraph, phi: Embedding, mode: Mode | None = None) -> list[Violation]:
    mode = mode or Mode.for_profile(classify_k(g))
    return _scan(g, h, phi, _structure(g, h, phi, mode))


# -- the report ------------------------------------------------------------------------


def _aux_graph(g: Graph, layer: set[int]) -> tuple[Graph, int, int]:
    """Auxiliary graph joining the two neighbours of every degree-2 vertex in ``layer``.

    Returns the simple graph on N(layer), its vertex count and the largest
    edge multiplicity.
    """
    nbrs = sorted(set().union(*(g.adj[w] for w in layer))) if layer else []
    index = {v: i for i, v in enumerate(nbrs)}
    mult: Counter = Counter()
    for w in layer:
        a, b = sorted(g.adj[w])
        mult[(index[a], index[b])] += 1
    aux = Graph(len(nbrs), frozenset(mult))
    return aux, len(nbrs), max(mult.values(), default=0)


def _check(cid: str, lhs: int, rhs: int, relation: str, applicable: bool = True) -> Check:
    if not applicable:
        return Check(cid, NOT_APPLICABLE, lhs, rhs, relation)
    ok = {"<": lhs < rhs, "<=": lhs <= rhs, ">=": lhs >= rhs, "==": lhs == rhs}[relation]
    return Check(cid, PASS if ok else FAIL, lhs, rhs, relation)


def compute_bounds(g: Graph, h: PlaneGraph, phi: Embedding, mode: Mode | None = None) -> AuditReport:
    """Evaluate every counting inequality on one (g, h, phi) instance; phi must be normalized."""
    check_embedding(h.underlying, g, phi)
    mode = mode or Mode.for_profile(classify_k(g))
    st = _structure(g, h, phi, mode)
    c = st.classification
    violations = _scan(g, h, phi, st)
    clean = not violations

    skel_images = {phi[x] for x in range(h.n) if x not in h.isolated}
    skel_edges = sum(1 for u, v in g.edges if u in skel_images and v in skel_images)
    skel_edges_wo_r = sum(
        1 for u, v in g.edges
        if u in skel_images and v in skel_images and u not in st.R and v not in st.R
    )
    p_adjacent = [w for w in st.image_I if g.adj[w] & st.P]
    p_edges = sum(1 for w in st.image_I for t in g.adj[w] if t in st.P)
    J = st.J
    q = max(J, default=0)
    J_sizes = tuple(len(J.get(i, ())) for i in range(1, q + 1))
    J1, J2 = J.get(1, set()), J.get(2, set())
    j3_edges = sum(i * len(ws) for i, ws in J.items() if i >= 3)
    aux, aux_n, aux_mult = _aux_graph(g, J2)
    jr, jr_n, jr_mult = _aux_graph(g, J2 | set(st.R))
    k2 = mode.k2 if mode.general else 1

    terms = {
        "h_edges": h_lower_bound(c),
        "skeleton_edges": skeleton_edge_bound(c, mode),
        "skeleton_edges_without_r": skeleton_edge_bound_without_r(c, mode),
        "stripped_edges": stripped_edge_bound(c, mode),
        "p_adjacent_vertices": p_adjacent_vertex_bound(c),
        "p_edges": p_edge_bound(c),
        "j1_vertices": j1_bound(c, mode),
        "j2_edges": j2_edge_bound(c, mode),
        "j2_aux_vertices": j2_aux_vertex_bound(c),
        "j3_edges": j3_edge_bound(c, mode),
        "jr_aux_vertices": jr_vertex_bound(c),
        "jr_edges": jr_edge_bound(c, mode),
    }
    total1 = strategy_one_total(c, mode)
    total2 = strategy_two_total(c, mode)

    checks = [
        _check("h_edges", h.underlying.m, terms["h_edges"], ">="),
        _check("skeleton_edges", skel_edges, terms["skeleton_edges"], "<", applicable=clean),
        _check("skeleton_edges_without_r", skel_edges_wo_r, terms["skeleton_edges_without_r"], "<=", applicable=clean),
        _check("p_adjacent_vertices", len(p_adjacent), terms["p_adjacent_vertices"], "<="),
        _check("p_edges", p_edges, terms["p_edges"], "<="),
        _check("stripped_edges", len(st.stripped), terms["stripped_edges"], "<="),
        _check("j1_vertices", len(J1), terms["j1_vertices"], "<="),
        _check("j2_aux_vertices", aux_n, terms["j2_aux_vertices"], "<="),
        _check("j2_aux_planar", int(bool(is_planar(aux))), 1, "=="),
        _check("j2_aux_multiplicity", aux_mult, k2, "<="),
        _check("j2_aux_edges", len(J2), 3 * k2 * aux_n, "<="),
        _check("j2_edges", 2 * len(J2), terms["j2_edges"], "<="),
        _check("j3_edges", j3_edges, terms["j3_edges"], "<="),
        _check("jr_aux_vertices", jr_n, terms["jr_aux_vertices"], "<="),
        _check("jr_aux_planar", int(bool(is_planar(jr))), 1, "=="),
        _check("jr_edges", 2 * (len(J2) + len(st.R)), terms["jr_edges"], "<="),
        _check("strategy1", g.m, total1, "<"),
        _check("strategy2", g.m, total2, "<"),
    ]
    case = "4r3>=r2" if 4 * c.r3 >= c.r2 else "r2>=2r3"
    return AuditReport(
        mode=mode,
        classification=c,
        e_g=g.m,
        e_h=h.underlying.m,
        P=st.P,
        R=st.R,
        J_sizes=J_sizes,
        stripped_edges=len(st.stripped),
        terms=terms,
        strategy_one=total1,
        strategy_two=total2,
        case=case,
        checks=tuple(checks),
        violations=tuple(violations),
    )


# -- ratio floor --------------------------------------------------------------------------

CONSISTENT = "CONSISTENT"
COUNTEREXAMPLE = "COUNTEREXAMPLE"


@dataclass(frozen=True)
class TermComparison:
    label: str
    h_term: int
    g_term: int
    ok: bool


@dataclass(frozen=True)
class RatioCheck:
    status: str
    ratio: Fraction
    floor: Fraction
    strategy: int
    covered: bool  # False when (k1, k2) lies outside the range the counting argument handles
    terms: tuple[TermComparison, ...]
    report: AuditReport = field(repr=False)

    @property
    def consistent(self) -> bool:
        return self.status == CONSISTENT


def ratio_floor(mode: Mode) -> Fraction:
    return Fraction(1, 16) if not mode.general else Fraction(1, 9 + mode.k1 + 6 * mode.k2)


def _single(kind: str, size: int) -> SkeletonClassification:
    field_of = {"T1": "tree_sizes_A", "T2": "tree_sizes_B", "T3": "tree_sizes_C",
                "S1": "star_sizes_D", "S2": "star_sizes_E", "S3": "star_sizes_F", "S4": "star_sizes_L"}
    return replace(SkeletonClassification(), **{field_of[kind]: (size,)})


def term_comparisons(c: SkeletonClassification, mode: Mode, strategy: int) -> list[TermComparison]:
    """Split both bounds into matching per-component terms (M2 and M3 grouped)."""
    total = STRATEGIES[strategy]
    floor = ratio_floor(mode)
    groups: list[tuple[str, SkeletonClassification]] = []
    if c.n0:
        groups.append(("cycles", SkeletonClassification(n0=c.n0)))
    for kind, sizes in (("T1", c.tree_sizes_A), ("T2", c.tree_sizes_B), ("T3", c.tree_sizes_C),
                        ("S1", c.star_sizes_D), ("S2", c.star_sizes_E), ("S3", c.star_sizes_F),
                        ("S4", c.star_sizes_L)):
        groups.extend((f"{kind}[{s}]", _single(kind, s)) for s in sizes)
    if c.r1:
        groups.append(("M1", SkeletonClassification(r1=c.r1)))
    if c.r2 or c.r3:
        groups.append(("M2+M3", SkeletonClassification(r2=c.r2, r3=c.r3)))
    if c.y:
        groups.append(("M4", SkeletonClassification(y=c.y)))
    if c.m_s5:
        groups.append(("S5", SkeletonClassification(m_s5=c.m_s5)))
    if c.z_s6:
        groups.append(("S6", SkeletonClassification(z_s6=c.z_s6)))
    out = []
    for label, part in groups:
        ht, gt = h_lower_bound(part), total(part, mode)
        out.append(TermComparison(label, ht, gt, Fraction(ht) >= floor * gt))
    return out


def _prescribed_strategy(c: SkeletonClassification, mode: Mode) -> int | None:
    """Strategy the counting argument prescribes, or None outside its (k1, k2) range."""
    if not mode.general:
        return 1 if 4 * c.r3 >= c.r2 else 2
    k1, k2 = mode.k1, mode.k2
    if k1 < 1 or (k1, k2) in ((1, 0), (2, 0)):
        return None
    if k1 >= 2:
        return 1
    return 1 if (6 * k2 - 2) * c.r3 >= c.r2 else 2


def ratio_floor_check(report: AuditReport, mode: Mode | None = None) -> RatioCheck:
    mode = mode or report.mode
    c = report.classification
    floor = ratio_floor(mode)
    ratio = Fraction(report.e_h, report.e_g)
    strategy = _prescribed_strategy(c, mode)
    covered = strategy is not None
    if strategy is None:
        terms1 = term_comparisons(c, mode, 1)
        strategy = 1 if all(t.ok for t in terms1) else 2
    terms = term_comparisons(c, mode, strategy)
    total = report.strategy_one if strategy == 1 else report.strategy_two
    ok = (
        ratio > floor
        and all(t.ok for t in terms)
        and report.e_h >= h_lower_bound(c)
        and report.e_g < total
        and report.ok
    )
    return RatioCheck(CONSISTENT if ok else COUNTEREXAMPLE, ratio, floor, strategy, covered, tuple(terms), report)
