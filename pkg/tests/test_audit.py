from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from psrlab.audit import (
    CONSISTENT,
    NOT_APPLICABLE,
    compute_bounds,
    forbidden_config_scan,
    h_lower_bound,
    ratio_floor,
    ratio_floor_check,
    strategy_one_total,
    strategy_two_total,
    term_comparisons,
)
from psrlab.families import decorated_double_wheel, example_1_2, general_family
from psrlab.graph import Graph, classify_k, cycle_graph
from psrlab.plane import ComponentEmbedding, PlaneGraph, TopLevel, cycle_rotation
from psrlab.saturation import ADDABLE, is_plane_saturated
from psrlab.search import Mode, SkeletonClassification, normalize_embedding
from test_search import identity, plane_from_edges


# Closed forms written out coefficient by coefficient, independent of the per-expression
# functions the package sums.  The twin-free ones are spelled with literal numbers.

def twin_free_one(c: SkeletonClassification) -> int:
    return (16 * c.n0 + sum(16 * a - 26 for a in c.tree_sizes_A) + sum(16 * b - 35 for b in c.tree_sizes_B)
            + sum(16 * x - 44 for x in c.tree_sizes_C) + sum(4 * d + 2 for d in c.star_sizes_D)
            + sum(3 * e + 13 for e in c.star_sizes_E) + sum(13 * f - 4 for f in c.star_sizes_F)
            + sum(3 * s for s in c.star_sizes_L)
            + 16 * c.r1 + 17 * c.r2 + 12 * c.r3 + 10 * c.y + 22 * c.m_s5 + 14 * c.z_s6)


def twin_free_two(c: SkeletonClassification) -> int:
    return (16 * c.n0 + sum(16 * a - 26 for a in c.tree_sizes_A) + sum(16 * b - 29 for b in c.tree_sizes_B)
            + sum(16 * x - 32 for x in c.tree_sizes_C) + sum(10 * d - 4 for d in c.star_sizes_D)
            + sum(9 * e + 1 for e in c.star_sizes_E) + sum(13 * f - 4 for f in c.star_sizes_F)
            + sum(9 * s - 6 for s in c.star_sizes_L)
            + 16 * c.r1 + 15 * c.r2 + 18 * c.r3 + 16 * c.y + 28 * c.m_s5 + 26 * c.z_s6)


def general_one(c: SkeletonClassification, k1: int, k2: int) -> int:
    big, t = 9 + k1 + 6 * k2, k1 + 6 * k2
    return (big * c.n0 + sum(big * a - (2 * k1 + 12 * k2 + 12) for a in c.tree_sizes_A)
            + sum(big * b - (3 * k1 + 18 * k2 + 14) for b in c.tree_sizes_B)
            + sum(big * x - (4 * k1 + 24 * k2 + 16) for x in c.tree_sizes_C)
            + sum(4 * d + 2 for d in c.star_sizes_D) + sum(3 * e + t + 6 for e in c.star_sizes_E)
            + sum((t + 6) * f - (t - 3) for f in c.star_sizes_F) + sum(3 * s for s in c.star_sizes_L)
            + big * c.r1 + (6 * k2 + 11) * c.r2 + 12 * c.r3 + 10 * c.y + (t + 15) * c.m_s5 + 14 * c.z_s6)


def general_two(c: SkeletonClassification, k1: int, k2: int) -> int:
    big, t = 9 + k1 + 6 * k2, k1 + 6 * k2
    return (big * c.n0 + sum(big * a - (12 + 2 * k1 + 12 * k2) for a in c.tree_sizes_A)
            + sum(big * b - (14 + 3 * k1 + 12 * k2) for b in c.tree_sizes_B)
            + sum(big * x - (16 + 4 * k1 + 12 * k2) for x in c.tree_sizes_C)
            + sum((4 + 6 * k2) * d + 2 - 6 * k2 for d in c.star_sizes_D)
            + sum((3 + 6 * k2) * e + 6 + k1 - 6 * k2 for e in c.star_sizes_E)
            + sum((6 + t) * f + 3 - t for f in c.star_sizes_F)
            + sum((3 + 6 * k2) * s - 6 * k2 for s in c.star_sizes_L)
            + big * c.r1 + (6 * k2 + 9) * c.r2 + (6 * k2 + 12) * c.r3 + (6 * k2 + 10) * c.y
            + (15 + k1 + 12 * k2) * c.m_s5 + (12 * k2 + 14) * c.z_s6)


sizes = st.lists(st.integers(4, 30), max_size=4).map(tuple)
counts = st.integers(0, 8)


@st.composite
def classifications(draw):
    return SkeletonClassification(
        r1=draw(counts), r2=draw(counts), r3=draw(counts), y=draw(counts),
        tree_sizes_A=draw(sizes), tree_sizes_B=draw(sizes), tree_sizes_C=draw(sizes),
        star_sizes_D=draw(sizes), star_sizes_E=draw(sizes), star_sizes_F=draw(sizes), star_sizes_L=draw(sizes),
        m_s5=draw(counts), z_s6=draw(counts), n0=draw(counts),
    )


@settings(max_examples=300, deadline=None)
@given(classifications())
def test_twin_free_totals_equal_closed_forms(c):
    mode = Mode.twin_free()
    assert strategy_one_total(c, mode) == twin_free_one(c)
    assert strategy_two_total(c, mode) == twin_free_two(c)


@settings(max_examples=300, deadline=None)
@given(classifications(), st.integers(0, 6), st.integers(0, 5))
def test_general_totals_equal_closed_forms(c, k1, k2):
    mode = Mode.general_k(k1, k2)
    assert strategy_one_total(c, mode) == general_one(c, k1, k2)
    assert strategy_two_total(c, mode) == general_two(c, k1, k2)


@settings(max_examples=200, deadline=None)
@given(classifications())
def test_per_term_ratios_clear_the_twin_free_floor(c):
    # every component type on its own clears 1/16 under strategy 1 except the M2 group
    mode = Mode.twin_free()
    for t in term_comparisons(c, mode, 1):
        if t.label != "M2+M3":
            assert t.ok, t
    if 4 * c.r3 >= c.r2:
        assert all(t.ok for t in term_comparisons(c, mode, 1))
    else:
        assert all(t.ok for t in term_comparisons(c, mode, 2))


@settings(max_examples=200, deadline=None)
@given(classifications(), st.integers(2, 6), st.integers(1, 4))
def test_per_term_ratios_clear_the_general_floor(c, k1, k2):
    mode = Mode.general_k(k1, k2)
    assert all(t.ok for t in term_comparisons(c, mode, 1))


def test_floors():
    assert ratio_floor(Mode.twin_free()) == Fraction(1, 16)
    assert ratio_floor(Mode.general_k(3, 2)) == Fraction(1, 24)


def c5_plane() -> PlaneGraph:
    return PlaneGraph.assemble(cycle_graph(5), [ComponentEmbedding.from_rotation(cycle_rotation(range(5)))],
                               [TopLevel(0)])


def test_c5_is_the_trivial_case():
    report = compute_bounds(cycle_graph(5), c5_plane(), identity(5))
    assert report.ok and report.violations == ()
    lower = next(c for c in report.checks if c.id == "h_edges")
    assert (lower.lhs, lower.rhs, lower.status) == (5, 5, "pass")
    check = ratio_floor_check(report)
    assert check.status == CONSISTENT and check.ratio == 1


def audit(inst, mode=None):
    prof = classify_k(inst.host)
    phi = normalize_embedding(inst.host, inst.witness, inst.embedding, prof)
    report = compute_bounds(inst.host, inst.witness, phi, mode)
    return report, ratio_floor_check(report)


def test_double_wheel_audit():
    report, check = audit(decorated_double_wheel(7))
    assert report.failures() == [] and report.violations == ()
    assert (report.e_g, report.e_h) == (120, 41)
    assert check.status == CONSISTENT and check.ratio == Fraction(41, 120) and check.covered
    assert report.e_g < report.strategy_one and report.e_h >= h_lower_bound(report.classification)
    assert report.mode.label == "twinfree"


def test_general_audit_outside_covered_range():
    report, check = audit(general_family(9, 2, 0))
    assert report.failures() == []
    assert check.ratio == Fraction(37, 109) > Fraction(1, 11) == check.floor
    assert check.status == CONSISTENT and not check.covered


def test_general_audit_inside_covered_range():
    report, check = audit(general_family(9, 3, 2))
    assert report.mode.label == "general(3,2)"
    assert check.covered and check.status == CONSISTENT and check.strategy == 1


HOLDS = {"<": lambda a, b: a < b, "==": lambda a, b: a == b, "<=": lambda a, b: a <= b, ">=": lambda a, b: a >= b}


def test_report_invariants():
    report, _ = audit(example_1_2(4))
    assert report.q == len(report.J_sizes) and all(j >= 0 for j in report.J_sizes)
    for c in report.checks:
        if c.status != NOT_APPLICABLE:
            assert (c.status == "pass") == HOLDS[c.relation](c.lhs, c.rhs), c
    assert report.case in ("4r3>=r2", "r2>=2r3")
    assert sum(1 for _ in report.R) <= report.classification.r2


# fixture F4: a matching edge whose two ends see distinct isolated images
F4_HOST = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3)])
F4_PLANE = plane_from_edges(4, [(0, 1)])


def test_fixture_f4_flags_violation_and_is_addable():
    kinds = {v.kind for v in forbidden_config_scan(F4_HOST, F4_PLANE, identity(4))}
    assert "b" in kinds
    assert is_plane_saturated(F4_HOST, F4_PLANE).status == ADDABLE


def test_skeleton_bounds_are_not_applicable_under_violations():
    report = compute_bounds(F4_HOST, F4_PLANE, identity(4))
    status = {c.id: c.status for c in report.checks}
    assert status["skeleton_edges"] == status["skeleton_edges_without_r"] == NOT_APPLICABLE
    assert not report.ok


def test_scan_is_empty_without_acyclic_components():
    assert forbidden_config_scan(cycle_graph(5), c5_plane(), identity(5)) == []
