"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line."""

import random
import time
from fractions import Fraction
from functools import lru_cache

import networkx as nx
import pytest

from conftest import EULER_LOG
from oracles import (
    RelabelOracle,
    atlas,
    connected_planar,
    count_cycles_of_length,
    planar_by_kuratowski,
    reduced_wheel_graph,
)
from psrlab.audit import CONSISTENT, compute_bounds, forbidden_config_scan, ratio_floor_check
from psrlab.families import decorated_double_wheel, example_1_1, example_1_2, general_family
from psrlab.graph import Graph, KProfile, classify_k, cycle_graph, is_planar
from psrlab.naive import psr_naive
from psrlab.plane import one_isolated_per_face
from psrlab.psr import psr_exact
from psrlab.saturation import is_plane_saturated
from psrlab.search import find_embedding, normalize_embedding

DDW_M = (7, 8, 9, 10)
GENERAL_K = ((1, 1), (2, 0), (3, 2), (0, 1))


@lru_cache(maxsize=None)
def timed_family(kind: str, *args):
    start = time.perf_counter()
    inst = {"ddw": decorated_double_wheel, "general": general_family,
            "ex11": example_1_1, "ex12": example_1_2}[kind](*args)
    verdict = is_plane_saturated(inst.host, inst.witness)
    return inst, verdict, time.perf_counter() - start


def family_instances():
    return ([timed_family("ddw", m) for m in DDW_M]
            + [timed_family("general", 9, k1, k2) for k1, k2 in GENERAL_K]
            + [timed_family("ex11", n) for n in (6, 10)]
            + [timed_family("ex12", n) for n in (2, 4, 5)])


def oracle_sample() -> list[Graph]:
    small = [g for n in range(1, 6) for g in connected_planar(n) if g.m > 0]
    return small + random.Random(1).sample(connected_planar(6), 50)


def trees_and_cycles() -> list[Graph]:
    trees = [Graph.from_edges(n, list(t.edges)) for n in range(2, 8) for t in nx.nonisomorphic_trees(n)]
    return trees + [cycle_graph(k) for k in range(3, 8)]


@lru_cache(maxsize=None)
def exact_runs() -> dict[str, list]:
    return {
        "oracle": [(g, psr_exact(g)) for g in oracle_sample()],
        "trees_cycles": [(g, psr_exact(g)) for g in trees_and_cycles()],
    }


def test_criterion_1_decorated_double_wheel(record_criterion):
    problems = []
    for m in DDW_M:
        inst, verdict, secs = timed_family("ddw", m)
        g, h = inst.host, inst.witness.underlying
        if (g.m, h.m, g.n) != (16 * m + 8, m + 34, 7 * m + 8):
            problems.append(f"m={m} counts {(g.m, h.m, g.n)}")
        if not verdict.saturated:
            problems.append(f"m={m} not saturated")
        if not Fraction(h.m, g.m) < Fraction(1, 16) + Fraction(3, m):
            problems.append(f"m={m} ratio {inst.ratio}")
        if secs > 120:
            problems.append(f"m={m} took {secs:.1f}s")
    record_criterion(1, not problems, "; ".join(problems) or "m=7..10 exact counts, SATURATED")
    assert not problems


def test_criterion_2_general_family(record_criterion):
    problems = []
    m = 9
    for k1, k2 in GENERAL_K:
        inst, verdict, secs = timed_family("general", m, k1, k2)
        counts = (inst.host.m, inst.witness.underlying.m)
        if counts != ((9 + k1 + 6 * k2) * m + 2 * k1 + 6, m + 2 * k1 + 8 * k2 + 24):
            problems.append(f"({k1},{k2}) counts {counts}")
        if not verdict.saturated:
            problems.append(f"({k1},{k2}) not saturated")
        if classify_k(inst.host) != KProfile(k1, k2):
            problems.append(f"({k1},{k2}) classified {classify_k(inst.host)}")
        if secs > 300:
            problems.append(f"({k1},{k2}) took {secs:.1f}s")
    record_criterion(2, not problems, "; ".join(problems) or "four (k1,k2) pairs at m=9")
    assert not problems


def test_criterion_3_examples(record_criterion):
    problems = []
    for n in (6, 10):
        inst, verdict, secs = timed_family("ex11", n)
        if (inst.host.m, inst.witness.underlying.m) != (2 * n - 5, 5) or not verdict.saturated or secs > 30:
            problems.append(f"example_1_1({n})")
    for n in (2, 4, 5):
        inst, verdict, secs = timed_family("ex12", n)
        if (inst.host.m, inst.witness.underlying.m) != (5 * n + 5, n + 9) or not verdict.saturated or secs > 30:
            problems.append(f"example_1_2({n})")
    record_criterion(3, not problems, "; ".join(problems) or "five instances")
    assert not problems


def test_criterion_4_naive_equals_exact(record_criterion):
    start = time.perf_counter()
    runs = exact_runs()["oracle"]
    mismatches = [g for g, res in runs if psr_naive(g).value != res.value]
    secs = time.perf_counter() - start
    passed = not mismatches and secs <= 600
    record_criterion(4, passed, f"{len(runs)} graphs, {len(mismatches)} mismatches, {secs:.0f}s")
    assert passed


def test_criterion_5_trees_and_cycles(record_criterion):
    runs = exact_runs()["trees_cycles"]
    wrong = [g for g, res in runs if res.value != 1]
    record_criterion(5, not wrong, f"{len(runs)} graphs, {len(wrong)} below one")
    assert not wrong


def test_criterion_6_lower_bound_consistency(record_criterion):
    pairs = [(inst.host, inst.witness) for inst, verdict, _ in family_instances() if verdict.saturated]
    for runs in exact_runs().values():
        pairs.extend((g, res.witness) for g, res in runs)
    twin_free = sparse = 0
    problems = []
    for g, h in pairs:
        prof = classify_k(g)
        if prof.k1 <= 1 and prof.k2 <= 1:
            twin_free += 1
            if not 16 * h.underlying.m > g.m:
                problems.append(f"16e(H) <= e(G) on n={g.n} m={g.m}")
        if one_isolated_per_face(h):
            sparse += 1
            if not 6 * h.underlying.m >= g.m:
                problems.append(f"6e(H) < e(G) on n={g.n} m={g.m}")
    detail = f"{len(pairs)} instances, {twin_free} twin-free, {sparse} with <=1 isolated per face"
    record_criterion(6, not problems, "; ".join(problems[:3]) or detail)
    assert not problems


def test_criterion_7_audit(record_criterion):
    problems = []
    for inst, _, _ in family_instances():
        phi = normalize_embedding(inst.host, inst.witness, inst.embedding, classify_k(inst.host))
        report = compute_bounds(inst.host, inst.witness, phi)
        scan = forbidden_config_scan(inst.host, inst.witness, phi)
        check = ratio_floor_check(report)
        if report.failures() or scan or check.status != CONSISTENT:
            problems.append(f"{inst.name}: {[c.id for c in report.failures()]} {len(scan)} {check.status}")
    record_criterion(7, not problems, "; ".join(problems) or "13 instances, zero failures")
    assert not problems


@pytest.mark.run_last
def test_criterion_8_kernel_invariants(record_criterion):
    graphs = atlas(7)
    mismatches = 0
    for g in graphs:
        oracle = RelabelOracle(g)
        for h in graphs:
            if h.n > g.n:
                break
            phi = find_embedding(h, g)
            if (phi is not None) != oracle.contains(h) or (phi is not None and not phi.is_valid(h, g)):
                mismatches += 1
    planarity = sum(1 for g in graphs if bool(is_planar(g)) != planar_by_kuratowski(g))
    passed = EULER_LOG["checked"] > 0 and not EULER_LOG["failed"] and not mismatches and not planarity
    detail = (f"Euler checked on {EULER_LOG['checked']} components, {len(EULER_LOG['failed'])} failed; "
              f"{mismatches} embedding mismatches; {planarity} planarity mismatches")
    record_criterion(8, passed, detail)
    assert passed


def test_criterion_9_unique_long_cycle(record_criterion):
    start = time.perf_counter()
    count = count_cycles_of_length(reduced_wheel_graph(7), 7)
    secs = time.perf_counter() - start
    passed = count == 1 and secs <= 60
    record_criterion(9, passed, f"{count} cycle(s) of length 7 in {secs:.2f}s")
    assert passed
