"""Brute-force plane-saturation ratio, used as an oracle for ``psr_exact``.

Everything is labeled and nothing is merged: every edge subset of ``g``,
every plane rotation system of every component, every choice of outer face,
every containment forest (any component may sit in any face of any other,
including outer faces and the face of an isolated vertex), and containment
of ``H + uv`` in ``g`` by trying all vertex permutations.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .errors import NotPlanarError, SizeLimitError
from .graph import Graph, is_planar
from .plane import ComponentEmbedding, Inside, PlaneGraph, TopLevel, euler_genus
from .psr import PsrResult

NAIVE_MAX_VERTICES = 6


class PermutationContainment:
    """``contains(edges)``: does the labeled edge set embed in ``g`` under some permutation."""

    def __init__(self, g: Graph) -> None:
        self.adj = np.zeros((g.n, g.n), dtype=bool)
        for u, v in g.edges:
            self.adj[u, v] = self.adj[v, u] = True
        self.perms = np.array(list(itertools.permutations(range(g.n))), dtype=np.intp).reshape(-1, g.n)
        self.cache: dict[frozenset, bool] = {}

    def contains(self, edges: frozenset) -> bool:
        hit = self.cache.get(edges)
        if hit is None:
            if not edges:
                hit = True
            else:
                us = np.array([u for u, _ in edges])
                vs = np.array([v for _, v in edges])
                hit = bool(self.adj[self.perms[:, us], self.perms[:, vs]].all(axis=1).any())
            self.cache[edges] = hit
        return hit


def _all_rotations(verts, adj):
    choices = []
    for v in verts:
        nbrs = sorted(adj[v])
        if not nbrs:
            choices.append([()])
            continue
        choices.append([(nbrs[0],) + p for p in itertools.permutations(nbrs[1:])])
    for combo in itertools.product(*choices):
        comp = ComponentEmbedding.from_rotation(dict(zip(verts, combo)))
        if euler_genus(comp) == 0:
            yield comp


def _saturated(comps, outers, parents, bad) -> bool:
    # union-find over (component, face); parent None means the unbounded region
    root: dict = {}

    def find(x):
        while root.get(x, x) != x:
            x = root[x]
        return x

    for j, par in enumerate(parents):
        a = find(("root",) if par is None else par)
        b = find((j, outers[j]))
        if a != b:
            root[b] = a
    masks: dict = {}
    for j, comp in enumerate(comps):
        for f in range(len(comp.faces)):
            r = find((j, f))
            m = masks.get(r, 0)
            for v in comp.face_vertices(f):
                m |= 1 << v
            masks[r] = m
    for mask in masks.values():
        m = mask
        while m:
            low = m & -m
            if bad[low.bit_length() - 1] & mask:
                return False
            m ^= low
    return True


def _acyclic(parents) -> bool:
    t = len(parents)
    for j in range(t):
        c, steps = j, 0
        while parents[c] is not None:
            c = parents[c][0]
            steps += 1
            if steps > t:
                return False
    return True


def psr_naive(g: Graph) -> PsrResult:
    if g.n > NAIVE_MAX_VERTICES:
        raise SizeLimitError(f"the naive solver handles at most {NAIVE_MAX_VERTICES} vertices")
    if g.m == 0:
        raise ValueError("the host graph needs at least one edge")
    if not is_planar(g):
        raise NotPlanarError("host graph is not planar")
    oracle = PermutationContainment(g)
    edges = sorted(g.edges)
    explored = 0
    for k in range(g.m + 1):
        for subset in itertools.combinations(edges, k):
            h = Graph(g.n, frozenset(subset))
            bad = [0] * g.n
            for u in range(g.n):
                for v in range(u + 1, g.n):
                    if not h.has_edge(u, v) and oracle.contains(h.edges | {(u, v)}):
                        bad[u] |= 1 << v
                        bad[v] |= 1 << u
            vertex_sets = h.components()
            rotation_lists = [list(_all_rotations(vs, h.adj)) for vs in vertex_sets]
            for comps in itertools.product(*rotation_lists):
                outer_opts = [range(len(c.faces)) for c in comps]
                slots = [None] + [(j, f) for j, c in enumerate(comps) for f in range(len(c.faces))]
                parent_opts = [[s for s in slots if s is None or s[0] != j] for j in range(len(comps))]
                for outers in itertools.product(*outer_opts):
                    for parents in itertools.product(*parent_opts):
                        if not _acyclic(parents):
                            continue
                        explored += 1
                        if _saturated(comps, outers, parents, bad):
                            pls = [
                                TopLevel(o) if p is None else Inside(p[0], p[1], o)
                                for o, p in zip(outers, parents)
                            ]
                            witness = PlaneGraph(h, tuple(comps), tuple(pls))
                            return PsrResult(Fraction(k, g.m), witness, explored)
    raise AssertionError("g itself is always saturated")  # pragma: no cover
