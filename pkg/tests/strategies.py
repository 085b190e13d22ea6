from hypothesis import assume
from hypothesis import strategies as st

from psrlab.graph import Graph, is_planar
from psrlab.plane import Inside, PlaneGraph, TopLevel


@st.composite
def plane_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=3 * n) if pairs else st.just([]))
    g = Graph.from_edges(n, chosen)
    res = is_planar(g)
    assume(res)
    comps = list(res.witness.components)
    pls = []
    for i, comp in enumerate(comps):
        outer = draw(st.integers(0, len(comp.faces) - 1))
        if i == 0 or draw(st.booleans()):
            pls.append(TopLevel(outer))
        else:
            j = draw(st.integers(0, i - 1))
            f = draw(st.integers(0, len(comps[j].faces) - 1))
            pls.append(Inside(j, f, outer))
    return PlaneGraph(g, tuple(comps), tuple(pls))
