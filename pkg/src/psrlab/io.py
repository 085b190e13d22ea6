"""Text formats: ``.graph`` edge lists, ``.plane`` embeddings and ``.map`` embeddings.

.graph::

    graph <n> <m>
    e <u> <v>            (m lines, u < v, sorted)

.plane::

    plane <n>
    component <id>
    rot <v> : <w1> ... <wk>     (cyclic, starting at the smallest neighbour)
    place <id> outer [via <f>]
    place <id> in <parent> face <f> via <outer>

.map::

    map <h-vertex> <g-vertex>   (one line per vertex, sorted)

Lines starting with ``#`` and blank lines are ignored when parsing.
"""

from __future__ import annotations

from typing import Iterator

from .errors import ParseError
from .graph import Graph
from .plane import ComponentEmbedding, Inside, PlaneGraph, TopLevel
from .search import Embedding


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield no, line.split()


def _int(tok: str, no: int) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", no) from None
    if val < 0:
        raise ParseError(f"negative value {val}", no)
    return val


# -- .graph ---------------------------------------------------------------------


def format_graph(g: Graph) -> str:
    out = [f"graph {g.n} {g.m}"]
    out += [f"e {u} {v}" for u, v in g.edge_list]
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Graph:
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "graph" or len(lines[0][1]) != 3:
        raise ParseError("expected header 'graph <n> <m>'", lines[0][0] if lines else 1)
    hno, header = lines[0]
    n, m = _int(header[1], hno), _int(header[2], hno)
    seen: set[tuple[int, int]] = set()
    for no, toks in lines[1:]:
        if toks[0] != "e" or len(toks) != 3:
            raise ParseError(f"expected 'e <u> <v>', got {' '.join(toks)!r}", no)
        u, v = _int(toks[1], no), _int(toks[2], no)
        if u == v:
            raise ParseError(f"loop at vertex {u}", no)
        if u >= n or v >= n:
            raise ParseError(f"edge ({u}, {v}) out of range for {n} vertices", no)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise ParseError(f"duplicate edge {e}", no)
        seen.add(e)
    if len(seen) != m:
        raise ParseError(f"header announces {m} edges, found {len(seen)}", hno)
    return Graph(n, frozenset(seen))


# -- .plane ---------------------------------------------------------------------


def format_plane(p: PlaneGraph) -> str:
    out = [f"plane {p.n}"]
    for i, comp in enumerate(p.components):
        out.append(f"component {i}")
        for v in comp.vertices:
            nbrs = " ".join(str(w) for w in comp.rotation[v])
            out.append(f"rot {v} : {nbrs}".rstrip())
        pl = p.placements[i]
        if isinstance(pl, Inside):
            out.append(f"place {i} in {pl.parent} face {pl.parent_face} via {pl.outer_face}")
        elif pl.outer_face:
            out.append(f"place {i} outer via {pl.outer_face}")
        else:
            out.append(f"place {i} outer")
    return "\n".join(out) + "\n"


def _parse_place(toks: list[str], no: int):
    # place <id> outer [via <f>] | place <id> in <p> face <f> via <o>
    if len(toks) >= 3 and toks[2] == "outer":
        if len(toks) == 3:
            return _int(toks[1], no), TopLevel(0)
        if len(toks) == 5 and toks[3] == "via":
            return _int(toks[1], no), TopLevel(_int(toks[4], no))
    if len(toks) == 8 and toks[2] == "in" and toks[4] == "face" and toks[6] == "via":
        return _int(toks[1], no), Inside(_int(toks[3], no), _int(toks[5], no), _int(toks[7], no))
    raise ParseError(f"malformed placement {' '.join(toks)!r}", no)


def parse_plane(text: str) -> PlaneGraph:
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "plane" or len(lines[0][1]) != 2:
        raise ParseError("expected header 'plane <n>'", lines[0][0] if lines else 1)
    n = _int(lines[0][1][1], lines[0][0])
    blocks: list[dict] = []
    for no, toks in lines[1:]:
        kind = toks[0]
        if kind == "component":
            if len(toks) != 2 or _int(toks[1], no) != len(blocks):
                raise ParseError("components must be numbered 0, 1, ... in order", no)
            blocks.append({"line": no, "rot": {}, "place": None})
        elif not blocks:
            raise ParseError(f"{kind!r} outside a component block", no)
        elif kind == "rot":
            if len(toks) < 3 or toks[2] != ":":
                raise ParseError("expected 'rot <v> : <neighbours>'", no)
            v = _int(toks[1], no)
            if v >= n:
                raise ParseError(f"vertex {v} out of range for {n} vertices", no)
            nbrs = [_int(t, no) for t in toks[3:]]
            if any(w >= n for w in nbrs):
                raise ParseError(f"neighbour out of range at vertex {v}", no)
            if v in blocks[-1]["rot"]:
                raise ParseError(f"vertex {v} listed twice", no)
            blocks[-1]["rot"][v] = nbrs
        elif kind == "place":
            cid, pl = _parse_place(toks, no)
            if cid != len(blocks) - 1 or blocks[-1]["place"] is not None:
                raise ParseError("placement must follow its own component's rotations", no)
            blocks[-1]["place"] = pl
        else:
            raise ParseError(f"unknown directive {kind!r}", no)

    comps, pls, edges = [], [], set()
    for b in blocks:
        if not b["rot"]:
            raise ParseError("component without rotation lines", b["line"])
        if b["place"] is None:
            raise ParseError("component without a placement line", b["line"])
        try:
            comp = ComponentEmbedding.from_rotation(b["rot"])
        except ValueError as exc:
            raise ParseError(str(exc), b["line"]) from None
        edges |= comp.edges()
        comps.append(comp)
        pls.append(b["place"])
    try:
        return PlaneGraph(Graph(n, frozenset(edges)), tuple(comps), tuple(pls))
    except ValueError as exc:
        raise ParseError(str(exc), lines[0][0]) from None


# -- .map -----------------------------------------------------------------------


def format_map(phi: Embedding) -> str:
    return "".join(f"map {x} {t}\n" for x, t in enumerate(phi.map))


def parse_map(text: str) -> Embedding:
    images: list[int] = []
    for no, toks in _lines(text):
        if toks[0] != "map" or len(toks) != 3:
            raise ParseError("expected 'map <h-vertex> <g-vertex>'", no)
        x, t = _int(toks[1], no), _int(toks[2], no)
        if x != len(images):
            raise ParseError(f"expected vertex {len(images)}, got {x} (map must be complete and sorted)", no)
        images.append(t)
    return Embedding(tuple(images))
