import pytest
from hypothesis import given, settings

from psrlab.errors import ParseError
from psrlab.families import decorated_double_wheel, example_1_1, example_1_2, general_family
from psrlab.io import format_graph, format_map, format_plane, parse_graph, parse_map, parse_plane
from strategies import plane_graphs

INSTANCES = [example_1_1(6), example_1_1(10, prime=True), example_1_2(3),
             decorated_double_wheel(7), general_family(9, 2, 0)]


@pytest.mark.parametrize("inst", INSTANCES, ids=lambda i: i.name)
def test_family_files_round_trip_byte_exact(inst):
    g_text = format_graph(inst.host)
    p_text = format_plane(inst.witness)
    m_text = format_map(inst.embedding)
    assert parse_graph(g_text) == inst.host
    assert format_graph(parse_graph(g_text)) == g_text
    assert parse_plane(p_text) == inst.witness
    assert format_plane(parse_plane(p_text)) == p_text
    assert format_map(parse_map(m_text)) == m_text


def test_graph_format_is_sorted_with_header():
    text = format_graph(example_1_1(6).host)
    lines = text.splitlines()
    assert lines[0] == "graph 6 7"
    edges = [tuple(map(int, line.split()[1:])) for line in lines[1:]]
    assert edges == sorted(edges) and all(u < v for u, v in edges)


def test_comments_and_blank_lines_are_ignored():
    g = parse_graph("# a triangle\n\ngraph 3 3\ne 0 1\n# middle\ne 1 2\ne 0 2\n")
    assert g.m == 3


@pytest.mark.parametrize("text,line", [
    ("graph 3 1\ne 0 0\n", 2),
    ("graph 3 1\ne 0 3\n", 2),
    ("graph 3 2\ne 0 1\ne 1 0\n", 3),
    ("graph 3 2\ne 0 1\n", 1),
    ("graph 3 1\nedge 0 1\n", 2),
    ("graph 3 x\n", 1),
])
def test_graph_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as err:
        parse_graph(text)
    assert err.value.line == line


@pytest.mark.parametrize("text", [
    "plane 2\ncomponent 0\nrot 0 : 1\nrot 1 : 0\n",  # no placement
    "plane 2\ncomponent 0\nrot 0 : 1\nplace 0 outer\n",  # asymmetric rotation
    "plane 2\ncomponent 1\nrot 0 :\nplace 1 outer\n",  # numbering
    "plane 2\ncomponent 0\nrot 0 :\nplace 0 outer\n",  # vertex 1 missing
    "plane 1\ncomponent 0\nrot 0 :\nplace 0 in 0 face 0 via 0\n",  # self-containment
    "plane 1\nrot 0 :\n",
])
def test_plane_parse_errors(text):
    with pytest.raises(ParseError):
        parse_plane(text)


def test_map_must_be_complete_and_sorted():
    with pytest.raises(ParseError):
        parse_map("map 1 0\nmap 0 1\n")


@settings(max_examples=120, deadline=None)
@given(plane_graphs())
def test_random_plane_graphs_round_trip(p):
    text = format_plane(p)
    q = parse_plane(text)
    assert q == p and format_plane(q) == text
    assert format_graph(parse_graph(format_graph(p.underlying))) == format_graph(p.underlying)
