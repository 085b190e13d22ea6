import re

import pytest

from psrlab.cli import main
from psrlab.graph import cycle_graph
from psrlab.io import format_graph, format_map, format_plane, parse_graph, parse_map, parse_plane


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def ddw7(tmp_path, capsys):
    prefix = str(tmp_path / "ddw7")
    code, out, _ = run(capsys, "construct", "--family", "ddw", "--m", "7", "--out", prefix)
    assert code == 0
    assert out == "e(G)=120 e(H)=41 ratio=41/120\n"
    return prefix


def test_construct_round_trips_byte_exact(ddw7):
    for suffix, parse, fmt in ((".graph", parse_graph, format_graph), (".plane", parse_plane, format_plane),
                               (".map", parse_map, format_map)):
        with open(ddw7 + suffix) as fh:
            text = fh.read()
        assert fmt(parse(text)) == text


def test_check_reports_saturated(ddw7, capsys):
    assert run(capsys, "check", "--graph", ddw7 + ".graph", "--plane", ddw7 + ".plane") == (0, "SATURATED\n", "")


def test_check_reports_addable_with_a_map(tmp_path, capsys):
    (tmp_path / "k4.graph").write_text("graph 4 6\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n")
    (tmp_path / "empty.plane").write_text(format_plane(parse_plane(
        "plane 4\n" + "".join(f"component {i}\nrot {i} :\nplace {i} outer\n" for i in range(4)))))
    code, out, _ = run(capsys, "check", "--graph", str(tmp_path / "k4.graph"), "--plane", str(tmp_path / "empty.plane"))
    assert code == 0
    first, *rest = out.splitlines()
    assert re.fullmatch(r"ADDABLE \d \d face \d+", first)
    assert len(parse_map("\n".join(rest) + "\n")) == 4


def test_psr_of_c5(tmp_path, capsys):
    path = tmp_path / "c5.graph"
    path.write_text(format_graph(cycle_graph(5)))
    assert run(capsys, "psr", "--graph", str(path)) == (0, "1/1\n", "")
    witness = parse_plane((tmp_path / "c5.witness.plane").read_text())
    assert witness.n == 5 and witness.underlying.m == 5
    assert run(capsys, "psr", "--graph", str(path), "--naive")[1] == "1/1\n"


def test_classify(ddw7, capsys):
    code, out, _ = run(capsys, "classify", "--graph", ddw7 + ".graph")
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "k1=1 k2=1"
    assert len(lines) - 1 == 7 * 7 + 8


def test_audit_output(ddw7, capsys):
    code, out, _ = run(capsys, "audit", "--graph", ddw7 + ".graph", "--plane", ddw7 + ".plane", "--map", ddw7 + ".map")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("mode twinfree case ")
    checks = [line for line in lines if line.startswith("check ")]
    assert checks and all(re.fullmatch(r"check \S+ (pass|fail|n/a) -?\d+ -?\d+", c) for c in checks)
    assert not any(" fail " in c for c in checks)
    assert lines[-1] == "ratio 41/120 floor 1/16 strategy 1 CONSISTENT"


def test_saturate_writes_a_saturated_plane(tmp_path, capsys):
    g = tmp_path / "c5.graph"
    g.write_text(format_graph(cycle_graph(5)))
    p = tmp_path / "iso.plane"
    p.write_text("plane 5\n" + "".join(f"component {i}\nrot {i} :\nplace {i} outer\n" for i in range(5)))
    out_path = tmp_path / "sat.plane"
    code, out, _ = run(capsys, "saturate", "--graph", str(g), "--plane", str(p), "--seed", "4", "--out", str(out_path))
    assert code == 0 and out == "e(H)=5 e(G)=5\n"
    assert run(capsys, "check", "--graph", str(g), "--plane", str(out_path))[1] == "SATURATED\n"


def test_stdout_is_deterministic(ddw7, capsys):
    argv = ["audit", "--graph", ddw7 + ".graph", "--plane", ddw7 + ".plane", "--map", ddw7 + ".map"]
    assert run(capsys, *argv) == run(capsys, *argv)
    sat = ["saturate", "--graph", ddw7 + ".graph", "--plane", ddw7 + ".plane", "--seed", "1"]
    assert run(capsys, *sat) == run(capsys, *sat)


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "construct", "--family", "ddw", "--out", "x")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2


def test_domain_errors_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("graph 3 2\ne 0 1\ne 1 1\n")
    code, out, err = run(capsys, "classify", "--graph", str(bad))
    assert code == 1 and out == ""
    assert "line 3" in err
    code, _, err = run(capsys, "construct", "--family", "ddw", "--m", "3", "--out", str(tmp_path / "x"))
    assert code == 1 and err.startswith("M_TOO_SMALL")
    assert run(capsys, "classify", "--graph", str(tmp_path / "missing.graph"))[0] == 1
