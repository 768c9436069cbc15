import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from iterlines.cli import (
    EXIT_BUDGET,
    EXIT_ERROR,
    EXIT_INVALID,
    CommandConfig,
    ParseError,
    budget_from_env,
    format_points,
    main,
    parse_points,
)
from iterlines.closure import PointSet
from iterlines.svg import emit_svg

TRAP = "0 0\n3 0\n1 1\n2 1\n"


def test_parse_points():
    assert len(parse_points("0 0\n1 0\n0 1")) == 3
    assert list(parse_points("1/2 -3/4")) == [(F(1, 2), F(-3, 4))]
    assert len(parse_points("# comment\n\n1 1\n1 1  # dup\n")) == 1
    with pytest.raises(ParseError) as info:
        parse_points("0 0\n1.5 2")
    assert (info.value.line, info.value.column) == (2, 1)
    with pytest.raises(ParseError) as info:
        parse_points("0 0\n  1 2/0")
    assert (info.value.line, info.value.column) == (2, 5)
    with pytest.raises(ParseError):
        parse_points("1 2 3")
    with pytest.raises(ParseError):
        parse_points("1")


def test_serializer_roundtrip():
    s = PointSet([(F(-7, 3), 4), (0, F(1, 9)), (12, -1)])
    assert parse_points(format_points(s)) == s


def test_config_needs_one_source():
    with pytest.raises(ValueError):
        CommandConfig("order")
    with pytest.raises(ValueError):
        CommandConfig("order", input_path="a", inline_points="0 0")


def test_budget_env():
    b = budget_from_env({"ITERLINES_MAX_POINTS": "77", "ITERLINES_MAX_SECONDS": "1.5"})
    assert b.max_points == 77 and b.max_seconds == 1.5
    with pytest.raises(ValueError):
        budget_from_env({"ITERLINES_MAX_BITS": "many"})
    with pytest.raises(ValueError):
        budget_from_env({"ITERLINES_MAX_BITS": "0"})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_order_and_classify(capsys):
    assert run(capsys, "order", "--points", "0 0;1 0;0 1;1 1") == (0, "finite 2\n", "")
    assert run(capsys, "classify", "--points", "0 0;2 0;0 2;2 2;1 1")[1] == "parallelogram-with-center, fixed\n"
    assert run(capsys, "classify", "--points", "0 0;3 0;1 1;2 1")[1] == "infinite-order, not fixed\n"


def test_budget_exit_code(capsys):
    code, out, _ = run(capsys, "order", "--points", "0 0;1 0;0 1;1/4 1/4", "--max-iterations", "3")
    assert code == EXIT_BUDGET and out.startswith("unknown")
    code, _, err = run(capsys, "iterate", "-n", "5", "--points", "0 0;1 0;0 1;1/4 1/4", "--max-points", "50")
    assert code == EXIT_BUDGET and "max-points" in err


def test_errors(capsys):
    code, _, err = run(capsys, "classify", "--points", "1.5 2")
    assert code == EXIT_ERROR and "line 1, column 1" in err
    code, _, err = run(capsys, "reach", "--points", "0 0;1 0;0 1;1 1", "--target", "2", "2")
    assert code == EXIT_ERROR and "find-trapezoid" in err
    assert run(capsys, "classify", "/nonexistent/file")[0] == EXIT_ERROR
    assert run(capsys, "order", "--points", "0 0", "--format", "svg")[0] == EXIT_ERROR


def test_step_and_iterate(capsys, tmp_path):
    f = tmp_path / "trap.txt"
    f.write_text(TRAP)
    code, out, _ = run(capsys, "step", str(f))
    assert code == 0 and len(parse_points(out)) == 6
    code, out, _ = run(capsys, "iterate", "-n", "0", str(f), "--format", "json")
    rec = json.loads(out)
    assert rec["size"] == 4 and rec["points"][0] == ["0", "0"]


def test_stdin_input(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("0 0\n1 0\n0 1\n1 1\n"))
    assert run(capsys, "order", "-")[1] == "finite 2\n"


def test_growth_json_is_deterministic(capsys):
    args = ("growth", "-n", "3", "--points", "0 0;1 0;0 1;1/4 1/4", "--format", "json")
    first = run(capsys, *args)
    assert first == run(capsys, *args)
    assert [r["points"] for r in json.loads(first[1])["records"]] == [4, 7, 12, 83]


def test_density_demo(capsys, tmp_path):
    out_file = tmp_path / "d.trace"
    code, out, _ = run(capsys, "density-demo", "--points", "0 0;1 0;0 1;1/4 1/4", "--target", "-5", "3",
                       "--eps-sq", "1/10000", "-o", str(out_file))
    assert code == 0 and out.startswith("point ")
    dist = F(out.splitlines()[1].split()[1])
    assert dist < F(1, 10000)
    assert run(capsys, "verify-trace", str(out_file))[0] == 0


def test_reach_then_verify_in_separate_process(tmp_path):
    seed = tmp_path / "trap.txt"
    seed.write_text(TRAP)
    trace = tmp_path / "t.trace"
    cmd = [sys.executable, "-m", "iterlines"]
    r = subprocess.run(cmd + ["reach", str(seed), "--target", "7/3", "-5/2", "--output", str(trace)],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    r = subprocess.run(cmd + ["verify-trace", str(trace)], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("valid")
    lines = trace.read_text().splitlines()
    idx = next(i for i, ln in enumerate(lines) if ln.startswith("step"))
    toks = lines[idx].split()
    num, den = toks[6].split("/")
    toks[6] = f"{int(num) + 1}/{den}"
    lines[idx] = " ".join(toks)
    trace.write_text("\n".join(lines) + "\n")
    r = subprocess.run(cmd + ["verify-trace", str(trace)], capture_output=True, text=True)
    assert r.returncode == EXIT_INVALID and "invalid at step 0" in r.stdout


def test_verify_trace_malformed(capsys, tmp_path):
    f = tmp_path / "bad.trace"
    f.write_text("seed 1\n0.5 0\ntarget 0 0\n")
    code, out, _ = run(capsys, "verify-trace", str(f))
    assert code == EXIT_INVALID and "line 2" in out


def test_svg(capsys):
    code, out, _ = run(capsys, "svg", "--points", TRAP.replace("\n", ";"), "--lines")
    assert code == 0 and out.count("<circle") == 6 and out.count('fill="#999"') == 2
    assert out.count("<line") == 6


def test_emit_svg_edge_cases():
    import xml.dom.minidom

    for doc in (emit_svg([]), emit_svg([(F(1, 3), 2)]), emit_svg([(0, 0), (1, 1)], [(F(1, 2), 3)])):
        xml.dom.minidom.parseString(doc)
    assert emit_svg([]).count("<circle") == 0
    assert emit_svg([(F(1, 3), 2)]).count("<circle") == 1
