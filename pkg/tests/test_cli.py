"""Golden-file tests for the command line front end.

Each case runs in ``tests/golden``; stdout must match ``<case>.out`` byte
for byte and the exit status must match.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from qblowup import Ideal, PolyRing
from qblowup.cli import main, parse_problem, InputError

GOLDEN = Path(__file__).parent / "golden"

# (case name, argv, exit status)
CASES = [
    ("cusp_resolve", ["resolve-curve", "cusp.prob", "--summary"], 0),
    ("cusp_resolve_json", ["resolve-curve", "cusp.prob", "--json"], 0),
    ("node_resolve", ["resolve-curve", "node.prob"], 0),
    ("tacnode_resolve", ["resolve-curve", "tacnode.prob", "--summary"], 0),
    ("parabola_smooth", ["smooth-check", "parabola.prob"], 0),
    ("cusp_smooth", ["smooth-check", "cusp.prob"], 0),
    ("chart_smooth", ["smooth-check", "chart.prob"], 0),
    ("lex_gb", ["gb", "lexgb.prob"], 0),
    ("cusp_gb_lex_override", ["gb", "cusp.prob", "--order", "lex"], 0),
    ("membership", ["membership", "lexgb.prob", "--json"], 0),
    ("saturate", ["saturate", "saturate.prob"], 0),
    ("tangent_snc", ["snc-check", "tangent.prob"], 0),
    ("monomial", ["monomial-check", "monomial.prob"], 0),
    ("strict_transform", ["transform", "transform.prob", "--ideal", "I"], 0),
    ("total_transform", ["transform", "transform.prob", "--ideal", "I", "--kind", "total"], 0),
    ("blowup", ["blowup", "transform.prob"], 0),
    ("principalize", ["principalize", "principalize.prob"], 0),
    ("separate", ["separate", "separate.prob"], 0),
    ("jacobian", ["jacobian-ideal", "cusp.prob"], 0),
    ("node_singular_locus", ["singular-locus", "node.prob"], 0),
    ("node_max_order", ["max-order", "node.prob"], 0),
    ("cusp_strnorm", ["strnorm", "cuspdiv.prob"], 0),
    ("cusp_verify", ["verify", "cusp.prob"], 0),
]

# (argv, exit status, fragment expected on stderr)
ERRORS = [
    (["gb", "broken.prob"], 2, "broken.prob: error: line 2, column 23: unknown variable 'z'"),
    (["gb", "syntax.prob"], 2, "line 2, column 22"),
    (["gb", "duplicate.prob"], 2, "duplicate name 'I'"),
    (["frobnicate", "cusp.prob"], 2, "unknown command"),
    (["gb", "missing.prob"], 2, "cannot read"),
    (["gb", "cusp.prob", "--gb-cap", "0"], 2, "gb-cap must be positive"),
    (["gb", "cusp.prob", "--order", "weird"], 2, "error"),
    (["resolve-curve", "cusp.prob", "--max-steps", "2"], 3, "within 2 blow ups"),
    (["principalize", "cusp.prob"], 2, "needs 2 ideals"),
]


def run(argv, capsys):
    cwd = os.getcwd()
    os.chdir(GOLDEN)
    try:
        code = main(argv)
    finally:
        os.chdir(cwd)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name, argv, status", CASES, ids=[c[0] for c in CASES])
def test_golden_output(name, argv, status, capsys):
    code, out, _ = run(argv, capsys)
    assert code == status
    assert out == (GOLDEN / f"{name}.out").read_text(encoding="utf-8")


@pytest.mark.parametrize("argv, status, fragment", ERRORS, ids=[" ".join(e[0]) for e in ERRORS])
def test_error_exit_codes(argv, status, fragment, capsys):
    code, out, err = run(argv, capsys)
    assert code == status
    assert out == ""
    assert fragment in err


def test_repeated_runs_are_byte_identical(capsys):
    first = run(["resolve-curve", "cusp.prob", "--json"], capsys)[1]
    second = run(["resolve-curve", "cusp.prob", "--json"], capsys)[1]
    assert first == second


def test_json_polynomials_reparse(capsys):
    doc = json.loads(run(["resolve-curve", "cusp.prob", "--json"], capsys)[1])

    def walk(node):
        R = PolyRing(tuple(node["ring"]["vars"]))
        for text in node["relations"] + node.get("center", []):
            assert str(R(text)) == text
        for item in node.get("divisor", []):
            assert str(R(item["factor"])) == item["factor"]
        for gens in node.get("transforms", {}).values():
            for text in gens:
                assert str(R(text)) == text
        for kid in node.get("charts", []):
            walk(kid)

    walk(doc["tree"]["root"])


def test_verify_accepts_a_saved_trace(tmp_path, capsys):
    doc = run(["resolve-curve", "cusp.prob", "--json"], capsys)[1]
    path = tmp_path / "trace.json"
    path.write_text(doc, encoding="utf-8")
    code, out, _ = run(["verify", str(path)], capsys)
    assert code == 0
    assert out == "command: verify\nverified: true\nfailures: []\n"


def test_verify_rejects_a_damaged_trace(tmp_path, capsys):
    path = tmp_path / "trace.json"
    path.write_text('{"tree": {}}', encoding="utf-8")
    code, _, err = run(["verify", str(path)], capsys)
    assert code == 2 and "malformed trace" in err


def test_log_level_does_not_change_output(monkeypatch, capsys):
    quiet = run(["resolve-curve", "cusp.prob", "--json"], capsys)[1]
    monkeypatch.setenv("QBLOWUP_LOG", "DEBUG")
    loud = run(["resolve-curve", "cusp.prob", "--json", "--verbose"], capsys)[1]
    assert quiet == loud


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qblowup", "smooth-check", "parabola.prob"],
        cwd=GOLDEN, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "command: smooth-check\nsmooth: true\n"


# --- problem file parser ---------------------------------------------------------


def test_problem_file_blocks():
    text = (
        "ring x, y order grevlex\n"
        "relations = y - x^2\n"
        "ideal I = x, y   # trailing comment\n"
        "poly f = 3/2*x\n"
        "divisor D = (x)^2 (y - 1)\n"
        "point p = (1/2, -3)\n"
        "param n_max = 4\n"
    )
    prob = parse_problem(text)
    R = prob.ring
    assert R.variables == ("x", "y")
    assert prob.ideals["I"] == Ideal.parse(R, "x", "y")
    assert prob.relations == [R("y - x^2")]
    assert prob.divisors["D"] == [(R("x"), 2), (R("y - 1"), 1)]
    assert [str(c) for c in prob.points["p"]] == ["1/2", "-3"]
    assert prob.params["n_max"] == "4"


@pytest.mark.parametrize(
    "text, where",
    [
        ("ideal I = x\n", "line 1"),
        ("ring x, y\npoint p = (0)\n", "line 2"),
        ("ring x, y\nwhat is this\n", "line 2, column 1"),
        ("ring x, y\ndivisor D = x^2\n", "line 2"),
        ("", "empty"),
    ],
)
def test_problem_file_errors(text, where):
    with pytest.raises(InputError, match=where):
        parse_problem(text)
