import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from d21a.cli import Report, main, parse_crosses, parse_eval, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--json")
    assert code == 0
    rep = Report.from_json(out)
    assert rep.payload["count"] == 6
    assert {"p123IV"} in [set(c["members"]) for c in rep.payload["classes"]]


def test_spencer_table_row(capsys):
    code, out, _ = run(capsys, "spencer", "--diagram", "IV", "--crosses", "1,2,3")
    assert code == 0
    assert "H^1: C^{0|3}_-1" in out
    assert "H^2: C^{1|0}_0 + C^{3|0}_2" in out


def test_spencer_eval_matches_symbolic(capsys):
    _, sym, _ = run(capsys, "spencer", "--diagram", "I", "--crosses", "2,3", "--json")
    _, num, _ = run(capsys, "spencer", "--diagram", "I", "--crosses", "2,3", "--eval", "a=5/7", "--json")
    assert json.loads(sym)["payload"]["H"] == json.loads(num)["payload"]["H"]


def test_prolong_and_grading(capsys):
    code, out, _ = run(capsys, "prolong", "--diagram", "I", "--crosses", "2,3", "--mode", "m-g0", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["payload"]["levels"]["2"] == [1, 1]
    code, out, _ = run(capsys, "grading", "--diagram", "I", "--crosses", "1")
    assert code == 0 and "g0 = co(4)" in out


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "--eval", "a=2", "--json")
    assert code == 0
    assert json.loads(out)["payload"]["sdim"] == [9, 8]


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", "--case", "p1I", "--json")
    assert code == 0
    assert json.loads(out)["payload"]["sdim"] == [9, 8]


def test_reductions(capsys):
    code, out, _ = run(capsys, "reductions", "--case", "p2I")
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("argv", [
    ["grading", "--diagram", "I", "--crosses", "4"],
    ["grading", "--diagram", "V", "--crosses", "1"],
    ["grading", "--diagram", "I"],
    ["prolong", "--diagram", "I", "--crosses", "1", "--mode", "gk"],
    ["spencer", "--diagram", "I", "--crosses", "1", "--eval", "a=-1"],
    ["spencer", "--diagram", "I", "--crosses", "1", "--eval", "b=2"],
    ["verify"],
    ["verify", "--criterion", "13"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_verify_single_criterion(capsys):
    code, out, _ = run(capsys, "verify", "--criterion", "3", "--criterion", "6")
    assert code == 0
    assert out.splitlines()[0].startswith("PASS [ 3]")


def test_verify_reports_mismatch_with_witness(capsys):
    code, out, err = run(capsys, "verify", "--criterion", "9")
    assert code == 1
    assert out.startswith("FAIL [ 9]")
    assert "Gamma(s1, s2, s3)" in err


@given(st.text(max_size=30), st.dictionaries(st.text(max_size=5), st.integers(), max_size=3),
       st.lists(st.text(max_size=6), max_size=3), st.floats(0, 100, allow_nan=False), st.booleans())
def test_report_json_round_trip(verb, payload, locus, seconds, ok):
    rep = Report(verb, payload, locus, seconds, ok)
    assert Report.from_json(rep.to_json()) == rep


@given(st.permutations([1, 2, 3]), st.integers(1, 3))
def test_parse_crosses(perm, k):
    text = ",".join(map(str, perm[:k]))
    assert parse_crosses(text) == tuple(perm[:k])


def test_parse_eval():
    assert parse_eval("a=3/4")["a"] == pytest.approx(0.75)
    with pytest.raises(UsageError):
        parse_eval("a=0")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "d21a", "verify", "--criterion", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("PASS [ 1]")
