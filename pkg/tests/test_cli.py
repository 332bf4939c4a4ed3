import json
import os

import pytest

from uncertain_pm.cli import main

import _cli_cases
from _cli_cases import fx


@pytest.mark.parametrize("case", sorted(_cli_cases.CASES))
def test_golden_output(case, tmp_path):
    code, data, err = _cli_cases.run_case(case, str(tmp_path))
    assert code == 0, err
    with open(_cli_cases.golden_path(case), "rb") as fh:
        assert data == fh.read()


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_align_row(capsys):
    code, out, _ = run(["align", fx("running_example.json"), "--model", fx("healthcare_model.json")], capsys)
    assert code == 0 and out.splitlines()[0] == "ID192 lower=0 upper=3"


def test_discover_example(capsys):
    code, out, _ = run(["discover", fx("discovery_log.txt"), "--mode", "min", "--threshold", "15", "--tree"], capsys)
    assert (code, out) == (0, "->(a, b, e, f, g, X(h, i))\n")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["stats"],
        ["stats", "does-not-exist.txt"],
        ["bnet", fx("running_example.json"), "--trace", "nope", "--dot", "-"],
        ["discover", fx("discovery_log.txt"), "--mode", "avg", "--threshold", "1"],
        ["realize", fx("running_example.json"), "--trace", "ID192", "--cap", "0"],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 1 and out == "" and err


def test_validation_failure_exit_2(capsys):
    code, out, err = run(["parse", fx("bad.json")], capsys)
    assert code == 2 and out == ""
    assert "duplicate-id" in err and "probabilities-sum" in err


def test_syntax_and_schema_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("<a,{b>")
    code, _, err = run(["parse", str(bad)], capsys)
    assert code == 2 and "line 1" in err
    broken = tmp_path / "broken.json"
    broken.write_text('{"traces": 3}')
    assert run(["stats", str(broken)], capsys)[0] == 2


def test_probabilities_of_strong_trace_need_defaults(capsys):
    argv = ["realize", fx("running_example.json"), "--trace", "ID192", "--probs", "--samples", "1000"]
    assert run(argv, capsys)[0] == 2
    code, out, _ = run(argv + ["--defaults"], capsys)
    assert code == 0 and len(out.splitlines()) == 10


def test_cap_exceeded_exit_3(capsys):
    code, out, err = run(["stats", fx("discovery_log.txt"), "--cap", "5"], capsys)
    assert code == 3 and "t3\tevents=6\tweight=5\trealizations=>5" in out and err
    assert run(["realize", fx("running_example.json"), "--trace", "ID192", "--cap", "3"], capsys)[0] == 3
    code, out, _ = run(["align", fx("running_example.json"), "--model", fx("healthcare_model.json"), "--cap", "2"], capsys)
    assert code == 3 and out.splitlines()[0] == "ID192 lower=0 upper=capped"


def test_report_is_reproducible(tmp_path, capsys):
    reports = []
    for k in range(2):
        path = tmp_path / ("r%d.json" % k)
        argv = ["realize", fx("weak_example.json"), "--trace", "ID348", "--probs", "--samples", "2000", "--seed", "5",
                "--report", str(path)]
        assert run(argv, capsys)[0] == 0
        doc = json.loads(path.read_text())
        assert doc["elapsed_ms"] >= 0
        doc.pop("elapsed_ms")
        doc["command"] = [a for a in doc["command"] if not a.endswith(".json") or "fixtures" in a]
        reports.append(doc)
    assert reports[0] == reports[1]
    assert reports[0]["seed"] == 5 and reports[0]["results"]["realizations"] == 10
    assert list(reports[0]["inputs"]) == [fx("weak_example.json")]


def test_parse_formats_roundtrip(tmp_path, capsys):
    code, out, _ = run(["parse", fx("running_example.json"), "--out", "xes"], capsys)
    assert code == 0
    xes = tmp_path / "x.xes"
    xes.write_text(out)
    code, out2, _ = run(["parse", str(xes)], capsys)
    with open(fx("running_example.json")) as fh:
        assert out2 == fh.read()


def test_version(capsys):
    assert main(["--version"]) == 0
