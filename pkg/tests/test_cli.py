import json
import subprocess
import sys

import pytest

from symred.cli import ALL_CASES, main, resolve_cases


def _run(args, capsys):
    code = main(args)
    return code, capsys.readouterr()


def test_unknown_case_is_usage_error(capsys):
    code, out = _run(["nosuchcase"], capsys)
    assert code == 2 and "unknown case" in out.err


def test_no_arguments_is_usage_error(capsys):
    code, _ = _run([], capsys)
    assert code == 2


def test_sp_1_1_passes_with_non_reduced_verdict(capsys):
    code, out = _run(["sp:1:1", "--json"], capsys)
    assert code == 0
    (rep,) = json.loads(out.out)
    assert set(rep) == {"id", "claim", "anchor", "verdict", "witnesses", "millis"}
    assert rep["verdict"] == "pass"
    assert any("not radical" in w for w in rep["witnesses"])


def test_sl2c2_reports_six_checks(capsys):
    code, out = _run(["sl2c2", "--json"], capsys)
    assert code == 0
    (rep,) = json.loads(out.out)
    for tag in ("(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)"):
        assert any(w.startswith(tag) for w in rep["witnesses"])


def test_all_is_the_sorted_union():
    assert resolve_cases(["all"]) == sorted(ALL_CASES)
    assert resolve_cases(["sym3", "all", "sym3"]) == sorted(ALL_CASES)


def test_json_is_byte_identical_and_sorted(capsys):
    _, first = _run(["sym3", "orbits", "sp:1:2", "--json", "--no-timing", "--seed", "7"], capsys)
    _, second = _run(["sp:1:2", "sym3", "orbits", "--json", "--no-timing", "--seed", "7"], capsys)
    assert first.out == second.out
    assert [r["id"] for r in json.loads(first.out)] == ["orbits", "sp:1:2", "sym3"]


def test_workers_give_the_same_reports(capsys):
    _, serial = _run(["sym3", "poincare", "sp:1:1", "--json", "--no-timing"], capsys)
    _, parallel = _run(["sym3", "poincare", "sp:1:1", "--json", "--no-timing", "--workers", "3"], capsys)
    assert serial.out == parallel.out


def test_all_matches_case_by_case(capsys):
    code, out = _run(["all", "--json", "--no-timing"], capsys)
    combined = {r["id"]: r for r in json.loads(out.out)}
    for case in ("sym4", "blowup"):
        _, single = _run([case, "--json", "--no-timing"], capsys)
        assert json.loads(single.out)[0] == combined[case]
    verdicts = {r["verdict"] for r in combined.values()}
    assert code == (1 if "fail" in verdicts else 0)


def test_timeout_gives_resource_limit(capsys):
    code, out = _run(["sl2c2", "--timeout", "0.01", "--json"], capsys)
    assert code == 3
    assert json.loads(out.out)[0]["verdict"] == "resource-limit"


def test_degree_bound_gives_resource_limit(capsys):
    code, _ = _run(["sym4", "--degree-bound", "3"], capsys)
    assert code == 3


def test_export_ideals(tmp_path, capsys):
    code, _ = _run(["sym3", "--export-ideals", str(tmp_path)], capsys)
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["sym3__kernel.txt", "sym3__moment.txt"]
    lines = (tmp_path / "sym3__kernel.txt").read_text().splitlines()
    assert lines == ["# ring: F,d0,d4", "F^4 - 16*d0*d4"]


@pytest.mark.parametrize("args,code", [(["sp:1:1"], 0), (["bogus"], 2)])
def test_module_entry_point(args, code):
    proc = subprocess.run([sys.executable, "-m", "symred", *args], capture_output=True, text=True)
    assert proc.returncode == code
