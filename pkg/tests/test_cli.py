import json
from pathlib import Path

import pytest

from affqsp import checks, cli
from affqsp.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, run

ROOT = Path(__file__).resolve().parents[1]


def _write(tmp_path, obj, name="m.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_empty_manifest_passes(tmp_path):
    assert run({"checks": []}) == (EXIT_OK, run({"checks": []})[1])
    assert main(["run", _write(tmp_path, {"checks": []}), "--json", str(tmp_path / "out.json")]) == EXIT_OK
    report = json.loads((tmp_path / "out.json").read_text())
    assert report["summary"]["total"] == 0


def test_corrupted_word_fails_and_names_the_check(tmp_path):
    manifest = {"checks": [{"suite": "table1", "params": {"families": ["A"], "max_rank": 3,
                                                          "word_overrides": {"A3/1": "pi1 s3 s2 s1 s1"}}}]}
    code, report = run(manifest)
    assert code == EXIT_FAIL
    failed = [c["id"] for c in report["checks"] if c["status"] == "fail"]
    assert failed == ["table1/A3/i1"]
    out = tmp_path / "out.json"
    assert main(["run", _write(tmp_path, manifest), "--json", str(out)]) == EXIT_FAIL
    assert "table1/A3/i1" in out.read_text()


@pytest.mark.parametrize("bad", [
    "{not json",
    {"checks": [{"suite": "table1", "mode": "fast"}]},
    {"checks": [{"suite": "no_such_suite"}]},
    {"checks": [{"suite": "table1", "params": {"colour": 1}}]},
    {"tests": []},
])
def test_malformed_manifest_is_a_usage_error(tmp_path, bad):
    assert main(["run", _write(tmp_path, bad)]) == EXIT_USAGE


def test_missing_manifest_and_bad_arguments(tmp_path):
    assert main(["run", str(tmp_path / "absent.json")]) == EXIT_USAGE
    assert main(["verify", "nonsense"]) == EXIT_USAGE
    assert main(["braid", "apply", "--type", "A", "--n", "2", "--word", "s7", "--index", "1"]) == EXIT_USAGE
    assert main(["qchar", "sl2", "--n", "-1"]) == EXIT_USAGE


def test_reports_are_deterministic():
    manifest = {"checks": [
        {"suite": "fe_vanishing", "params": {"types": ["A2", "B2"]}, "seed": 3},
        {"suite": "qchar", "params": {"max_n": 3}},
        {"suite": "table1", "params": {"families": ["B"], "max_rank": 3}},
    ]}
    a = json.dumps(run(manifest)[1]["checks"], sort_keys=True)
    b = json.dumps(run(manifest, jobs=2)[1]["checks"], sort_keys=True)
    assert a == b


def test_every_check_has_an_anchor():
    for name in checks.SUITES:
        expanded = checks.expand_suite(name)
        assert expanded, name
        assert all(c.anchor for c in expanded), name


def test_schema_copies_agree():
    packaged = json.loads((ROOT / "src" / "affqsp" / "manifest.schema.json").read_text())
    documented = json.loads((ROOT / "docs" / "manifest.schema.json").read_text())
    assert packaged == documented


def test_verify_subcommand(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "table1", "--type", "B", "--n", "3", "--json", str(out)]) == EXIT_OK
    report = json.loads(out.read_text())
    assert [c["id"] for c in report["checks"]] == ["table1/B3/i1", "table1/B3/i2", "table1/B3/i3"]
    assert main(["verify", "table1", "--type", "C", "--n", "3", "--json", str(out)]) == EXIT_FAIL
    assert main(["verify", "table1", "--type", "C", "--n", "3", "--corrected", "--json", str(out)]) == EXIT_OK


def test_braid_subcommand(tmp_path):
    out = tmp_path / "b.json"
    args = ["braid", "apply", "--type", "A", "--n", "3", "--word", "s3 s2", "--gen", "F", "--index", "1"]
    assert main(args + ["--json", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["terms"] > 0
    qsp = ["braid", "apply", "--type", "B", "--n", "2", "--word", "s1 s2", "--gen", "B", "--index", "1",
           "--side", "qsp", "--json", str(out)]
    assert main(qsp) == EXIT_OK
    assert main(args[:-2] + ["--gen", "B", "--index", "1"]) == EXIT_USAGE
    assert main(["braid", "apply", "--type", "A", "--n", "2", "--word", "s1 s1", "--index", "1"]) == EXIT_USAGE
    assert main(["braid", "apply", "--type", "A", "--n", "2", "--word", "s1 s1", "--index", "1",
                 "--no-reduced-check", "--json", str(out)]) == EXIT_OK


def test_igood_subcommand(tmp_path):
    out = tmp_path / "g.json"
    assert main(["igood", "check", "--type", "B", "--n", "2", "--i", "1", "--json", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["report"]["pass"] is True
    assert main(["igood", "check", "--type", "B", "--n", "2", "--i", "0"]) == EXIT_USAGE


def test_qchar_subcommands(tmp_path):
    out = tmp_path / "q.json"
    assert main(["qchar", "sl2", "--n", "3", "--a", "C a^-1 q^2", "--json", str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    assert data["twist_matches_direct_sum"] and data["symmetric_under_partner"]
    assert len(data["chi_q"]) == 4
    roots = _write(tmp_path, {"Q": {"1": ["a"]}, "R": {"2": ["q"]}}, "roots.json")
    assert main(["qchar", "gamma", "--roots-file", roots, "--json", str(out)]) == EXIT_OK
    gammas = json.loads(out.read_text())["gamma"]
    assert [g["qtilde"] for g in gammas] == [["Ca"], ["q^-1"]]
    assert main(["qchar", "gamma", "--roots-file", _write(tmp_path, "[", "bad.json")]) == EXIT_USAGE


@pytest.mark.parametrize("suite,types", [
    ("fe_vanishing", ["A2", "B2", "C2"]),
    ("rank_two", ["B2", "C2"]),
    ("igood", ["A2", "B2", "C2"]),
    ("weak_compat", ["A2", "B2"]),
])
def test_exact_and_prob_modes_agree(suite, types):
    def statuses(mode):
        _, rep = run({"checks": [{"suite": suite, "params": {"types": types}, "mode": mode, "seed": 11}]})
        return {c["id"]: c["status"] for c in rep["checks"]}

    exact = statuses("exact")
    assert exact == statuses("prob")
    assert set(exact.values()) == {"pass"}


def test_budget_skip_is_not_a_failure():
    code, rep = run({"checks": [{"suite": "closed_forms", "params": {"types": ["D4"], "i": 2},
                                 "budget_seconds": 0.001}]})
    assert code == EXIT_OK
    assert rep["checks"][0]["status"] == "skipped (budget)"


def test_module_exposes_main():
    assert callable(cli.build_parser().parse_args)
