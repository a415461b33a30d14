import json
import subprocess
import sys
from pathlib import Path

import pytest

import framecheck as fc
from framecheck.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

RECORD_KEYS = {"name", "passed", "max_residual", "samples_used", "witness", "note"}


def test_exit_code_zero_for_passing_suite(capsysbinary):
    assert main(["run", str(CONFIGS / "isotropic.ini")]) == 0
    out = capsysbinary.readouterr().out
    assert b"suite verdict: PASS" in out


def test_exit_code_one_for_failing_suite(capsysbinary):
    assert main(["run", str(CONFIGS / "anisotropic.ini")]) == 1
    out = capsysbinary.readouterr().out
    assert b"suite verdict: FAIL" in out
    assert b"witness" in out


def test_exit_code_two_for_malformed_config(capsys):
    assert main(["run", str(CONFIGS / "malformed.ini")]) == 2
    assert "kappa0" in capsys.readouterr().err


def test_exit_code_two_for_missing_file(capsys):
    assert main(["run", str(CONFIGS / "does_not_exist.ini")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_machine_report_schema(capsysbinary):
    code = main(["run", str(CONFIGS / "anisotropic.ini"), "--format", "machine"])
    assert code == 1
    payload = json.loads(capsysbinary.readouterr().out)
    assert sorted(payload.keys()) == ["checks", "config_text", "verdict", "version"]
    assert payload["verdict"] == "fail"
    assert payload["version"] == fc.__version__
    names = [c["name"] for c in payload["checks"]]
    assert names == list(fc.CHECK_NAMES)
    for record in payload["checks"]:
        assert set(record.keys()) == RECORD_KEYS


def test_machine_witness_block_for_failing_isotropy(capsysbinary):
    main(["run", str(CONFIGS / "anisotropic.ini"), "--format", "machine"])
    payload = json.loads(capsysbinary.readouterr().out)
    by_name = {c["name"]: c for c in payload["checks"]}
    iso = by_name["isotropy"]
    assert not iso["passed"]
    w = iso["witness"]
    assert len(w["group_element"]) == 3
    assert all(len(row) == 3 for row in w["group_element"])
    assert w["state"]["theta"] > 0
    assert len(w["state"]["grad_theta"]) == 3
    assert w["observer"] is None
    # passing checks carry no witness
    assert by_name["zero_map"]["witness"] is None
    # observer-dependent failures carry the observer matrix
    oi = by_name["observer_independence"]
    assert len(oi["witness"]["observer"]) == 3


def test_config_echo_round_trips(capsysbinary):
    main(["run", str(CONFIGS / "isotropic.ini"), "--format", "machine"])
    payload = json.loads(capsysbinary.readouterr().out)
    echoed = fc.parse_config(payload["config_text"])
    original = fc.parse_config((CONFIGS / "isotropic.ini").read_text())
    assert echoed == original


def test_reports_are_byte_identical_across_runs(capsysbinary):
    main(["run", str(CONFIGS / "anisotropic.ini"), "--format", "machine"])
    first = capsysbinary.readouterr().out
    main(["run", str(CONFIGS / "anisotropic.ini"), "--format", "machine"])
    second = capsysbinary.readouterr().out
    assert first == second


def test_flag_overrides_beat_config(capsysbinary):
    # a tolerance looser than the worst residual turns the failing suite green
    code = main(["run", str(CONFIGS / "anisotropic.ini"), "--tol", "3.0"])
    assert code == 0
    out = capsysbinary.readouterr().out
    assert b"suite verdict: PASS" in out
    # and the resolved config block reflects the override
    assert b"tol = 3.0" in out


def test_seed_override_changes_draws_not_verdict(capsysbinary):
    assert main(["run", str(CONFIGS / "anisotropic.ini"), "--seed", "9"]) == 1
    out1 = capsysbinary.readouterr().out
    assert main(["run", str(CONFIGS / "anisotropic.ini"), "--seed", "10"]) == 1
    out2 = capsysbinary.readouterr().out
    assert out1 != out2


def test_bad_flag_values_exit_two(capsys):
    assert main(["run", str(CONFIGS / "isotropic.ini"), "--seed", "-1"]) == 2
    assert main(["run", str(CONFIGS / "isotropic.ini"), "--tol", "0"]) == 2
    capsys.readouterr()


def test_catalog_lists_groups_and_families(capsys):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    for name, _ in fc.CATALOG_SUMMARY:
        assert name in out
    for family in fc.MODEL_FAMILIES:
        assert family in out


def test_demo_contrasts_the_two_conductors(capsys):
    assert main(["demo"]) == 0
    out = capsys.readouterr().out
    assert out.count("frame indifference: PASS") == 2
    assert "isotropy:           FAIL" in out
    assert "isotropy:           PASS" in out


def test_unknown_subcommand_exits_two():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_module_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "framecheck", "catalog"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert "full_orthogonal" in proc.stdout
