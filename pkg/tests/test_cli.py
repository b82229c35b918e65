import json

import numpy as np
import pytest

import sumspaces as ss
from sumspaces.cli import main


@pytest.fixture
def pair_files(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps(ss.subspace_to_json(
        ss.from_spanning(np.array([[1.0], [0.0]])))))
    b.write_text(json.dumps(ss.subspace_to_json(
        ss.from_spanning(np.array([[1.0], [1.0]])))))
    return str(a), str(b)


def _run(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_pair_command_reports_angle(pair_files, capsys):
    a, b = pair_files
    code, report = _run(["pair", "--a", a, "--b", b], capsys)
    assert code == 0
    assert report["friedrichs_angle"] == pytest.approx(np.pi / 4)
    crits = {e["criterion"] for e in report["margins"]["pair_criteria"]["entries"]}
    assert "c1_one_minus_max_a" in crits and "c6_one_minus_product" in crits
    assert report["provenance"]["version"] == ss.__version__


def test_calculus_command_spectrum(pair_files, capsys):
    a, b = pair_files
    code, report = _run(["calculus", "--a", a, "--b", b,
                         "--f1", "1", "--f2", "1"], capsys)
    assert code == 0
    real_parts = sorted(z[0] for z in report["spectrum"])
    assert real_parts == pytest.approx([1 - np.sqrt(0.5), 1 + np.sqrt(0.5)])


def test_system_command_with_alpha(tmp_path, capsys):
    sysfile = tmp_path / "sys.json"
    e = np.eye(2)
    S = ss.SubspaceSystem(2, [ss.from_spanning(e[:, [0]]),
                              ss.from_spanning(e[:, [1]])])
    sysfile.write_text(json.dumps(ss.system_to_json(S)))
    code, report = _run(["system", "--members", str(sysfile),
                         "--alpha", "1.0,1.0"], capsys)
    assert code == 0
    assert "linear_combination" in report["margins"]
    assert max(report["dilation_spectrum"]) == pytest.approx(0.5)


def test_seed_flag_accepted_before_and_after_subcommand(pair_files, capsys):
    a, b = pair_files
    code1, r1 = _run(["--seed", "5", "pair", "--a", a, "--b", b], capsys)
    code2, r2 = _run(["pair", "--a", a, "--b", b, "--seed", "5"], capsys)
    assert code1 == code2 == 0
    assert r1["provenance"]["seed"] == r2["provenance"]["seed"] == 5


def test_missing_file_is_io_error(capsys):
    code = main(["pair", "--a", "/nonexistent.json", "--b", "/nonexistent.json"])
    assert code == 3


def test_malformed_json_is_io_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = main(["pair", "--a", str(bad), "--b", str(bad)])
    assert code == 3


def test_precondition_error_is_exit_2(tmp_path, capsys):
    sysfile = tmp_path / "sys.json"
    sysfile.write_text(json.dumps(ss.system_to_json(
        ss.SubspaceSystem(2, [ss.zero_subspace(2), ss.zero_subspace(2)]))))
    code, report = _run(["reduce", "--members", str(sysfile)], capsys)
    assert code == 2
    assert report["error"]["type"] == "GapTooSmall"


def test_blocks_command_family_file(tmp_path, capsys):
    spec = tmp_path / "family.json"
    spec.write_text(json.dumps({"family": "one_over_k", "n": 3}))
    code, report = _run(["blocks", "--family-file", str(spec),
                         "--horizon", "30"], capsys)
    assert code == 0
    assert report["verdict"]["status"] in ("gap_vanishing", "inconclusive")
    assert len(report["verdict"]["gaps"]) == 30


def test_sum_as_two_command(capsys):
    code, report = _run(["sum-as-two", "--family", "compact_triple",
                         "--horizon", "10"], capsys)
    assert code == 0
    assert len(report["artifacts"]["m1_dims"]) == 10


def test_images_pradius_command(tmp_path, capsys):
    opfile = tmp_path / "ops.json"
    F = ss.OperatorFamily(2, [np.diag([1.0, 0.0])], ["nonnegative"])
    opfile.write_text(json.dumps(F.to_json()))
    code, report = _run(["images", "--operators", str(opfile),
                         "--analysis", "pradius"], capsys)
    assert code == 0
    assert report["verdict"] == "deficient"


def test_out_flag_writes_file(pair_files, tmp_path, capsys):
    a, b = pair_files
    out = tmp_path / "report.json"
    code = main(["pair", "--a", a, "--b", b, "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["request"]["command"] == "pair"
