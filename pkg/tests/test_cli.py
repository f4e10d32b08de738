import json
from importlib import resources

import pytest

from wondertoric import cli


@pytest.fixture(scope="module")
def data_dir():
    return resources.files("wondertoric") / "data"


def fixture_path(data_dir, name):
    return str(data_dir / name)


def run_cli(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_bundled_fixtures(data_dir):
    warnings = []
    arr, fan = cli.parse_inputs(fixture_path(data_dir, "running.arr.json"),
                                fixture_path(data_dir, "running.fan.json"),
                                warnings)
    assert len(arr.subtori) == 3
    assert fan.nrays == 14
    assert not warnings


def test_phase_fraction_rules():
    assert cli._parse_phase("1/2") == 0.5
    with pytest.raises(cli.InputError):
        cli._parse_phase("0.5")


def test_missing_max_cones(tmp_path, capsys, data_dir):
    bad = tmp_path / "fan.json"
    bad.write_text(json.dumps({"ambient_rank": 2, "rays": [[1, 0]]}))
    code, _, err = run_cli(capsys, [
        "toric-betti",
        "--arrangement", fixture_path(data_dir, "a22.arr.json"),
        "--fan", str(bad)])
    assert code == 2
    assert "max_cones" in err


def test_nonprimitive_ray_warns(tmp_path):
    path = tmp_path / "fan.json"
    path.write_text(json.dumps({
        "ambient_rank": 1, "rays": [[2], [-1]],
        "max_cones": [[0], [1]]}))
    warnings = []
    fan = cli.parse_fan(str(path), warnings)
    assert fan.rays[0] == (1,)
    assert warnings and "primitive" in warnings[0]


def test_rank_mismatch(tmp_path, data_dir):
    path = tmp_path / "fan.json"
    path.write_text(json.dumps({
        "ambient_rank": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]}))
    with pytest.raises(cli.InputError):
        cli.parse_inputs(fixture_path(data_dir, "running.arr.json"),
                         str(path), [])


def test_building_min_running(capsys, data_dir):
    code, out, _ = run_cli(capsys, [
        "building", "--arrangement", fixture_path(data_dir, "running.arr.json"),
        "--building", "min", "--deterministic"])
    assert code == 0
    report = json.loads(out)
    assert report["count"] == 6
    assert report["is_geometric"]


def test_building_minwc_running(capsys, data_dir):
    code, out, _ = run_cli(capsys, [
        "building", "--arrangement", fixture_path(data_dir, "running.arr.json"),
        "--building", "minwc", "--deterministic"])
    assert json.loads(out)["count"] == 9 and code == 0


def test_poset_running(capsys, data_dir):
    code, out, _ = run_cli(capsys, [
        "poset", "--arrangement", fixture_path(data_dir, "running.arr.json"),
        "--deterministic"])
    report = json.loads(out)
    assert code == 0
    assert len(report["layers"]) == 10
    assert len(report["covers"]) == 15


def test_blowup_running(capsys, data_dir):
    code, out, _ = run_cli(capsys, [
        "blowup", "--arrangement", fixture_path(data_dir, "running.arr.json"),
        "--building", "min", "--deterministic"])
    report = json.loads(out)
    assert code == 0
    assert len(report["elements"]) == 22
    assert report["locally_boolean"]


def test_explicit_building_file(tmp_path, capsys, data_dir):
    sel = tmp_path / "building.json"
    sel.write_text(json.dumps({"labels": ["H1", "H2"]}))
    code, out, _ = run_cli(capsys, [
        "building", "--arrangement", fixture_path(data_dir, "a22.arr.json"),
        "--building", str(sel), "--deterministic"])
    assert code == 0
    assert json.loads(out)["members"] == ["H1", "H2"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"labels": ["H1"]}))
    code, _, err = run_cli(capsys, [
        "building", "--arrangement", fixture_path(data_dir, "a22.arr.json"),
        "--building", str(bad)])
    assert code == 2 and "building" in err


def test_model_betti_a22(capsys, data_dir):
    code, out, _ = run_cli(capsys, [
        "model-betti", "--arrangement", fixture_path(data_dir, "a22.arr.json"),
        "--fan", fixture_path(data_dir, "a22.fan.json"),
        "--building", "max", "--deterministic"])
    report = json.loads(out)
    assert code == 0
    assert report["betti"] == [1, 8, 1]
    assert report["torsion"] == []
    assert report["groebner_verified"]


def test_toric_betti_a22(capsys, data_dir):
    code, out, _ = run_cli(capsys, [
        "toric-betti", "--arrangement", fixture_path(data_dir, "a22.arr.json"),
        "--fan", fixture_path(data_dir, "a22.fan.json"), "--deterministic"])
    report = json.loads(out)
    assert code == 0 and report["betti"] == [1, 6, 1]


def test_verify_a22(capsys, data_dir):
    code, out, _ = run_cli(capsys, [
        "verify", "--arrangement", fixture_path(data_dir, "a22.arr.json"),
        "--fan", fixture_path(data_dir, "a22.fan.json"),
        "--building", "max", "--deterministic"])
    report = json.loads(out)
    assert code == 0
    assert report["groebner_verified"]
    assert report["order_invariance"]["isomorphic"]
    assert report["restriction_map"]["failures"] == []
    rec = report["recursions"]["AM"]
    if rec["codim"] == 1:
        assert rec["correction_is_zero"]
    assert rec["equal"] and report["recursions"]["B"]["equal"]


def test_admissible_a22(capsys, data_dir):
    code, out, _ = run_cli(capsys, [
        "admissible", "--arrangement", fixture_path(data_dir, "a22.arr.json"),
        "--fan", fixture_path(data_dir, "a22.fan.json"),
        "--building", "max", "--deterministic"])
    report = json.loads(out)
    assert code == 0
    assert report["b_generating_function"] == [1, 8, 1]


def test_deterministic_reports_are_identical(capsys, data_dir):
    argv = ["building", "--arrangement", fixture_path(data_dir, "running.arr.json"),
            "--deterministic"]
    _, out1, _ = run_cli(capsys, argv)
    _, out2, _ = run_cli(capsys, argv)
    assert out1 == out2


def test_table_format(capsys, data_dir):
    code, out, _ = run_cli(capsys, [
        "toric-betti", "--arrangement", fixture_path(data_dir, "a22.arr.json"),
        "--fan", fixture_path(data_dir, "a22.fan.json"),
        "--deterministic", "--format", "table"])
    assert code == 0
    assert "H^0" in out and "H^2" in out


def test_out_file(tmp_path, capsys, data_dir):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, [
        "poset", "--arrangement", fixture_path(data_dir, "a22.arr.json"),
        "--deterministic", "--out", str(target)])
    assert code == 0 and not out
    assert json.loads(target.read_text())["command"] == "poset"


def test_model_betti_running(capsys, data_dir):
    # full pipeline through the CLI on the bundled fixtures
    code, out, _ = run_cli(capsys, [
        "model-betti", "--arrangement", fixture_path(data_dir, "running.arr.json"),
        "--fan", fixture_path(data_dir, "running.fan.json"),
        "--building", "min", "--deterministic"])
    report = json.loads(out)
    assert code == 0
    assert report["betti"] == [1, 15, 15, 1]
    assert report["torsion"] == []
    assert report["relation_counts"] == {"i": 278, "ii": 24, "iii": 168}
