import json

import pytest

from sepmaps import Dims, psd_check, partial_transpose, three_by_three_family
from sepmaps.cli import main, state_from_json, state_to_json

from conftest import max_abs


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- state file round-trip ---------------------------------------------------


def test_state_roundtrip_is_exact():
    op = three_by_three_family(2.5)
    loaded, meta = state_from_json(state_to_json(op, {"label": "x"}))
    assert loaded.dims == op.dims
    assert max_abs(loaded.matrix, op.matrix) == 0.0
    assert meta == {"label": "x"}


def test_state_file_diagnostics():
    with pytest.raises(Exception, match="JSON"):
        state_from_json("{not json")
    with pytest.raises(Exception, match="schema"):
        state_from_json(json.dumps({"dims": [2, 2], "matrix": []}))
    with pytest.raises(Exception, match="dims"):
        state_from_json(json.dumps({"schema": 1, "dims": [2], "matrix": []}))
    doc = json.loads(state_to_json(three_by_three_family(1.0)))
    doc["matrix"][0][1] = [1.0, 0.0]  # break hermiticity
    with pytest.raises(Exception, match="Hermitian"):
        state_from_json(json.dumps(doc))


# -- generate ------------------------------------------------------------------


def test_generate_rho_beta(tmp_path, capsys):
    path = tmp_path / "state.json"
    code, out, err = run_cli(capsys, "generate", "rho_beta", "--beta", "2.5", "-o", str(path))
    assert code == 0
    loaded, meta = state_from_json(path.read_text())
    assert psd_check(loaded).holds
    assert abs(loaded.trace() - 1.0) < 1e-12
    assert "rho_beta" in meta["label"]


def test_generate_horodecki_is_ppt_on_load(tmp_path, capsys):
    path = tmp_path / "h.json"
    code, _, _ = run_cli(capsys, "generate", "horodecki2x4", "--a", "0.5", "-o", str(path))
    assert code == 0
    loaded, _ = state_from_json(path.read_text())
    assert psd_check(partial_transpose(loaded, "A")).holds


def test_generate_random_density_deterministic(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    for p in (p1, p2):
        code, _, _ = run_cli(capsys, "generate", "random_density", "--dims", "3", "3",
                             "--seed", "7", "-o", str(p))
        assert code == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_generate_bad_params(capsys):
    code, _, err = run_cli(capsys, "generate", "horodecki2x4", "--a", "1.5")
    assert code == 2
    assert "a must lie" in err


# -- analyze ---------------------------------------------------------------------


def test_analyze_maximally_mixed_2x4(tmp_path, capsys):
    path = tmp_path / "mixed.json"
    run_cli(capsys, "generate", "horodecki_smoothed", "--a", "0.0", "--p", "0.0", "-o", str(path))
    code, out, _ = run_cli(capsys, "analyze", str(path))
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["summary"]["kind"] == "separable"


def test_analyze_smoothed_horodecki_example(tmp_path, capsys):
    path = tmp_path / "rap.json"
    run_cli(capsys, "generate", "horodecki_smoothed", "--a", "0.03", "--p", "0.19", "-o", str(path))
    code, out, _ = run_cli(capsys, "analyze", str(path))
    assert code == 0
    report = json.loads(out)
    by_label = {v["criterion"]: v for v in report["verdicts"] if v.get("params", {}).get("alpha") == 2.0
                or v["criterion"] == "purity_ball"}
    crit1 = [v for v in report["verdicts"]
             if v["criterion"] == "criterion1" and v["params"]["alpha"] == 2.0]
    assert crit1 and crit1[0]["kind"] == "separable"
    ball = [v for v in report["verdicts"] if v["criterion"] == "purity_ball"]
    assert ball and ball[0]["kind"] == "inconclusive"
    assert report["summary"]["kind"] == "separable"


def test_analyze_npt_state(tmp_path, capsys):
    path = tmp_path / "npt.json"
    run_cli(capsys, "generate", "rho_beta", "--beta", "0.1", "-o", str(path))
    code, out, _ = run_cli(capsys, "analyze", str(path))
    assert code == 0
    assert json.loads(out)["summary"]["kind"] == "entangled_npt"


def test_analyze_invalid_input_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{]")
    code, _, err = run_cli(capsys, "analyze", str(path))
    assert code == 2 and "invalid state file" in err
    code, _, err = run_cli(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 2


def test_analyze_reports_are_byte_stable(tmp_path, capsys):
    path = tmp_path / "s.json"
    run_cli(capsys, "generate", "rho_beta", "--beta", "3.0", "-o", str(path))
    o1, o2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run_cli(capsys, "analyze", str(path), "-o", str(o1))
    run_cli(capsys, "analyze", str(path), "-o", str(o2))
    assert o1.read_bytes() == o2.read_bytes()


# -- scan -------------------------------------------------------------------------


def test_scan_reduction_boundary(tmp_path, capsys):
    out_path = tmp_path / "scan.csv"
    code, _, _ = run_cli(capsys, "scan", "reduction", "--dims", "2", "2",
                         "--alpha", "-1.5:2.5:0.1", "--samples", "10", "-o", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    emp = [float(r["alpha"]) for r in rows
           if float(r["worst_psd_margin"]) >= -1e-9 and float(r["worst_ppt_margin"]) >= -1e-9]
    assert abs(min(emp) - (-1.0)) <= 0.1 + 1e-9
    assert abs(max(emp) - 2.0) <= 0.1 + 1e-9


def test_scan_csv_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, _, _ = run_cli(capsys, "scan", "bh2", "--dims", "2", "2", "--alpha", "-1:3:0.5",
                             "--beta", "-1:3:0.5", "--samples", "8", "--seed", "4", "-o", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_scan_theorem_overlay(tmp_path, capsys):
    path = tmp_path / "o.csv"
    code, _, _ = run_cli(capsys, "scan", "ando2xN", "--dims", "2", "3", "--k", "-1",
                         "--alpha", "-0.9:1.0:0.1", "--samples", "8",
                         "--theorem-overlay", "-o", str(path))
    assert code == 0
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    assert header[-1] == "theorem_inside"
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    # proven region never contradicted: inside points stay separable
    for r in rows:
        if r["theorem_inside"] == "1":
            assert float(r["worst_psd_margin"]) >= -1e-8
            assert float(r["worst_ppt_margin"]) >= -1e-8
    # empirical lower edge reaches at least the proven -3/4
    emp = [float(r["alpha"]) for r in rows if float(r["worst_psd_margin"]) >= -1e-9
           and float(r["worst_ppt_margin"]) >= -1e-9]
    assert min(emp) <= -0.75 + 1e-9


def test_scan_missing_axis_exits_2(capsys):
    code, _, err = run_cli(capsys, "scan", "bh2", "--dims", "2", "2", "--alpha", "1.0")
    assert code == 2 and "beta" in err


# -- verify --------------------------------------------------------------------------


def test_verify_roundtrips_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "roundtrips")
    assert code == 0
    assert "[PASS] roundtrip_identities" in out
    assert "1/1 checks passed" in out


def test_verify_unknown_suite(capsys):
    code, _, err = run_cli(capsys, "verify", "bogus")
    assert code == 2 and "no checks match" in err


def test_generate_schmidt_and_max_entangled(tmp_path, capsys):
    path = tmp_path / "s.json"
    code, _, _ = run_cli(capsys, "generate", "schmidt", "--coeffs", "0.8,0.6",
                         "--dims", "2", "3", "-o", str(path))
    assert code == 0
    loaded, _ = state_from_json(path.read_text())
    assert loaded.dims == Dims(2, 3)
    code, out, _ = run_cli(capsys, "generate", "maximally_entangled", "--d", "3")
    assert code == 0
    loaded, _ = state_from_json(out)
    assert abs(loaded.trace() - 1.0) < 1e-12


def test_analyze_sweep_overrides(tmp_path, capsys):
    path = tmp_path / "s.json"
    run_cli(capsys, "generate", "horodecki_smoothed", "--a", "0.03", "--p", "0.19", "-o", str(path))
    code, out, _ = run_cli(capsys, "analyze", str(path), "--criteria", "criterion1",
                           "--criterion1-alphas", "2")
    assert code == 0
    report = json.loads(out)
    assert len(report["verdicts"]) == 1
    assert report["verdicts"][0]["params"]["alpha"] == 2.0
    assert report["verdicts"][0]["kind"] == "separable"


def test_scan_grid_shorthand(tmp_path, capsys):
    path = tmp_path / "g.csv"
    code, _, _ = run_cli(capsys, "scan", "bh2", "--dims", "2", "2", "--grid", "1.0",
                         "--samples", "6", "-o", str(path))
    assert code == 0
    lines = path.read_text().strip().splitlines()
    assert len(lines) == 1 + 49  # 7x7 points over [-2, 4] step 1
