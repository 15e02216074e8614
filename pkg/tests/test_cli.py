import json
import subprocess
import sys

import pytest

from hopf_spectra import cli
from hopf_spectra.graph import Classification, GraphCurve
from hopf_spectra.linsys import FatPointScheme, GeneralMemberError
from hopf_spectra.verify import SuiteResult


def write_curve(tmp_path, P, Q, name="curve.json"):
    path = tmp_path / name
    D = GraphCurve.from_coeffs(P, Q)
    path.write_text(json.dumps(D.to_json()))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_irregular(tmp_path, capsys):
    # P = s^2, Q = st + t^2
    code, out, _ = run(capsys, "analyze", "--curve", write_curve(tmp_path, [0, 0, 1], [1, 1, 0]))
    assert code == 0
    report = json.loads(out)
    assert report["classification"] == {"kind": "irregular", "weights": [1, 0, 0, 0], "total": 1}
    assert [sp["type"] for sp in report["spectral"]["singular_points"]] == ["A1"]
    assert report["spectral"]["geometric_genus"] == 2
    assert report["spectral"]["parity_check"] is True


def test_analyze_regular(tmp_path, capsys):
    # P = st, Q = s^2 + t^2
    code, out, _ = run(capsys, "analyze", "--curve", write_curve(tmp_path, [0, 1, 0], [1, 0, 1]))
    report = json.loads(out)
    assert code == 0
    assert report["classification"]["kind"] == "regular"
    assert report["spectral"]["geometric_genus"] == 3
    assert report["ramification"]["rh_ok"] is True


def test_analyze_jump(tmp_path, capsys):
    # P = st, Q = s(s + t)
    code, out, _ = run(capsys, "analyze", "--curve", write_curve(tmp_path, [0, 1, 0], [0, 1, 1]))
    report = json.loads(out)
    assert code == 0
    assert report["smooth"] is False
    assert report["verdict"] == "has jumps: vertical component at [0:1]"


def test_analyze_custom_thetas(tmp_path, capsys):
    thetas = tmp_path / "thetas.json"
    thetas.write_text(json.dumps({"thetas": [[1, 0], [0, 1], [1, 2], [2, 1]]}))
    code, out, _ = run(capsys, "analyze", "--curve", write_curve(tmp_path, [0, 1, 0], [1, 0, 1]),
                       "--thetas", str(thetas))
    assert code == 0
    assert json.loads(out)["thetas"][2] == [1, 2]


@pytest.mark.parametrize("content", ["not json", '{"n": 2}', '{"n": 2, "P": {"degree": 2, "coeffs": [1]}, "Q": {}}'])
def test_analyze_bad_input(tmp_path, capsys, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, _, err = run(capsys, "analyze", "--curve", str(path))
    assert code == 2 and err.startswith("error:")


def test_missing_file_and_bad_args(capsys):
    assert run(capsys, "analyze", "--curve", "/nonexistent.json")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "survey", "--n", "3")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_construct_kinds(capsys):
    code, out, _ = run(capsys, "construct", "maxweight", "--n", "3", "--seed", "5")
    c = json.loads(out)
    assert code == 0 and c["seed"] == 5
    assert c["classification"]["weights"] == [2, 2, 0, 0]
    assert c["certificate"]["h0"] == 2
    code, out, _ = run(capsys, "construct", "tangency", "--n", "4", "--pattern", "1,2,3")
    c = json.loads(out)
    assert code == 0 and c["codimension"] == 3
    assert c["classification"]["weights"] == [1, 1, 1, 0]
    code, out, _ = run(capsys, "construct", "profile", "--n", "5", "--theta", "3", "--profile", "3,2")
    c = json.loads(out)
    assert code == 0 and c["codimension_bound"] == 3
    assert FatPointScheme.from_json(c["scheme"]).degree == 5
    assert Classification.from_json(c["classification"]).per_theta_weights == (0, 0, 3, 0)


def test_construct_input_errors(capsys):
    assert run(capsys, "construct", "profile", "--n", "3", "--theta", "1", "--profile", "5")[0] == 2
    assert run(capsys, "construct", "tangency", "--n", "3", "--pattern", "1,2,3")[0] == 2
    assert run(capsys, "construct", "tangency", "--n", "3", "--pattern", "1,x")[0] == 2


def test_construct_failure_is_exit_1(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise GeneralMemberError("no general member found", {"attempt": 64, "problems": ["not smooth"]})

    monkeypatch.setattr(cli, "construct_max_weight", boom)
    code, _, err = run(capsys, "construct", "maxweight", "--n", "3")
    assert code == 1 and "not smooth" in err


def test_seed_environment_override(monkeypatch, capsys):
    monkeypatch.setenv("HOPF_SPECTRA_SEED", "17")
    code, out, _ = run(capsys, "construct", "tangency", "--n", "3", "--pattern", "2")
    first = json.loads(out)
    assert code == 0 and first["seed"] == 17
    _, again, _ = run(capsys, "construct", "tangency", "--n", "3", "--pattern", "2", "--seed", "17")
    assert json.loads(again) == first
    monkeypatch.setenv("HOPF_SPECTRA_SEED", "abc")
    assert run(capsys, "construct", "tangency", "--n", "3", "--pattern", "2")[0] == 2


def test_survey_csv_is_reproducible(capsys):
    _, a, _ = run(capsys, "survey", "--n", "3", "--samples", "30", "--seed", "1", "--csv")
    _, b, _ = run(capsys, "survey", "--n", "3", "--samples", "30", "--seed", "1", "--csv")
    assert a == b
    assert a.splitlines()[0] == "n,samples,bound,seed,smooth,regular,irregular,ordinary_ram,distinct_images,rh_ok"


def test_survey_json(capsys):
    code, out, _ = run(capsys, "survey", "--n", "2", "--samples", "20", "--bound", "10")
    stats = json.loads(out)
    assert code == 0 and stats["coefficient_bound"] == 10
    assert stats["counts"]["smooth"] <= 20
    assert run(capsys, "survey", "--n", "1", "--samples", "5")[0] == 2


def test_verify_small_range(capsys):
    code, out, _ = run(capsys, "verify", "--n-min", "2", "--n-max", "3", "--samples", "20",
                       "--survey-samples", "10")
    result = json.loads(out)
    assert code == 0 and result["passed"] is True
    assert set(result["matrix"]) == {"2", "3"}
    assert result["matrix"]["2"]["n2_weight_vectors"] is True


def test_verify_reports_failure(monkeypatch, capsys):
    bad = SuiteResult("weight_bound", 2, checked=1)
    bad.fail(curve={"n": 2}, weight=9)
    monkeypatch.setattr(cli, "run_all", lambda *a, **k: [SuiteResult("x", 2, checked=1), bad])
    code, out, _ = run(capsys, "verify", "--n-min", "2", "--n-max", "2")
    result = json.loads(out)
    assert code == 1 and result["passed"] is False
    assert result["failures"][0]["failures"] == [{"curve": {"n": 2}, "weight": 9}]
    assert run(capsys, "verify", "--n-min", "3", "--n-max", "2")[0] == 2


def test_betti(capsys):
    code, out, _ = run(capsys, "betti", "--n", "2", "--betti-a", "1,1")
    assert code == 0 and json.loads(out)["betti"] == [1, 7, 21, 35, 35, 21, 7, 1]
    assert run(capsys, "betti", "--n", "2", "--betti-a", "1,0,0,0,0,0,1")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopf_spectra", "betti", "--n", "2", "--betti-a", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["betti"] == [1, 6, 15, 20, 15, 6, 1]


def test_verify_default_range_passes(capsys):
    code, out, _ = run(capsys, "verify", "--n-min", "2", "--n-max", "5")
    result = json.loads(out)
    assert code == 0 and result["seed"] == 0
    assert all(all(row.values()) for row in result["matrix"].values())
