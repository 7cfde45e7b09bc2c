"""End-to-end CLI behavior through in-process main() calls."""

import json
import math

import numpy as np
import pytest

from boundarylab import channels, linalg
from boundarylab.cli import main
from boundarylab.errors import ClaimViolationError, NumericalError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def write_json(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


@pytest.fixture
def rho_file(tmp_path):
    return write_json(tmp_path / "rho.json",
                      linalg.matrix_to_json(np.diag([0.7, 0.2, 0.1])))


@pytest.fixture
def erasure_file(tmp_path):
    return write_json(tmp_path / "erasure.json", channels.erasure_choi(0.25).to_json())


def test_state_report(capsys, rho_file):
    payload = run_json(capsys, "state", "-i", rho_file)
    assert payload["command"] == "state"
    assert abs(payload["b"] - 0.1) < 1e-12
    assert payload["lower_bound_lambda_min"] == payload["b"]
    assert payload["boundary"] is False
    assert payload["method"] == "closed-form"
    cert = payload["certificate"]
    assert set(cert) == {"t", "x", "z", "residual"}
    assert cert["x"]["dim"] == 3
    assert payload["config"]["seed"] == 0


def test_povm_report(capsys, tmp_path):
    povm_obj = {"kind": "povm", "effects": [
        linalg.matrix_to_json(np.diag([0.7, 0.3])),
        linalg.matrix_to_json(np.diag([0.3, 0.7])),
    ]}
    payload = run_json(capsys, "povm", "-i", write_json(tmp_path / "p.json", povm_obj))
    assert abs(payload["b"] - 0.3) < 1e-12
    assert payload["boundary"] is False
    assert payload["certificate"]["outcome"] == 0
    assert abs(payload["certificate"]["t"] - 0.3) < 1e-12
    assert len(payload["certificate"]["a"]["effects"]) == 2


def test_channel_report(capsys, erasure_file):
    payload = run_json(capsys, "channel", "-i", erasure_file, "--samples", "40")
    assert payload["method"] == "scan-upper-bound"
    assert abs(payload["b"] - 0.1875) < 1e-3
    assert abs(payload["lower_bound_lambda_min"] - 0.125) < 1e-12
    assert payload["boundary"] is False
    assert payload["config"]["n_samples"] == 40
    assert payload["certificate"]["witness"]["kind"] == "choi"


def test_channel_rank2_flag(capsys, erasure_file):
    payload = run_json(capsys, "channel", "-i", erasure_file,
                       "--samples", "20", "--rank2")
    assert abs(payload["b"] - 0.1875) < 1e-3


def test_erasure_study_csv(capsys, tmp_path):
    out = tmp_path / "study.csv"
    cfg = write_json(tmp_path / "cfg.json", {"seed": 3, "n_samples": 25})
    payload = run_json(capsys, "erasure-study", "--config", cfg,
                       "--p-min", "0.1", "--p-max", "0.3", "--steps", "3",
                       "-o", str(out))
    assert payload["rows"] == 3
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# boundariness-lab v1, cmd=erasure-study, seed=3"
    assert lines[1].startswith("# config=")
    assert lines[2] == "p,b,lambda_min,scan_b_upper,gap"
    assert len(lines) == 3 + 3
    for line, p in zip(lines[3:], (0.1, 0.2, 0.3)):
        cells = [float(c) for c in line.split(",")]
        assert abs(cells[0] - p) < 1e-12
        assert abs(cells[1] - p * (1 - p)) < 1e-12
        assert abs(cells[2] - p / 2) < 1e-12
        assert abs(cells[3] - cells[1]) < 1e-3
        assert abs(cells[4] - (cells[1] - cells[2])) < 1e-12


def test_erasure_study_validation(capsys, tmp_path):
    code, _, err = run(capsys, "erasure-study", "--p-min", "0.3", "--p-max", "0.1",
                       "--steps", "3", "-o", str(tmp_path / "x.csv"))
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "erasure-study", "--p-min", "0.1", "--p-max", "0.3",
                       "--steps", "1", "-o", str(tmp_path / "x.csv"))
    assert code == 2 and "steps" in err


def test_rank2_scan_csv(capsys, tmp_path):
    grid = {"q": [0.0, 0.8, 3], "s": [0.6, 0.9, 4], "alpha": [0, 0, 1],
            "beta": [0, 0, 1], "gamma": [0, 0, 1], "theta": [0, math.pi, 3]}
    out = tmp_path / "rank2.csv"
    payload = run_json(capsys, "rank2-scan", "--p", "0.25",
                       "--grid", write_json(tmp_path / "grid.json", grid),
                       "-o", str(out))
    assert payload["min_lambda_G"] >= -1e-9
    assert set(payload["argmin"]) == {"q", "s", "alpha", "beta", "gamma", "theta"}
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# boundariness-lab v1, cmd=rank2-scan")
    assert lines[2] == "q,s,alpha,beta,gamma,theta,lambda_G"
    assert len(lines) == 3 + 27


def test_contour_csv(capsys, tmp_path):
    for shape in ("triangle", "square", "disk"):
        out = tmp_path / f"{shape}.csv"
        payload = run_json(capsys, "contour", "--shape", shape,
                           "--resolution", "16", "-o", str(out))
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[2] == "x,y,b"
        rows = [tuple(float(c) for c in line.split(",")) for line in lines[3:]]
        assert len(rows) == payload["rows"] > 0
        assert all(0.0 < b <= 0.5 + 1e-12 for _, _, b in rows)
    code, _, err = run(capsys, "contour", "--shape", "disk", "--resolution", "7",
                       "-o", str(tmp_path / "x.csv"))
    assert code == 2 and "resolution" in err


def test_discriminate_states(capsys, tmp_path):
    a = write_json(tmp_path / "a.json", linalg.matrix_to_json(np.diag([1.0, 0.0])))
    b = write_json(tmp_path / "b.json", linalg.matrix_to_json(np.diag([0.0, 1.0])))
    payload = run_json(capsys, "discriminate", "--kind", "state", "-a", a, "-b", b)
    assert payload["kind"] == "state"
    assert payload["p_error"] == 0.0
    assert abs(payload["norm"] - 2.0) < 1e-12
    assert payload["norm_is_lower_bound"] is False
    assert payload["saturated"] is True


def test_discriminate_povms(capsys, tmp_path):
    c = write_json(tmp_path / "c.json", {"kind": "povm", "effects": [
        linalg.matrix_to_json(np.diag([0.7, 0.3])),
        linalg.matrix_to_json(np.diag([0.3, 0.7]))]})
    a = write_json(tmp_path / "a.json", {"kind": "povm", "effects": [
        linalg.matrix_to_json(np.diag([1.0, 0.0])),
        linalg.matrix_to_json(np.diag([0.0, 1.0]))]})
    payload = run_json(capsys, "discriminate", "--kind", "povm", "-a", c, "-b", a)
    assert abs(payload["norm"] - 0.6) < 1e-9
    assert payload["norm_is_lower_bound"] is True
    assert abs(payload["boundariness_bound"] - 0.3) < 1e-12


def test_discriminate_channels(capsys, tmp_path, erasure_file):
    ident = write_json(tmp_path / "id.json", channels.identity_choi(2).to_json())
    payload = run_json(capsys, "discriminate", "--kind", "channel",
                       "-a", erasure_file, "-b", ident)
    assert abs(payload["norm"] - 1.625) < 1e-6
    assert abs(payload["boundariness_bound"] - 0.125) < 1e-12
    assert payload["norm_is_lower_bound"] is True


def test_prop6_witness_improves_erasure(capsys, erasure_file):
    payload = run_json(capsys, "prop6-witness", "-i", erasure_file)
    assert payload["status"] == "improved"
    assert abs(payload["t"] - 0.1875) < 1e-12
    assert abs(payload["lower_bound_lambda_min"] - 0.125) < 1e-12
    assert abs(payload["improvement"] - 0.0625) < 1e-12


def test_prop6_witness_explicit_phi(capsys, tmp_path, erasure_file):
    s = 1.0 / math.sqrt(2.0)
    phi = write_json(tmp_path / "phi.json", {
        "kind": "vector", "entries": [[s, 0.0], [0.0, 0.0], [0.0, 0.0], [s, 0.0]]})
    payload = run_json(capsys, "prop6-witness", "-i", erasure_file, "--phi", phi)
    assert abs(payload["t"] - 0.1875) < 1e-12
    bad = write_json(tmp_path / "bad.json", {
        "kind": "vector", "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]})
    code, _, err = run(capsys, "prop6-witness", "-i", erasure_file, "--phi", bad)
    assert code == 2 and "normalized" in err


def test_prop6_witness_not_improvable_is_success(capsys, tmp_path):
    depol = write_json(tmp_path / "depol.json", channels.depolarizing_choi(2).to_json())
    payload = run_json(capsys, "prop6-witness", "-i", depol)
    assert payload["status"] == "bound-not-improvable"
    assert "message" in payload and "t" not in payload


def test_exit_code_2_on_bad_input(capsys, tmp_path):
    code, _, err = run(capsys, "state", "-i", str(tmp_path / "missing.json"))
    assert code == 2 and err.startswith("error: cannot read")
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json", encoding="utf-8")
    code, _, err = run(capsys, "state", "-i", str(broken))
    assert code == 2 and ":1:" in err and "invalid JSON" in err
    cfg = write_json(tmp_path / "cfg.json", {"seed": 1, "sample_count": 5})
    code, _, err = run(capsys, "state", "--config", cfg, "-i", str(broken))
    assert code == 2 and "unknown" in err


def test_exit_code_3_on_numerical_failure(capsys, monkeypatch, erasure_file):
    def boom(*a, **k):
        raise NumericalError("bisection stalled")
    monkeypatch.setattr("boundarylab.channels.channel_scan_boundariness", boom)
    code, _, err = run(capsys, "channel", "-i", erasure_file)
    assert code == 3 and err.startswith("numerical failure: bisection stalled")


def test_exit_code_4_on_claim_violation(capsys, monkeypatch, rho_file):
    def boom(*a, **k):
        raise ClaimViolationError("residual too large")
    monkeypatch.setattr("boundarylab.states.state_boundariness", boom)
    code, _, err = run(capsys, "state", "-i", rho_file)
    assert code == 4 and err.startswith("claim violated: residual too large")


def test_argparse_rejects_unknown_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["contour", "--shape", "pentagon", "--resolution", "16", "-o", "x.csv"])
    capsys.readouterr()


def test_seed_accepted_in_both_positions(capsys, rho_file):
    before = run_json(capsys, "--seed", "5", "state", "-i", rho_file)
    after = run_json(capsys, "state", "--seed", "5", "-i", rho_file)
    assert before["config"]["seed"] == 5
    assert before == after


def test_seed_overrides_config_file(capsys, tmp_path, erasure_file):
    cfg = write_json(tmp_path / "cfg.json", {"seed": 7, "n_samples": 30})
    payload = run_json(capsys, "channel", "-i", erasure_file, "--config", cfg,
                       "--seed", "9")
    assert payload["config"]["seed"] == 9
    assert payload["config"]["n_samples"] == 30


def test_reruns_are_byte_identical(capsys, tmp_path, erasure_file):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["erasure-study", "--p-min", "0.1", "--p-max", "0.2", "--steps", "2",
            "--seed", "4"]
    first = run(capsys, *argv, "-o", str(out1))
    second = run(capsys, *argv, "-o", str(out2))
    assert first[0] == second[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
    # stdout differs only in the output path, so compare reports modulo it
    a, b = json.loads(first[1]), json.loads(second[1])
    a.pop("out"), b.pop("out")
    assert a == b
