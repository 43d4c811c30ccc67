import json

import jsonschema
import pytest

from dnwaveguide import cli
from dnwaveguide.errors import ConvergenceError
from dnwaveguide.io import read_csv

QUICK = ["--L", "8", "--ladder", "8,16,32"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_roots_json_matches_schema(tmp_path, capsys):
    code, out = run(capsys, "roots", "--json", "--out", str(tmp_path))
    assert code == 0
    report = json.loads(out.out)
    jsonschema.validate(report, cli.ROOT_SCHEMA)
    assert report["s1"]["value"] == pytest.approx(0.0394343, abs=1e-6)
    assert report["config"] == {"a": 1.0, "tol": 1e-12}


def test_roots_summary_reports_both_units(tmp_path, capsys):
    code, out = run(capsys, "roots", "--a", "2", "--out", str(tmp_path))
    assert code == 0 and "s1 = 0.039434" in out.out and "0.00608" in out.out


def test_outputs_are_byte_identical(tmp_path, capsys):
    for d in ("r1", "r2"):
        assert run(capsys, "lambda-profile", "--n-v", "11", "--n-mesh", "200", "--out", str(tmp_path / d))[0] == 0
    for name in ("lambda-profile.json", "lambda_profile.csv", "lambda_profile.dat"):
        assert (tmp_path / "r1" / name).read_bytes() == (tmp_path / "r2" / name).read_bytes()


def test_csv_layout(tmp_path, capsys):
    run(capsys, "lambda-profile", "--n-v", "5", "--n-mesh", "100", "--out", str(tmp_path))
    raw = (tmp_path / "lambda_profile.csv").read_bytes()
    assert raw.startswith(b"parameter,eigenvalue,mesh,extrapolated\r\n")
    header, rows = read_csv(tmp_path / "lambda_profile.csv")
    assert len(rows) == 5 and all(len(r) == 4 for r in rows)


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"hc-lemma": {"h": 5.0, "l": 2.0, "delta": 0.4, "n_c": 8, "n_mesh": 200}}))
    code, out = run(capsys, "hc-lemma", "--config", str(cfg), "--n-c", "6", "--json", "--out", str(tmp_path))
    assert code == 0
    rep = json.loads(out.out)
    assert rep["config"]["h"] == 5.0 and rep["config"]["n_c"] == 6
    assert rep["violating_c"] == []


@pytest.mark.parametrize("argv", [["roots", "--tol", "-1"], ["lambda-profile", "--theta", "2"],
                                  ["hc-lemma", "--delta", "1.5"], ["spectrum-2d", "--ladder", "8,16"]])
def test_bad_configuration_exit_code(tmp_path, capsys, argv):
    code, out = run(capsys, *argv, "--out", str(tmp_path))
    assert code == cli.EXIT_CONFIG and "configuration error" in out.err


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"roots": {"tolerance": 1e-9}}')
    assert run(capsys, "roots", "--config", str(cfg), "--out", str(tmp_path))[0] == cli.EXIT_CONFIG


def test_convergence_exit_code(tmp_path, capsys, monkeypatch):
    import dnwaveguide.laplacian2d as l2d

    def boom(*args, **kwargs):
        raise ConvergenceError("no convergence")
    monkeypatch.setattr(l2d, "threshold_gap", boom)
    assert run(capsys, "spectrum-2d", *QUICK, "--out", str(tmp_path))[0] == cli.EXIT_CONVERGENCE


def test_spectrum_verdicts(tmp_path, capsys):
    code, out = run(capsys, "spectrum-2d", "--eps", "-0.5", *QUICK, "--out", str(tmp_path))
    assert code == 0 and "verdict none" in out.out
    code, out = run(capsys, "spectrum-2d", "--eps", "0.9", *QUICK, "--out", str(tmp_path))
    assert code == 0 and "verdict bound" in out.out


def test_inconclusive_exit_code(tmp_path, capsys):
    code, out = run(capsys, "spectrum-2d", "--eps", "0.55", *QUICK, "--out", str(tmp_path))
    assert code == cli.EXIT_INCONCLUSIVE and "inconclusive" in out.out


def test_hardy_failure_files(tmp_path, capsys):
    code, out = run(capsys, "hardy-failure", "--n-sequence", "5", "--out", str(tmp_path))
    assert code == 0 and "decreasing=True" in out.out
    header, rows = read_csv(tmp_path / "hardy_failure.csv")
    assert header == ["k", "radius", "quotient"] and len(rows) == 5


def test_hardy_check_negative(tmp_path, capsys):
    code, out = run(capsys, "hardy-check", "--weight", "negative", "--eps", "-0.3", *QUICK, "--out", str(tmp_path))
    assert code == 0 and "holds" in out.out


def test_optimize_theta_summary(tmp_path, capsys):
    code, out = run(capsys, "optimize-theta", "--n-coarse", "32", "--out", str(tmp_path))
    assert code == 0 and "theta* = 0.774" in out.out and "theta* = 0.759" in out.out


def test_help_mentions_units(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--help"])
    assert "(pi/4a)^2" in capsys.readouterr().out
