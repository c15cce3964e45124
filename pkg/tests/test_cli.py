import json

import pytest

from cvclone.cli import EXIT_DOMAIN, EXIT_OK, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compare_emits_csv(capsys):
    code, out, _ = run_cli(capsys, "compare", "--m", "2", "--tau", "1.0",
                           "--mu", "0.2", "--omega", "1.0")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].startswith("# cvclone ")
    assert lines[1].startswith("m,tau_tot,mu,omega,f_tele,regime,")
    assert lines[2].split(",")[-1] in ("tele", "lcdt", "tie")


def test_missing_flags_exit_with_domain_code(capsys):
    code, _, err = run_cli(capsys, "compare", "--m", "2", "--tau", "1.0")
    assert code == EXIT_DOMAIN
    assert "missing required" in err


def test_invalid_value_exits_with_domain_code(capsys):
    code, _, err = run_cli(capsys, "optimize", "--m", "1", "--tau", "1.0",
                           "--mu", "0.0")
    assert code == EXIT_DOMAIN
    assert err.startswith("error:")


def test_config_file_supplies_defaults(capsys, tmp_path):
    doc = tmp_path / "run.json"
    doc.write_text(json.dumps({"m": 2, "tau": 1.0, "mu": 0.2, "omega": 1.0}))
    code, out, _ = run_cli(capsys, "compare", "--config", str(doc))
    assert code == EXIT_OK
    baseline = out
    # explicit flags win over the config document
    code, out2, _ = run_cli(capsys, "compare", "--config", str(doc),
                            "--omega", "2.0")
    assert code == EXIT_OK
    assert out2 != baseline
    assert out2.splitlines()[2].split(",")[3] == "2"


def test_teleclone_closed_and_monte_carlo(capsys):
    code, out, _ = run_cli(capsys, "teleclone-fidelity", "--m", "2",
                           "--tau", "0.5", "--mu", "0.1",
                           "--n-photons", "1.5")
    assert code == EXIT_OK
    assert "fidelity" in out
    code, out, _ = run_cli(capsys, "teleclone-fidelity", "--m", "2",
                           "--tau", "0.5", "--mu", "0.1",
                           "--n-photons", "1.5", "--samples", "2000",
                           "--seed", "3", "--alpha-re", "1.0")
    assert code == EXIT_OK
    assert "fidelity_mc" in out


def test_thresholds_reports_omega_when_tau_given(capsys):
    code, out, _ = run_cli(capsys, "thresholds", "--m", "2", "--mu", "1.0",
                           "--tau", "0.6931471805599453")
    assert code == EXIT_OK
    assert "omega_a_sq" in out


def test_reproduce_is_deterministic(tmp_path, capsys):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    assert run_cli(capsys, "reproduce", "fig4a", "--out", str(first))[0] == 0
    assert run_cli(capsys, "reproduce", "fig4a", "--out", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()


def test_sweep_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "sweep.csv"
    code, _, _ = run_cli(capsys, "sweep", "--variable", "mu",
                         "--start", "0.0", "--stop", "1.0", "--steps", "3",
                         "--m", "2", "--tau", "1.0", "--omega", "1.0",
                         "--out", str(out_file))
    assert code == EXIT_OK
    body = out_file.read_text()
    assert body.count("\n") == 3 + 4  # provenance + header + 3 rows


def test_tau0_larger_than_tau_rejected(capsys):
    code, _, err = run_cli(capsys, "lcdt-fidelity", "--m", "2",
                           "--tau", "1.0", "--tau0", "2.0", "--mu", "0.0")
    assert code == EXIT_DOMAIN
    assert "tau0" in err
