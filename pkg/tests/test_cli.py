import json
import subprocess
import sys

import pytest

from modnull.cli import main

TRIANGLE = "0 1\n0 2\n1 2\n"
PARTITION_122 = "1\n2\n2\n"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_compute_moments_json(tmp_path, capsys):
    g = write(tmp_path, "tri.txt", TRIANGLE)
    p = write(tmp_path, "part.txt", PARTITION_122)
    code, out, err = run_cli(capsys, "compute", "--graph", g, "--partition", p)
    assert code == 0 and err == ""
    doc = json.loads(out)
    for key in ("n", "m", "K", "mu", "sigma2", "delta2", "r1", "r2"):
        assert key in doc
    assert doc["n"] == 3 and doc["m"] == 3 and doc["K"] == 2
    assert doc["Q"] == pytest.approx(-2 / 9, abs=1e-12)
    assert doc["mu"] == pytest.approx(-0.148148148148148, abs=1e-12)
    assert doc["config"]["command"] == "compute"


def test_test_subcommand_pinned_values(tmp_path, capsys):
    g = write(tmp_path, "tri.txt", TRIANGLE)
    p = write(tmp_path, "part.txt", PARTITION_122)
    code, out, _ = run_cli(capsys, "test", "--graph", g, "--partition", p)
    assert code == 0
    doc = json.loads(out)
    assert doc["z_sigma"] == pytest.approx(-0.70711, abs=1e-5)
    assert doc["p_value"] == pytest.approx(0.76025, abs=1e-5)
    assert doc["sidedness"] == "upper"
    assert set(doc["conditions"]) == {
        "stat_31",
        "stat_311",
        "stat_c1",
        "holds_c1",
        "n",
        "m",
        "kmax",
    }


def test_conditions_subcommand(tmp_path, capsys):
    g = write(tmp_path, "tri.txt", TRIANGLE)
    code, out, _ = run_cli(capsys, "conditions", "--graph", g)
    assert code == 0
    doc = json.loads(out)
    assert doc["stat_31"] == pytest.approx(2.0, abs=1e-12)
    assert doc["holds_c1"] is False
    assert doc["kmax"] == 2


def test_generate_then_compute_roundtrip(tmp_path, capsys):
    out_path = tmp_path / "g.txt"
    code, out, _ = run_cli(
        capsys, "generate", "--model", "reg:d=1", "--n", "4", "--seed", "7",
        "--out", str(out_path),
    )
    assert code == 0
    echo = json.loads(out)
    assert echo["config"]["master_seed"] == 7 and echo["m"] == 2
    text1 = out_path.read_text()
    assert text1.startswith("# n=4\n")
    # regeneration is byte identical
    run_cli(capsys, "generate", "--model", "reg:d=1", "--n", "4", "--seed", "7",
            "--out", str(out_path))
    assert out_path.read_text() == text1

    ones = write(tmp_path, "ones.txt", "1\n1\n1\n1\n")
    code, out, _ = run_cli(capsys, "compute", "--graph", str(out_path), "--partition", ones)
    assert code == 0
    assert json.loads(out)["Q"] == 0.0


def test_generate_to_stdout_echoes_config_on_stderr(capsys):
    code, out, err = run_cli(capsys, "generate", "--model", "er:p=1.0", "--n", "3")
    assert code == 0
    assert out == "# n=3\n0 1\n0 2\n1 2\n"
    assert json.loads(err)["config"]["command"] == "generate"


def test_enumerate_check(tmp_path, capsys):
    g = write(tmp_path, "tri.txt", TRIANGLE)
    p = write(tmp_path, "p.txt", "0.3333333333333333\n0.6666666666666667\n")
    code, out, _ = run_cli(capsys, "enumerate-check", "--graph", g, "--probs", p)
    assert code == 0
    doc = json.loads(out)
    assert doc["max_rel_err"] <= 1e-11
    assert doc["mu_closed_form"] == pytest.approx(-4 / 27, abs=1e-12)


def test_null_sample_outputs_and_determinism(tmp_path, capsys):
    g_path = tmp_path / "g.txt"
    run_cli(capsys, "generate", "--model", "reg:d=4", "--n", "40", "--seed", "3",
            "--out", str(g_path))
    out_csv = tmp_path / "samples.csv"
    args = ["null-sample", "--graph", str(g_path), "--K", "2", "--reps", "300",
            "--seed", "11", "--out", str(out_csv)]
    assert run_cli(capsys, *args)[0] == 0
    csv1 = out_csv.read_bytes()
    summary1 = (tmp_path / "samples.summary.json").read_bytes()
    assert run_cli(capsys, *args, "--threads", "8")[0] == 0
    assert out_csv.read_bytes() == csv1
    assert (tmp_path / "samples.summary.json").read_bytes() == summary1
    lines = csv1.decode().splitlines()
    assert lines[0] == "replicate,q,z"
    assert len(lines) == 301
    doc = json.loads(summary1)
    assert doc["config"]["master_seed"] == 11
    assert doc["config"]["reps"] == 300
    assert 0.0 <= doc["ks"] <= 1.0


def test_be_study_files(tmp_path, capsys):
    out_csv = tmp_path / "be.csv"
    args = ["be-study", "--model", "reg:d=6", "--sizes", "50,100", "--reps", "150",
            "--seed", "5", "--out", str(out_csv)]
    assert run_cli(capsys, *args)[0] == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "n,m,ks,bound_shape,fitted_C,seed_used,ks_sigma,ks_delta,sigma2_over_delta2"
    assert len(lines) == 3
    doc = json.loads((tmp_path / "be.summary.json").read_text())
    assert doc["config"]["sizes"] == [50, 100]
    assert doc["config"]["master_seed"] == 5
    assert len(doc["per_size"]) == 2


def test_slln_study_files(tmp_path, capsys):
    out_csv = tmp_path / "slln.csv"
    args = ["slln-study", "--model", "reg:d=6", "--sizes", "50,100,200,400",
            "--reps", "3", "--seed", "5", "--out", str(out_csv)]
    assert run_cli(capsys, *args)[0] == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "path,n,value"
    assert len(lines) == 1 + 3 * 4
    doc = json.loads((tmp_path / "slln.summary.json").read_text())
    assert doc["paths"] == 3
    assert len(doc["per_path"]) == 3


def test_seed_env_fallback(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MODNULL_SEED", "321")
    code, out, _ = run_cli(capsys, "generate", "--model", "er:p=1.0", "--n", "3",
                           "--out", str(tmp_path / "g.txt"))
    assert code == 0
    assert json.loads(out)["config"]["master_seed"] == 321


def test_input_errors_exit_2_with_json(tmp_path, capsys):
    bad = write(tmp_path, "bad.txt", "0 0\n")
    part = write(tmp_path, "p.txt", "1\n")
    code, out, err = run_cli(capsys, "compute", "--graph", bad, "--partition", part)
    assert code == 2
    doc = json.loads(err)
    assert doc["code"] == 2 and "self-loop" in doc["message"]
    assert doc["context"]["command"] == "compute"
    assert err.count("\n") == 1

    code, _, err = run_cli(capsys, "compute", "--graph", str(tmp_path / "nope.txt"),
                           "--partition", part)
    assert code == 2
    assert json.loads(err)["code"] == 2


def test_domain_errors_exit_3(tmp_path, capsys):
    g = write(tmp_path, "tri.txt", TRIANGLE)
    ones = write(tmp_path, "ones.txt", "1\n1\n1\n")
    code, _, err = run_cli(capsys, "test", "--graph", g, "--partition", ones)
    assert code == 3
    assert json.loads(err)["code"] == 3

    code, _, err = run_cli(capsys, "generate", "--model", "reg:d=1", "--n", "5")
    assert code == 3
    assert "even" in json.loads(err)["message"]

    path30 = write(tmp_path, "p30.txt", "".join(f"{i} {i+1}\n" for i in range(30)))
    code, _, err = run_cli(capsys, "enumerate-check", "--graph", path30, "--K", "2")
    assert code == 3
    assert "guard" in json.loads(err)["message"]


def test_unknown_flag_exits_2_with_usage(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["conditions", "--bogus", "x"])
    assert excinfo.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_installed_entry_point(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "modnull.cli", "generate", "--model", "er:p=1.0",
         "--n", "3"],
        capture_output=True, text=True,
    )
    assert result.returncode == 0
    assert result.stdout == "# n=3\n0 1\n0 2\n1 2\n"
