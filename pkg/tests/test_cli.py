import csv
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamqw.cli import RunConfig, main, read_weight_file, run


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_quantum_trajectory_csv(capsys):
    code, out, _ = run_cli(capsys, "quantum", "--d", "3", "--n", "2", "--walk", "simple", "--t", "10")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 11
    assert [int(r["t"]) for r in rows] == list(range(11))
    for r in rows:
        assert sum(float(r[f"mass_{h}"]) for h in range(4)) == pytest.approx(1, abs=1e-12)


def test_limit_closed_form_spot_value(capsys):
    code, out, _ = run_cli(capsys, "limit", "--d", "2", "--n", "2", "--walk", "independent",
                           "--closed-form")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["h", "class_mass", "per_vertex_mass", "provenance"]
    assert float(rows[0]["per_vertex_mass"]) == 0.4375


def test_limit_cesaro_json(capsys):
    code, out, _ = run_cli(capsys, "limit", "--d", "2", "--n", "3", "--walk", "independent",
                           "--T", "300", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["metadata"]["T"] == 300
    assert doc["metadata"]["total"] == pytest.approx(1, abs=1e-12)
    p0 = doc["records"][0]["per_vertex_mass"]
    assert abs(p0 - (1 / 3 + 2 / 27)) <= 10 / 300


def test_limit_forms(capsys):
    args = ["limit", "--d", "3", "--n", "2", "--walk", "mixture", "--r", "0.3", "--closed-form",
            "--output", "json"]
    _, printed, _ = run_cli(capsys, *args)
    _, corrected, _ = run_cli(capsys, *args, "--form", "corrected")
    a, b = json.loads(printed), json.loads(corrected)
    assert a["metadata"]["form"] == "printed" and b["metadata"]["form"] == "corrected"
    assert b["metadata"]["total"] == pytest.approx(1, abs=1e-12)
    assert a["records"] != b["records"]


def test_classical_and_spectrum(capsys):
    code, out, _ = run_cli(capsys, "classical", "--d", "4", "--n", "2", "--t", "3", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["metadata"]["rho"] == [1, 0.5, 0, -0.5, -1]
    assert doc["metadata"]["periodic"] is True
    assert doc["records"][1]["mass_1"] == 1
    code, out, _ = run_cli(capsys, "spectrum", "--d", "3", "--n", "3", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["records"]) == 9
    assert doc["metadata"]["fallback_classes"] == [3]


def test_fallback_recorded_in_metadata(capsys):
    code, out, _ = run_cli(capsys, "quantum", "--d", "2", "--n", "3", "--t", "4", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["metadata"]["path"] == "spectral+recurrence[2]"
    assert doc["metadata"]["final_norm2"] == pytest.approx(1, abs=1e-10)


def test_custom_weight_file(tmp_path, capsys):
    f = tmp_path / "w.txt"
    f.write_text("0\n1/2\n0.25\n0.25\n")
    assert read_weight_file(str(f)) == ("0", "1/2", "1/4", "1/4")
    code, out, _ = run_cli(capsys, "classical", "--d", "3", "--walk", "custom", "--weights", str(f),
                           "--t", "2")
    assert code == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("0.5\n0.6\n0\n0\n")
    code, _, err = run_cli(capsys, "classical", "--d", "3", "--walk", "custom", "--weights", str(bad),
                           "--t", "2")
    assert code == 2 and json.loads(err)["error"] == "invalid_config"


def test_exit_codes(capsys):
    assert run_cli(capsys, "verify", "--suite", "identities")[0] == 0
    assert run_cli(capsys, "quantum", "--d", "3", "--n", "4", "--t", "2")[0] == 2
    assert run_cli(capsys, "quantum", "--d", "3")[0] == 2
    assert run_cli(capsys, "quantum", "--d", "30", "--t", "1")[0] == 3
    assert run_cli(capsys, "limit", "--d", "3", "--n", "5", "--walk", "simple", "--closed-form")[0] == 2
    code, _, err = run_cli(capsys, "quantum", "--d", "3", "--walk", "nonlocal", "--t", "2")
    assert code == 2 and "ValueError" in err


def test_verify_failure_exit_code(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "limits", "--output", "json")
    doc = json.loads(out)
    failing = sorted(r["name"].split()[0] for r in doc["records"] if not r["passed"])
    assert code == 1
    assert failing == ["independent_general", "mixture_n2", "nonlocal2_n2", "simple_n3"]
    code, out, _ = run_cli(capsys, "verify", "--suite", "limits", "--form", "corrected")
    assert code == 0


def test_verify_oracle_and_spectrum(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "oracle", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    row = [r for r in doc["records"] if r["name"] == "wave_vector n=2 d=3 simple"][0]
    assert row["max_residual"] <= 1e-9
    code, out, _ = run_cli(capsys, "verify", "--suite", "spectrum", "--output", "json")
    assert code == 0
    assert all(r["passed"] for r in json.loads(out)["records"])


def test_output_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["quantum", "--d", "2", "--n", "3", "--walk", "mixture", "--alpha", "3/10", "--t", "7",
            "--output", "json"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert RunConfig.from_dict(doc["config"]).alpha == "3/10"
    assert "-0" not in a.read_text().replace("e-0", "")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hamqw.cli", "limit", "--d", "2", "--walk",
                           "independent", "--closed-form"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "0.4375" in proc.stdout


configs = st.builds(
    RunConfig,
    mode=st.sampled_from(["classical", "quantum", "limit", "spectrum", "verify"]),
    d=st.integers(2, 8),
    n=st.sampled_from([2, 3, 5]),
    walk=st.sampled_from(["simple", "independent", "nonlocal", "mixture", "custom"]),
    m=st.none() | st.integers(2, 8),
    alpha=st.none() | st.sampled_from(["0.3", "1/5"]),
    weights=st.none() | st.lists(st.sampled_from(["0", "1/2", "0.25"]), min_size=1, max_size=4).map(tuple),
    t=st.none() | st.integers(0, 100),
    T=st.none() | st.integers(1, 5000),
    path=st.sampled_from(["auto", "bruteforce", "fourier", "spectral"]),
    output=st.sampled_from(["csv", "json"]),
    closed_form=st.booleans(),
    form=st.sampled_from(["printed", "corrected"]),
    suite=st.sampled_from(["identities", "oracle", "spectrum", "limits", "all"]),
)


@given(configs)
def test_config_round_trip(cfg):
    assert RunConfig.from_json(cfg.to_json()) == cfg
    assert RunConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg


def test_run_writes_to_stream():
    buf = io.StringIO()
    cfg = RunConfig(mode="classical", d=2, n=3, t=1, output="json")
    assert run(cfg, buf) == 0
    assert json.loads(buf.getvalue())["config"] == cfg.to_dict()
