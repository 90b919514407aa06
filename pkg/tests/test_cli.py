import json
import subprocess
import sys

import pytest

from dynlab.cli import main, run
from dynlab.config import RunConfig


def test_orbit_fermat_json():
    code, out = run(["orbit", "--map", "t^2-2*t+2", "--x0", "3", "--steps", "4"])
    assert code == 0
    doc = json.loads(out)
    assert [p["u"] for p in doc["points"]] == ["3", "5", "17", "257", "65537"]
    assert doc["status"]["status"] == "wandering"


def test_orbit_euclid_csv():
    code, out = run(["orbit", "--map", "t^2/(t+1)", "--x0", "1", "--steps", "3", "--format", "csv"])
    assert code == 0
    assert out.splitlines() == ["n,u,v", "0,1,1", "1,1,2", "2,1,6", "3,1,42"]


def test_orbit_pole_row():
    code, out = run(["orbit", "--map", "1/t", "--x0", "0", "--steps", "1", "--format", "text"])
    assert code == 0 and "x_1 = inf" in out


def test_orbit_digit_cap_is_budget_exit():
    code, _ = run(["orbit", "--map", "t^2+1", "--x0", "1", "--steps", "40", "--digit-cap", "100"])
    assert code == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["orbit", "--map", "t^2+"],
        ["orbit"],
        ["classify", "--map", "t^2/(0)"],
        ["orbit", "--map", "t^2", "--x0", "1/0"],
        ["frobnicate"],
        ["verify", "--suite", "no-such-suite"],
        ["density", "--checkpoints", "ten"],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    code, _ = run(argv)
    assert code == 2


def test_classify_examples():
    _, out = run(["classify", "--map", "t^2/(2*t+1)"])
    tags = {v["kind"] for v in json.loads(out)["tags"].values()}
    assert {"T_i", "E_iii", "F1_b"} <= tags
    _, out = run(["classify", "--map", "1/t^2"])
    assert json.loads(out)["tags"]["F2"]["kind"] == "F2_conj_inv_square"
    _, out = run(["classify", "--map", "t^2+1"])
    assert all(v["kind"] is None for v in json.loads(out)["tags"].values())


def test_classify_over_extension():
    code, out = run(["classify", "--map", "(t^2+w*t)/(w*t+1)", "--field", "w: w^2+w+1"])
    assert code == 0
    doc = json.loads(out)
    assert doc["tags"]["F3"]["kind"] == "B_3_2" and doc["exact_period"]["3"] is False


def test_diffs_refuses_preperiodic():
    code, out = run(["diffs", "--map", "t^2-1", "--x0", "0"])
    assert code == 1 and json.loads(out)["refused"]
    code, out = run(["diffs", "--map", "t^2-1", "--x0", "0", "--Nmax", "4", "--allow-unknown"])
    assert code == 0


def test_diffs_window_scan():
    code, out = run(["diffs", "--map", "t^2+1", "--x0", "1", "--Nmax", "11", "--M", "1"])
    assert code in (0, 3)
    rep = json.loads(out)["report"]
    prim = {r["n"]: r["primes"] for r in rep["primitive"]}
    assert all(prim[n] for n in range(1, 11))
    assert rep["note"] == "window-certified"


def test_diffs_counterexample_support():
    _, out = run(["diffs", "--map", "t^2/(2*t+1)", "--x0", "1", "--Nmax", "6"])
    cells = json.loads(out)["ledger"]["cells"]
    assert {tuple(c["primes"]) for c in cells} == {("2",)}


def test_diffs_budget_exit_code():
    code, out = run(["diffs", "--map", "t^2+1", "--x0", "1", "--Nmax", "12", "--factor-budget-ms", "1"])
    assert code == 3
    assert any(c["censored"] for c in json.loads(out)["ledger"]["cells"])


def test_verify_single_suite():
    code, out = run(["verify", "--suite", "fermat"])
    assert code == 0
    doc = json.loads(out)
    assert doc["suite"] == "fermat" and all(c["anchor"] for c in doc["checks"])


def test_verify_text_and_csv():
    code, out = run(["verify", "--suite", "euclid", "--format", "text"])
    assert code == 0 and out.startswith("suite euclid: PASS")
    code, out = run(["verify", "--suite", "euclid", "--format", "csv"])
    assert out.splitlines()[0] == "suite,check,status,anchor"


def test_density_oracle():
    code, out = run(["density", "--oracle", "fermat", "--steps", "16", "--factor-budget-ms", "20"])
    assert code == 0
    rows = json.loads(out)["counts"]
    assert rows[-1] == {"x": "100000", "count": 6, "oracle": 6, "match": True}


def test_density_arbitrary_orbit_monotone():
    code, out = run(["density", "--map", "t^2+1", "--x0", "1", "--steps", "8", "--checkpoints", "100,1000,10000"])
    assert code == 0
    counts = [r["count"] for r in json.loads(out)["counts"]]
    assert counts == sorted(counts)


def test_config_file_and_overrides(tmp_path, monkeypatch):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"map_text": "t^2-2*t+2", "x0": "3", "steps": 2}))
    code, out = run(["orbit", "--config", str(cfg), "--format", "csv"])
    assert out.splitlines()[-1] == "2,17,1"
    code, out = run(["orbit", "--config", str(cfg), "--steps", "3", "--format", "csv"])
    assert out.splitlines()[-1] == "3,257,1"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"mapp": "t^2"}))
    assert run(["orbit", "--config", str(bad)])[0] == 2


def test_env_budget(monkeypatch):
    monkeypatch.setenv("DYNLAB_FACTOR_BUDGET_MS", "7")
    assert RunConfig().with_env().factor_budget_ms == 7


def test_deterministic_output():
    argv = ["diffs", "--map", "(t^2+3)/(2*t-1)", "--x0", "2", "--Nmax", "6", "--M", "2", "--mode", "projective"]
    assert run(argv) == run(argv)


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dynlab.cli", "orbit", "--map", "t^2/(2*t+1)", "--x0", "1", "--steps", "2", "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.splitlines() == ["x_0 = 1", "x_1 = 1/3", "x_2 = 1/15"]


def test_main_returns_int():
    assert main(["verify", "--suite", "closed-forms"], out=open("/dev/null", "w")) == 0


def test_tower_budget_limits_witness():
    argv = ["classify", "--map", "2*t^3/(2*t^2+1)"]
    tag = json.loads(run(argv)[1])["tags"]["E"]
    assert tag["kind"] == "E_ii" and tag["sigma_context"] == "lam: lam^2 - 1/2"
    tag = json.loads(run(argv + ["--tower-budget", "1"])[1])["tags"]["E"]
    assert tag["kind"] == "E_ii" and "sigma" not in tag
