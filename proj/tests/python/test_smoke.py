import json
import math
import os
from pathlib import Path

import numpy as np
import pytest

import etnes

SCENARIOS = Path(os.environ.get("ETNES_SCENARIO_DIR", Path(__file__).resolve().parents[2] / "scenarios"))


def test_scalar_smoke_runs():
    sc = etnes.parse_scenario(str(SCENARIOS / "scalar_smoke.yaml"))
    assert sc.scheme == "newton_et"
    r = etnes.run(sc)
    assert r["status"] == "completed"
    assert r["update_count"] >= 2
    assert r["min_interval"] > 0
    traj = r["trajectory"]
    assert traj["t"][0] == 0.0
    assert traj["t"][-1] == pytest.approx(sc.t_end)
    assert traj["theta_hat"].shape[1] == 1
    assert r["final_theta_hat_error"] < 0.2


def test_frequency_check_and_period():
    ok, issues = etnes.check_probing_frequencies(["1", "7"])
    assert ok and not issues
    ok, issues = etnes.check_probing_frequencies(["1", "3"])
    assert not ok and issues
    assert etnes.common_period(["1", "7"], 1.0) == pytest.approx(2 * math.pi)
    assert etnes.common_period(["1/2", "3/2"], 2.0) == pytest.approx(2 * math.pi)


def test_zeno_bound():
    assert etnes.zeno_lower_bound(1.0, 0.75, 0.8) == pytest.approx(0.5505376, rel=1e-6)
    assert etnes.zeno_lower_bound(2.0, 0.75, 0.8) == pytest.approx(0.5505376 / 2, rel=1e-6)


def test_lyapunov():
    a = -np.array([[1.0, 0.0], [0.0, 1.0]])
    p, residual = etnes.solve_lyapunov(a, np.eye(2))
    assert np.allclose(p, 0.5 * np.eye(2))
    assert residual < 1e-12


def test_errors_map_to_python():
    text = (SCENARIOS / "scalar_smoke.yaml").read_text().replace("sigma: 0.75", "sigma: 1.5")
    with pytest.raises(ValueError, match="sigma"):
        etnes.parse_scenario_text(text)


def test_compare_json():
    sc = etnes.parse_scenario(str(SCENARIOS / "scalar_smoke.yaml"))
    report = json.loads(etnes.compare([sc, sc.with_step(sc.step / 2)]))
    runs = report["scenarios"]
    assert len(runs) == 2
    assert all(r["status"] == "completed" for r in runs)
    assert runs[0]["tau_star"] > 0
