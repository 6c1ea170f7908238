"""Event-triggered Newton extremum seeking: simulation and analysis."""

from ._core import (
    Scenario,
    ScenarioError,
    SimulationError,
    ValidationError,
    check_probing_frequencies,
    common_period,
    compare,
    parse_scenario,
    parse_scenario_text,
    run,
    solve_lyapunov,
    zeno_lower_bound,
)

__all__ = [
    "Scenario",
    "ScenarioError",
    "SimulationError",
    "ValidationError",
    "check_probing_frequencies",
    "common_period",
    "compare",
    "parse_scenario",
    "parse_scenario_text",
    "run",
    "solve_lyapunov",
    "zeno_lower_bound",
]
