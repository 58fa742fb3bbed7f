"""Scenario configs, runs, sweeps, metrics and file emission."""

from .config import ARTIFACTS, MODELS, ScenarioConfig
from .emit import (
    emit,
    phase_csv,
    reports_csv,
    reports_json,
    reports_markdown,
    timeseries_csv,
)
from .metrics import (
    EXTINCTION_FLOOR,
    SETTLE_FLOOR,
    SETTLE_REL,
    RunMetrics,
    compute_metrics,
    late_amplitude,
    nearest_feasible,
    settling_time,
    within_band,
)
from .runner import RunResult, equilibria_for, reports_for, run, simulate, sweep, sweep_axes

__all__ = [
    "ARTIFACTS",
    "MODELS",
    "ScenarioConfig",
    "RunMetrics",
    "RunResult",
    "EXTINCTION_FLOOR",
    "SETTLE_FLOOR",
    "SETTLE_REL",
    "compute_metrics",
    "late_amplitude",
    "nearest_feasible",
    "settling_time",
    "within_band",
    "run",
    "simulate",
    "sweep",
    "sweep_axes",
    "equilibria_for",
    "reports_for",
    "emit",
    "timeseries_csv",
    "phase_csv",
    "reports_json",
    "reports_markdown",
    "reports_csv",
]
