"""Single runs and one-axis parameter sweeps."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from typing import NamedTuple

from ..equilibria import EquilibriumPoint, equilibria2, equilibria3
from ..fraccalc import Trajectory, solve_caputo_ivp
from ..models import Params2, rhs2, rhs3
from ..stability import StabilityReport, stability_report
from .config import ScenarioConfig
from .metrics import RunMetrics, compute_metrics


class RunResult(NamedTuple):
    trajectory: Trajectory
    reports: list[StabilityReport]
    metrics: RunMetrics


def equilibria_for(cfg: ScenarioConfig) -> list[EquilibriumPoint]:
    p = cfg.params
    return equilibria2(p) if isinstance(p, Params2) else equilibria3(p)


def reports_for(cfg: ScenarioConfig, points=None) -> list[StabilityReport]:
    points = equilibria_for(cfg) if points is None else points
    return [stability_report(cfg.params, pt, cfg.alpha) for pt in points if pt.feasible]


def simulate(cfg: ScenarioConfig) -> Trajectory:
    p = cfg.params
    f = rhs2 if isinstance(p, Params2) else rhs3
    return solve_caputo_ivp(lambda t, y: f(p, y), cfg.alpha, cfg.initial_state, cfg.grid)


def run(cfg: ScenarioConfig) -> RunResult:
    """Integrate, score against the nearest feasible equilibrium, and attach reports."""
    traj = simulate(cfg)
    points = equilibria_for(cfg)
    return RunResult(traj, reports_for(cfg, points), compute_metrics(traj, points))


def sweep_axes(cfg: ScenarioConfig) -> tuple[str, ...]:
    return ("alpha",) + tuple(f.name for f in fields(type(cfg.params)))


def _with_value(base: ScenarioConfig, axis: str, value: float) -> ScenarioConfig:
    if axis == "alpha":
        return base.replace(alpha=value)
    return base.replace(params=base.params.replace(**{axis: value}))


def _row(cfg: ScenarioConfig, axis: str, value: float) -> dict:
    m = compute_metrics(simulate(cfg), equilibria_for(cfg))
    row = {axis: value, "settling_time": m.settling_time}
    for name, amp in zip("xyz", m.late_amplitude):
        row[f"late_amplitude_{name}"] = amp
    row["extinction_flag"] = m.extinction_flag
    row["target"] = m.target
    return row


def sweep(base: ScenarioConfig, axis: str, values, workers: int | None = None) -> list[dict]:
    """One metrics row per value, in the order given.

    Each value is an independent run; with ``workers > 1`` rows are computed
    in separate processes and reassembled in input order.
    """
    if axis not in sweep_axes(base):
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {sweep_axes(base)}")
    values = [float(v) for v in values]
    if not all(math.isfinite(v) for v in values):
        raise ValueError("sweep values must be finite")
    # build every config first so invalid values fail before any run
    cfgs = [_with_value(base, axis, v) for v in values]
    if not cfgs:
        return []
    if workers and workers > 1 and len(cfgs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_row, cfgs, [axis] * len(cfgs), values))
    return [_row(c, axis, v) for c, v in zip(cfgs, values)]
