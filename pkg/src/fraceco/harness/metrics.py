"""Convergence and oscillation metrics for a finished trajectory."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..equilibria import EquilibriumPoint
from ..fraccalc import Trajectory

SETTLE_REL = 0.02
SETTLE_FLOOR = 1e-4
EXTINCTION_FLOOR = 1e-6


@dataclass(frozen=True)
class RunMetrics:
    settling_time: float | None
    late_amplitude: tuple[float, ...]
    extinction_flag: bool
    target: str | None = None
    target_coords: tuple[float, ...] = ()
    min_state: tuple[float, ...] = ()

    def to_dict(self) -> dict:
        return {
            "settling_time": self.settling_time,
            "late_amplitude": list(self.late_amplitude),
            "extinction_flag": self.extinction_flag,
            "target": self.target,
            "target_coords": list(self.target_coords),
            "min_state": list(self.min_state),
        }


def nearest_feasible(final, points) -> EquilibriumPoint | None:
    """Feasible equilibrium closest (Euclidean) to ``final``; ties go to the first listed."""
    best, best_d = None, np.inf
    for pt in points:
        if not pt.feasible:
            continue
        d = float(np.linalg.norm(np.asarray(final) - np.asarray(pt.coords)))
        if d < best_d:
            best, best_d = pt, d
    return best


def within_band(states, target, rel=SETTLE_REL, floor=SETTLE_FLOOR) -> np.ndarray:
    """Row mask: every component within ``max(rel*|target|, floor)`` of target."""
    target = np.asarray(target, dtype=float)
    tol = np.maximum(rel * np.abs(target), floor)
    return np.all(np.abs(np.asarray(states) - target) <= tol, axis=1)


def settling_time(traj: Trajectory, target, rel=SETTLE_REL, floor=SETTLE_FLOOR) -> float | None:
    """First grid time from which the trajectory stays in the band; None if it never settles."""
    inside = within_band(traj.states, target, rel, floor)
    if not inside[-1]:
        return None
    outside = np.flatnonzero(~inside)
    k = 0 if outside.size == 0 else int(outside[-1]) + 1
    return traj.grid.time(k)


def late_amplitude(traj: Trajectory) -> tuple[float, ...]:
    """Per-component max - min over the second half of the horizon."""
    t = traj.times
    half = traj.grid.t0 + 0.5 * (traj.grid.t_end - traj.grid.t0)
    window = traj.states[t >= half]
    return tuple(float(v) for v in window.max(axis=0) - window.min(axis=0))


def compute_metrics(
    traj: Trajectory,
    points,
    rel: float = SETTLE_REL,
    floor: float = SETTLE_FLOOR,
    extinction_floor: float = EXTINCTION_FLOOR,
) -> RunMetrics:
    target = nearest_feasible(traj.final, points)
    settle = None if target is None else settling_time(traj, target.coords, rel, floor)
    mins = traj.states.min(axis=0)
    return RunMetrics(
        settling_time=settle,
        late_amplitude=late_amplitude(traj),
        extinction_flag=bool(np.any(mins < extinction_floor)),
        target=None if target is None else target.label,
        target_coords=() if target is None else tuple(target.coords),
        min_state=tuple(float(v) for v in mins),
    )
