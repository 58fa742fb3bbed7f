"""JSON scenario configs."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from ..fraccalc import TimeGrid, frac_order
from ..models import Params2, Params3

MODELS = {"two_species": (Params2, 2), "three_species": (Params3, 3)}
ARTIFACTS = ("timeseries", "phase", "stability", "metrics")


@dataclass(frozen=True)
class ScenarioConfig:
    model: str
    params: Params2 | Params3
    alpha: float
    initial_state: tuple[float, ...]
    grid: TimeGrid
    outputs: tuple[str, ...] = ARTIFACTS

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {sorted(MODELS)}")
        cls, dim = MODELS[self.model]
        if not isinstance(self.params, cls):
            raise ValueError(f"{self.model} needs {cls.__name__}, got {type(self.params).__name__}")
        object.__setattr__(self, "alpha", frac_order(self.alpha))
        state = tuple(float(v) for v in self.initial_state)
        if len(state) != dim:
            raise ValueError(f"{self.model} needs {dim} initial densities, got {len(state)}")
        if not all(math.isfinite(v) and v >= 0 for v in state):
            raise ValueError("initial densities must be finite and non-negative")
        object.__setattr__(self, "initial_state", state)
        outputs = tuple(self.outputs)
        bad = set(outputs) - set(ARTIFACTS)
        if bad:
            raise ValueError(f"unknown outputs {sorted(bad)}; expected a subset of {ARTIFACTS}")
        object.__setattr__(self, "outputs", outputs)

    @property
    def dim(self) -> int:
        return MODELS[self.model][1]

    def replace(self, **changes) -> "ScenarioConfig":
        data = {
            "model": self.model,
            "params": self.params,
            "alpha": self.alpha,
            "initial_state": self.initial_state,
            "grid": self.grid,
            "outputs": self.outputs,
        }
        data.update(changes)
        return ScenarioConfig(**data)

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "params": self.params.to_dict(),
            "alpha": self.alpha,
            "initial_state": list(self.initial_state),
            "grid": {"t0": self.grid.t0, "h": self.grid.h, "n_steps": self.grid.n_steps},
            "outputs": list(self.outputs),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        required = {"model", "params", "alpha", "initial_state", "grid"}
        known = required | {"outputs"}
        missing = required - set(data)
        unknown = set(data) - known
        if missing or unknown:
            raise ValueError(f"config: missing {sorted(missing)}, unknown {sorted(unknown)}")
        model = data["model"]
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}; expected one of {sorted(MODELS)}")
        params = MODELS[model][0].from_dict(data["params"])
        return cls(
            model=model,
            params=params,
            alpha=data["alpha"],
            initial_state=tuple(data["initial_state"]),
            grid=_grid_from_dict(data["grid"]),
            outputs=tuple(data.get("outputs", ARTIFACTS)),
        )

    @classmethod
    def load(cls, path) -> "ScenarioConfig":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot read config {path}: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON ({exc})") from exc
        return cls.from_dict(data)

    def dump(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n")


def _grid_from_dict(g: dict) -> TimeGrid:
    # either {t0, h, n_steps} or {t0, h, t_end}
    t0 = float(g.get("t0", 0.0))
    if "n_steps" in g:
        if "t_end" in g:
            raise ValueError("grid: give n_steps or t_end, not both")
        return TimeGrid(t0, float(g["h"]), g["n_steps"])
    if "t_end" in g:
        return TimeGrid.from_span(t0, float(g["t_end"]), float(g["h"]))
    raise ValueError("grid needs h and one of n_steps / t_end")
