"""File emission: CSV, SVG, JSON and markdown tables.

All writers are deterministic: fixed float formatting, sorted JSON keys, and
SVG output with a fixed hash salt and no timestamp.
"""

from __future__ import annotations

import csv
import io
import json
from itertools import combinations
from pathlib import Path

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from ..fraccalc import Trajectory
from ..stability import StabilityReport
from .metrics import RunMetrics

COMPONENTS = "xyz"
_SVG_RC = {"svg.hashsalt": "fraceco", "svg.fonttype": "path"}
_MAX_PLOT_POINTS = 5000
TICK, CROSS = "✓", "✗"


def _write_text(path: Path, text: str) -> Path:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def _csv_text(header: list[str], data: np.ndarray) -> str:
    buf = io.StringIO()
    np.savetxt(buf, data, fmt="%.17g", delimiter=",", header=",".join(header), comments="")
    return buf.getvalue()


def timeseries_csv(traj: Trajectory) -> str:
    header = ["t"] + list(COMPONENTS[: traj.dim])
    return _csv_text(header, np.column_stack([traj.times, traj.states]))


def phase_csv(traj: Trajectory) -> str:
    return _csv_text(list(COMPONENTS[: traj.dim]), traj.states)


def _thin(n: int) -> slice:
    return slice(None, None, max(1, -(-n // _MAX_PLOT_POINTS)))


def _save_svg(fig: Figure, path: Path) -> Path:
    try:
        with matplotlib.rc_context(_SVG_RC):
            fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def timeseries_svg(traj: Trajectory, path, title: str = "") -> Path:
    fig = Figure(figsize=(7, 4))
    ax = fig.add_subplot()
    sl = _thin(traj.states.shape[0])
    for i in range(traj.dim):
        ax.plot(traj.times[sl], traj.states[sl, i], label=COMPONENTS[i], lw=1.2)
    ax.set_xlabel("t")
    ax.set_ylabel("density")
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return _save_svg(fig, Path(path))


def phase_svg(traj: Trajectory, path, i: int = 0, j: int = 1, target=None, title: str = "") -> Path:
    fig = Figure(figsize=(5, 5))
    ax = fig.add_subplot()
    sl = _thin(traj.states.shape[0])
    ax.plot(traj.states[sl, i], traj.states[sl, j], lw=1.0)
    ax.plot(*traj.states[0, [i, j]], "o", ms=4, label="start")
    if target is not None:
        ax.plot(target[i], target[j], "*", ms=9, label="equilibrium")
    ax.set_xlabel(COMPONENTS[i])
    ax.set_ylabel(COMPONENTS[j])
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return _save_svg(fig, Path(path))


def reports_json(reports: list[StabilityReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n"


def _eq_cell(r: StabilityReport) -> str:
    coords = ", ".join(f"{c:.4g}" for c in r.equilibrium.coords)
    return f"{r.equilibrium.label} ({coords})"


def _mark(ok: bool) -> str:
    return TICK if ok else CROSS


def checklist_rows(reports: list[StabilityReport]) -> list[list[str]]:
    rows = []
    for r in reports:
        for c in r.conditions:
            rows.append([_eq_cell(r), c.name, c.render(), _mark(c.passed)])
    return rows


def verdict_rows(reports: list[StabilityReport]) -> list[list[str]]:
    rows = []
    for r in reports:
        eigs = ", ".join(_fmt_complex(z) for z in r.eigenvalues)
        crit = "-" if r.critical_alpha_raw is None else f"{r.critical_alpha_raw:.4g}"
        rows.append([_eq_cell(r), eigs, f"{r.matignon_margin:.4g}", crit, r.verdict])
    return rows


def _fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.4g}"
    return f"{z.real:.4g}{z.imag:+.4g}i"


def _md_table(header: list[str], rows: list[list[str]]) -> str:
    esc = lambda s: str(s).replace("|", "\\|")
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(esc(c) for c in row) + " |" for row in rows]
    return "\n".join(lines)


def reports_markdown(reports: list[StabilityReport]) -> str:
    alpha = reports[0].alpha if reports else float("nan")
    parts = [
        f"# Stability checklist (alpha = {alpha:g})",
        "",
        _md_table(["Equilibrium", "Condition", "Evaluated", "Result"], checklist_rows(reports)),
        "",
        "## Eigenvalue verdicts",
        "",
        _md_table(
            ["Equilibrium", "Eigenvalues", "Sector margin", "Critical order", "Verdict"],
            verdict_rows(reports),
        ),
    ]
    notes = [f"- {r.equilibrium.label}: {n}" for r in reports for n in r.notes]
    if notes:
        parts += ["", "## Notes", ""] + notes
    return "\n".join(parts) + "\n"


def reports_csv(reports: list[StabilityReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["equilibrium", "condition", "lhs", "relation", "rhs", "passed"])
    for r in reports:
        for c in r.conditions:
            rhs = c.rhs if not isinstance(c.rhs, tuple) else f"({c.rhs[0]!r}, {c.rhs[1]!r})"
            w.writerow([_eq_cell(r), c.name, repr(c.lhs), c.relation, rhs, _mark(c.passed)])
    return buf.getvalue()


def emit(
    traj: Trajectory,
    reports: list[StabilityReport],
    metrics: RunMetrics,
    outdir,
    outputs=("timeseries", "phase", "stability", "metrics"),
    stem: str = "run",
) -> list[Path]:
    """Write the requested artifacts into ``outdir`` and return their paths."""
    outdir = Path(outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {outdir}: {exc}") from exc
    written = []
    target = metrics.target_coords or None
    if "timeseries" in outputs:
        written.append(_write_text(outdir / f"{stem}_timeseries.csv", timeseries_csv(traj)))
        written.append(timeseries_svg(traj, outdir / f"{stem}_timeseries.svg", stem))
    if "phase" in outputs:
        written.append(_write_text(outdir / f"{stem}_phase.csv", phase_csv(traj)))
        for i, j in combinations(range(traj.dim), 2):
            name = f"{stem}_phase_{COMPONENTS[i]}{COMPONENTS[j]}.svg"
            written.append(phase_svg(traj, outdir / name, i, j, target, stem))
    if "stability" in outputs:
        written.append(_write_text(outdir / f"{stem}_stability.json", reports_json(reports)))
        written.append(_write_text(outdir / f"{stem}_stability.md", reports_markdown(reports)))
        written.append(_write_text(outdir / f"{stem}_stability.csv", reports_csv(reports)))
    if "metrics" in outputs:
        text = json.dumps(metrics.to_dict(), indent=2, sort_keys=True) + "\n"
        written.append(_write_text(outdir / f"{stem}_metrics.json", text))
    return written
