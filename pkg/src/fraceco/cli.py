"""Command-line entry point: ``fraceco <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .fraccalc import NonFiniteStateError
from .harness import (
    ScenarioConfig,
    emit,
    equilibria_for,
    reports_csv,
    reports_json,
    reports_markdown,
    reports_for,
    run,
    sweep,
)
from .harness.validate import run_checks

OUT_ENV = "FRACECO_OUT"


def output_dir(arg: str | None) -> Path:
    """``--out`` wins, then ``$FRACECO_OUT``, then ``./out``."""
    if arg:
        return Path(arg)
    return Path(os.environ.get(OUT_ENV) or "out")


def _parse_values(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad value list {text!r}: {exc}") from exc


def cmd_simulate(args) -> int:
    cfg = ScenarioConfig.load(args.config)
    result = run(cfg)
    outdir = output_dir(args.out)
    paths = emit(result.trajectory, result.reports, result.metrics, outdir, cfg.outputs, Path(args.config).stem)
    m = result.metrics
    print(f"target {m.target}  settling_time {m.settling_time}  extinction {m.extinction_flag}")
    print("late_amplitude " + " ".join(f"{a:.6g}" for a in m.late_amplitude))
    for p in paths:
        print(p)
    return 0


def cmd_equilibria(args) -> int:
    cfg = ScenarioConfig.load(args.config)
    pts = [pt.to_dict() for pt in equilibria_for(cfg)]
    print(json.dumps(pts, indent=2, sort_keys=True))
    return 0


def cmd_stability(args) -> int:
    cfg = ScenarioConfig.load(args.config)
    reports = reports_for(cfg)
    render = {"md": reports_markdown, "json": reports_json, "csv": reports_csv}[args.format]
    sys.stdout.write(render(reports))
    return 0


def cmd_sweep(args) -> int:
    cfg = ScenarioConfig.load(args.config)
    rows = sweep(cfg, args.axis, args.values, workers=args.workers)
    if not rows:
        print("no values given; nothing to run")
        return 0
    header = list(rows[0])
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join("" if row[k] is None else str(row[k]) for k in header))
    text = "\n".join(lines) + "\n"
    outdir = output_dir(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / f"{Path(args.config).stem}_sweep_{args.axis}.csv"
    path.write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    print(path)
    return 0


def cmd_validate(args) -> int:
    failed = 0
    for check in run_checks():
        mark = "PASS" if check.passed else "FAIL"
        failed += not check.passed
        print(f"[{mark}] {check.name}: {check.detail}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fraceco", description="Fractional-order predator-prey toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a scenario and write CSV/SVG/JSON/markdown")
    p.add_argument("config")
    p.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./out)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("equilibria", help="print the equilibria of a scenario as JSON")
    p.add_argument("config")
    p.set_defaults(func=cmd_equilibria)

    p = sub.add_parser("stability", help="print stability checklists for the feasible equilibria")
    p.add_argument("config")
    p.add_argument("--format", choices=("md", "json", "csv"), default="md")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("sweep", help="vary one parameter and tabulate run metrics")
    p.add_argument("config")
    p.add_argument("--axis", required=True)
    p.add_argument("--values", required=True, type=_parse_values, help="comma-separated list")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="run the built-in oracle checks")
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NonFiniteStateError as exc:
        print(f"error: solver diverged: {exc}", file=sys.stderr)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
