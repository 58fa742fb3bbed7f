"""Late-window amplitude and settling time of the damped two-species run versus order."""

from _common import CONFIGS, out_arg

from fraceco.harness import ScenarioConfig, emit, run, sweep

ORDERS = [1.0, 0.95, 0.9, 0.85, 0.8, 0.75, 0.7]


def main():
    out = out_arg(__doc__, "out/damping_vs_order")
    base = ScenarioConfig.load(CONFIGS / "damped_alpha085.json")
    rows = sweep(base, "alpha", ORDERS, workers=4)
    print(f"{'alpha':>6} {'settling':>10} {'amp_x':>10} {'amp_y':>10}")
    for r in rows:
        s = "-" if r["settling_time"] is None else f"{r['settling_time']:.2f}"
        print(f"{r['alpha']:6.2f} {s:>10} {r['late_amplitude_x']:10.3g} {r['late_amplitude_y']:10.3g}")
    for a in (1.0, 0.85):
        cfg = base.replace(alpha=a)
        emit(*run(cfg), out, outputs=("timeseries", "phase"), stem=f"damped_alpha{a:g}")
    print(f"figures in {out}")


if __name__ == "__main__":
    main()
