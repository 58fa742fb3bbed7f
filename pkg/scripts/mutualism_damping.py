"""Prey with two mutualistic predators: trajectories at a few orders."""

from _common import CONFIGS, out_arg

from fraceco.harness import ScenarioConfig, emit, run


def main():
    out = out_arg(__doc__, "out/mutualism")
    base = ScenarioConfig.load(CONFIGS / "mutualist_alpha096.json")
    for a in (1.0, 0.96, 0.9):
        res = run(base.replace(alpha=a))
        m = res.metrics
        print(f"alpha {a:g}: target {m.target} settling {m.settling_time} "
              f"amplitude {tuple(round(v, 5) for v in m.late_amplitude)}")
        emit(*res, out, outputs=("timeseries", "phase"), stem=f"mutualist_alpha{a:g}")
    print(f"figures in {out}")


if __name__ == "__main__":
    main()
