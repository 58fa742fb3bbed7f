"""Classical runs with and without harvesting, plus a predator-harvest sweep."""

import numpy as np
from _common import CONFIGS, out_arg

from fraceco.harness import ScenarioConfig, emit, run, sweep


def main():
    out = out_arg(__doc__, "out/harvest")
    for name in ("unharvested", "harvested"):
        res = run(ScenarioConfig.load(CONFIGS / f"{name}.json"))
        m = res.metrics
        print(f"{name:12s} target {m.target} settling {m.settling_time} amplitude {m.late_amplitude}")
        emit(*res, out, outputs=("timeseries", "phase"), stem=name)
    base = ScenarioConfig.load(CONFIGS / "unharvested.json")
    for axis in ("eps2", "eps1"):
        rows = sweep(base, axis, list(np.round(np.linspace(0, 1, 6), 2)), workers=4)
        print(f"\nsweep {axis}")
        for r in rows:
            s = "-" if r["settling_time"] is None else f"{r['settling_time']:.2f}"
            print(f"  {r[axis]:.2f}  settling {s:>7}  amp_y {r['late_amplitude_y']:.3g}")


if __name__ == "__main__":
    main()
