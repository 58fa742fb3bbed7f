"""Coarse search for a two-species set where memory prevents near-extinction.

Looks for parameters where the classical run dips below the extinction floor
while a fractional run stays well above it.
"""

import itertools

from fraceco.fraccalc import TimeGrid
from fraceco.harness import ScenarioConfig, run
from fraceco.harness.metrics import EXTINCTION_FLOOR
from fraceco.models import Params2

INIT = (0.2, 0.15)


def main():
    grid = TimeGrid.from_span(0.0, 50.0, 0.0025)
    hits = []
    for psi, phi in itertools.product((50.0, 100.0, 200.0), (0.02, 0.5)):
        base = ScenarioConfig("two_species", Params2(1.0, psi, phi), 1.0, INIT, grid)
        lo1 = min(run(base).metrics.min_state)
        lo07 = min(run(base.replace(alpha=0.7)).metrics.min_state)
        flag = lo1 < EXTINCTION_FLOOR < lo07
        print(f"psi {psi:6g} phi {phi:5g}  min(alpha=1) {lo1:.3g}  min(alpha=0.7) {lo07:.3g}  {'*' if flag else ''}")
        if flag:
            hits.append((psi, phi))
    print("candidates:", hits or "none")


if __name__ == "__main__":
    main()
