"""Print the stability checklists for the damped two-species and mutualist sets."""

from _common import CONFIGS

from fraceco.harness import ScenarioConfig, reports_for, reports_markdown
from fraceco.stability import e3_closed_form


def main():
    for name in ("damped_alpha085", "mutualist_alpha096"):
        cfg = ScenarioConfig.load(CONFIGS / f"{name}.json")
        print(f"## {name}\n")
        print(reports_markdown(reports_for(cfg)))
    p = ScenarioConfig.load(CONFIGS / "damped_alpha085.json").params
    sq, lin = e3_closed_form(p), e3_closed_form(p, squared_denominator=False)
    print(f"closed-form alpha_1: {sq['alpha_1']:.5f} (squared denominator), "
          f"{lin['alpha_1']:.5f} (first power)")


if __name__ == "__main__":
    main()
