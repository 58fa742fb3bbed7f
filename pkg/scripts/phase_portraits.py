"""Phase portraits of every shipped scenario."""

from _common import CONFIGS, out_arg

from fraceco.harness import ScenarioConfig, emit, run


def main():
    out = out_arg(__doc__, "out/phase")
    for path in sorted(CONFIGS.glob("*.json")):
        cfg = ScenarioConfig.load(path)
        written = emit(*run(cfg), out, outputs=("phase",), stem=path.stem)
        print(path.stem, " ".join(p.name for p in written if p.suffix == ".svg"))


if __name__ == "__main__":
    main()
