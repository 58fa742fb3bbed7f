import argparse
from pathlib import Path

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def out_arg(description: str, default: str) -> Path:
    ap = argparse.ArgumentParser(description=description)
    ap.add_argument("--out", default=default, help="output directory")
    out = Path(ap.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)
    return out
