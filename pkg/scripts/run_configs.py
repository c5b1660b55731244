"""Run every committed config and write its JSON report to results/.

    python scripts/run_configs.py [--only PREFIX] [--results DIR]
"""
import argparse
import sys
import time
from pathlib import Path

from qdslab.cli import render
from qdslab.runs import COMMANDS, load_config

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", default="", help="run configs whose name starts with this")
    ap.add_argument("--results", default=str(ROOT / "results"))
    args = ap.parse_args()
    out_dir = Path(args.results)
    out_dir.mkdir(parents=True, exist_ok=True)
    failed = 0
    for path in sorted((ROOT / "configs").glob(f"{args.only}*.ini")):
        cmd = path.stem.split("_")[0]
        cfg = load_config(str(path))
        t = time.perf_counter()
        report, ok = COMMANDS[cmd](cfg)
        dt = time.perf_counter() - t
        (out_dir / f"{path.stem}.json").write_text(render(report, "json"), encoding="utf-8")
        failed += not ok
        print(f"{'ok  ' if ok else 'FAIL'} {path.stem:32s} {dt:7.1f}s")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
