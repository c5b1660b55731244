"""How many eigenvalue components are certified as the module window grows.

    python scripts/window_sweep.py --side - --weight 2/7 --max-depth 5
"""
import argparse
import sys
import time
from dataclasses import replace

from qdslab.runs import load_config, run_cohomology


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--side", default="-", choices="+-")
    ap.add_argument("--kappa", default="generic")
    ap.add_argument("--weight", default="2/7")
    ap.add_argument("--module", default="verma")
    ap.add_argument("--max-depth", type=int, default=5)
    ap.add_argument("--eigenvalues", type=int, default=6)
    args = ap.parse_args()
    base = load_config(None, {"side": args.side, "kappa": args.kappa, "weight": args.weight,
                              "module": args.module, "eigenvalues": args.eigenvalues})
    print(f"{'N_t':>3} {'N_h':>3} {'certified':>9} {'H0':>24} {'sec':>7}")
    for nt in range(1, args.max_depth + 1):
        cfg = replace(base, depth_t=nt, depth_h=2 * nt if args.side == "-" else nt + 1)
        t = time.perf_counter()
        rep, _ = run_cohomology(cfg)
        h0 = [d for _, d in rep["certified_h0"]]
        print(f"{cfg.depth_t:>3} {cfg.depth_h:>3} {rep['certified_components']:>9} {str(h0):>24} "
              f"{time.perf_counter() - t:7.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
