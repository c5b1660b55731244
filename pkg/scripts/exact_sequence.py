"""H^0 of Sub -> M(lam) -> Quotient for a singular vector of M(lam), per eigenvalue.

    python scripts/exact_sequence.py --kappa 2/3 --weight=-k --depth 1,1 --side -
    python scripts/exact_sequence.py --kappa generic --weight 0 --depth 0,1 --side +
"""
import argparse
import sys

from qdslab.affine import Window
from qdslab.brst import build_complex
from qdslab.homology import eigenvalue_scan, predicted_h0
from qdslab.modules import build_verma, singular_vectors, sub_quotient_pair
from qdslab.runs import load_config, setup


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kappa", default="generic")
    ap.add_argument("--weight", default="0")
    ap.add_argument("--depth", required=True, help="depth of the singular vector, e.g. 1,1")
    ap.add_argument("--side", default="-", choices="+-")
    ap.add_argument("--window", default="4,8", help="N_t,N_h")
    ap.add_argument("--eigenvalues", type=int, default=5)
    args = ap.parse_args()
    s = setup(load_config(None, {"kappa": args.kappa, "weight": args.weight, "side": args.side}))
    nt, nh = map(int, args.window.split(","))
    beta = tuple(map(int, args.depth.split(",")))
    M = build_verma(s.cb, s.lam, Window(nt, nh))
    sv = singular_vectors(M, beta)
    if len(sv) != 1:
        print(f"expected one singular vector at {beta}, found {len(sv)}")
        return 1
    sub, quo = sub_quotient_pair(M, sv[0], beta)
    offsets = range(args.eigenvalues)
    table = {}
    for name, mod in (("M", M), ("sub", sub), ("quotient", quo)):
        c = build_complex(mod, args.side)
        h0 = {r.window.j: r.certified_dims().get(0) for r in eigenvalue_scan(c, offsets)}
        table[name] = (h0, predicted_h0(c, args.eigenvalues - 1))
    print(f"{'j':>2} " + " ".join(f"{n:>16s}" for n in table))
    good = True
    for j in offsets:
        cells = []
        for h0, pred in table.values():
            got = h0.get(j)
            cells.append(f"{'-' if got is None else got}/{'-' if pred is None else pred[j]}")
        print(f"{j:>2} " + " ".join(f"{c:>16s}" for c in cells))
        vals = [table[n][0].get(j) for n in table]
        if None not in vals:
            good = good and vals[0] == vals[1] + vals[2]
    print("columns: certified H^0 / predicted;", "additive" if good else "NOT additive")
    return 0 if good else 1


if __name__ == "__main__":
    sys.exit(main())
