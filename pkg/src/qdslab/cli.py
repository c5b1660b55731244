"""Command-line front end: ``qdslab {roots,check,verify,cohomology,duality}``.

Exit codes: 0 pass, 1 mathematical violation, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .fock import ConfigError
from .runs import COMMANDS, MODULES, RunConfig, load_config

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="INI file with a [run] section; flags override it")
    p.add_argument("--type", help="Lie type letter (A, B, C)")
    p.add_argument("--rank", type=int)
    p.add_argument("--kappa", help="kappa = level + h^vee: a fraction like 2/3, or 'generic'")
    p.add_argument("--side", choices=["+", "-", "both"])
    p.add_argument("--weight", help="finite part in fundamental weights, comma separated; may use k (use --weight=-k)")
    p.add_argument("--module", choices=list(MODULES))
    p.add_argument("--depth-t", type=int, dest="depth_t", help="window: maximal delta-depth")
    p.add_argument("--depth-h", type=int, dest="depth_h", help="window: maximal |height| of the finite part")
    p.add_argument("--s-min", type=int, dest="s_min", help="lowest s-layer of the window (integer)")
    p.add_argument("--s-max", type=int, dest="s_max", help="highest s-layer of the window (integer)")
    p.add_argument("--eigenvalues", type=int, help="how many eigenvalues to scan, starting with the top one")
    p.add_argument("--guard", type=int, help="guard band (in s) used for certification")
    p.add_argument("--format", choices=["json", "csv", "text"])
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, help="worker processes for the eigenvalue scan")
    p.add_argument("--corrupt", help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qdslab", description="Exact reduction complexes for affine Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "roots": "root system, condition set and structure-constant checks",
        "check": "evaluate the side conditions and admissibility of a weight",
        "verify": "operator identity suites, duality pairing and branching on a window",
        "cohomology": "windowed cohomology per degree-operator eigenvalue, compared with predictions",
        "duality": "side + reduction of M(lam)* against side - reduction of the translated Verma module",
    }
    for name, text in helps.items():
        _common(sub.add_parser(name, help=text, description=text))
    return parser


# --- rendering --------------------------------------------------------------------

def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        return _csv(report)
    return _text(report)


def _table(report: dict) -> tuple[list[str], list[list]]:
    cmd = report["command"]
    if cmd == "roots":
        return ["root", "positive", "in_condition_set"], (
            [[r, r in report["positive_roots"], False] for r in report["roots"]]
            + [[b, True, True] for b in report["plus_condition_set"]])
    if cmd == "check":
        return ["side", "pass", "witnesses"], [
            [s, report[k]["pass"], " ".join(report[k]["witnesses"])] for s, k in (("+", "plus"), ("-", "minus"))]
    if cmd == "verify":
        rows = []
        for side in report["sides"]:
            for r in side["identities"]:
                rows.append([side["side"], r["name"], r["checked"], r["skipped"], r["violations"], r["ok"]])
            p = side["duality_pairing"]
            rows.append([side["side"], "duality pairing", p["checked"], p["skipped"], p["mismatches"], p["ok"]])
            b = side["branching"]
            rows.append([side["side"], "branching", b["checked"], 0, b["violations"], b["ok"]])
        return ["side", "identity", "checked", "skipped", "violations", "ok"], rows
    if cmd == "cohomology":
        return ["j", "eigenvalue", "i", "dim", "certified", "rank_in", "rank_out"], [
            [r["j"], r["eigenvalue"], c["i"], c["dim"], c["certified"], c["rank_in"], c["rank_out"]]
            for r in report["eigenvalues"] for c in r["components"]]
    if cmd == "duality":
        return ["j", "plus_dual", "minus_translated", "pass"], [
            [p["j"], p["plus_dual"], p["minus_translated"], p["pass"]] for p in report["shared_certified"]]
    return [], []


def _csv(report: dict) -> str:
    head, rows = _table(report)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(head)
    w.writerows(rows)
    return buf.getvalue()


def _text(report: dict) -> str:
    head, rows = _table(report)
    lines = [f"{report['command']}: " + ("ok" if report.get("ok", True) else "FAILED")]
    for k in ("algebra", "kappa", "side", "module", "top_eigenvalue"):
        if k in report:
            lines.append(f"  {k}: {report[k]}")
    if rows:
        widths = [max(len(str(x)) for x in col) for col in zip(head, *rows)]
        lines.append(("  " + "  ".join(str(h).ljust(w) for h, w in zip(head, widths))).rstrip())
        for r in rows:
            lines.append(("  " + "  ".join(str(x).ljust(w) for x, w in zip(r, widths))).rstrip())
    return "\n".join(lines) + "\n"


# --- entry point ------------------------------------------------------------------

def _overrides(ns: argparse.Namespace) -> dict:
    names = {f for f in RunConfig.__dataclass_fields__}
    return {k: v for k, v in vars(ns).items() if k in names}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = load_config(ns.config, _overrides(ns))
        report, ok = COMMANDS[ns.command](cfg)
    except ConfigError as exc:
        print(f"qdslab: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(report, cfg.format)
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"qdslab: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_VIOLATION


if __name__ == "__main__":
    raise SystemExit(main())
