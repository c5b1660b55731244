"""Run configurations and the computations behind each CLI subcommand.

Every ``run_*`` function returns ``(report, ok)`` where the report is a plain
dict with a fixed key order and canonical scalar text, so that identical
configurations give byte-identical JSON.
"""
from __future__ import annotations

import configparser
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from fractions import Fraction

from .affine import (AffineWeight, Window, condition_minus_witnesses, condition_plus_witnesses,
                     dot_act, enumerate_principal_admissible, degree_eigenvalue, make_weight,
                     plus_condition_set, plus_condition_set_bruteforce, translation)
from .brst import build_complex, build_transposed_complex, dual_pairing_check
from .checks import SuiteConfig, corrupt_structure, operator_identities, structure_report
from .fock import ConfigError
from .homology import (branching_identity, eigenvalue_scan, predicted_h0)
from .liealg import (SUPPORTED, UnsupportedAlgebra, build_root_system,
                     chevalley_structure_constants, root_name)
from .modules import AffineAlgebra, DualVerma, Verma, WindowOverflow, simple_quotient
from .scalars import KAPPA, ScalarParseError, evaluate, format_scalar, parse_scalar

MODULES = ("verma", "dual-verma", "simple")


@dataclass(frozen=True)
class RunConfig:
    type: str = "A"
    rank: int = 1
    kappa: str = "generic"
    side: str = "-"  # '+', '-' or 'both' (verify only)
    weight: str | None = None  # comma separated fundamental-weight coordinates, may use k
    module: str = "verma"
    depth_t: int = 3
    depth_h: int = 6
    s_min: int | None = None
    s_max: int | None = None
    eigenvalues: int = 4
    guard: int = 1
    branching_depth: int = 3
    format: str = "json"
    out: str | None = None
    jobs: int | None = None
    corrupt: str | None = None  # "a,b[,factor]": scale one structure constant (negative control)

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("jobs")
        d.pop("format")
        return d


_INT_FIELDS = {"rank", "depth_t", "depth_h", "s_min", "s_max", "eigenvalues", "guard", "branching_depth", "jobs"}


def _coerce(name: str, value):
    if value is None:
        return None
    if name in _INT_FIELDS:
        try:
            return int(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{name} must be an integer, got {value!r}") from None
    return str(value)


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Defaults, then the [run] section of an INI file, then non-None overrides."""
    values: dict = {}
    if path:
        cp = configparser.ConfigParser()
        try:
            with open(path, encoding="utf-8") as fh:
                cp.read_file(fh)
        except (OSError, configparser.Error) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        if not cp.has_section("run"):
            raise ConfigError(f"config {path} has no [run] section")
        names = {f.name for f in fields(RunConfig)}
        for key, val in cp.items("run"):
            key = key.replace("-", "_")
            if key not in names:
                raise ConfigError(f"unknown config key {key!r}")
            values[key] = _coerce(key, val)
    for key, val in (overrides or {}).items():
        if val is not None:
            values[key] = _coerce(key, val)
    cfg = replace(RunConfig(), **values)
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    if (cfg.type.upper(), cfg.rank) not in SUPPORTED:
        raise ConfigError(f"unsupported algebra {cfg.type}{cfg.rank}; supported: "
                          + ", ".join(f"{t}{r}" for t, r in SUPPORTED))
    if cfg.side not in ("+", "-", "both"):
        raise ConfigError(f"side must be +, - or both, got {cfg.side!r}")
    if cfg.module not in MODULES:
        raise ConfigError(f"module must be one of {', '.join(MODULES)}")
    if cfg.format not in ("json", "csv", "text"):
        raise ConfigError(f"format must be json, csv or text, got {cfg.format!r}")
    if cfg.depth_t < 0 or cfg.depth_h < 0 or cfg.eigenvalues < 1 or cfg.guard < 1:
        raise ConfigError("window sizes must be non-negative, eigenvalues and guard positive")
    parse_kappa(cfg.kappa)


def parse_kappa(text: str):
    if text.strip().lower() == "generic":
        return KAPPA
    try:
        val = parse_scalar(text)
    except ScalarParseError as exc:
        raise ConfigError(str(exc)) from None
    if not isinstance(val, (int, Fraction)):
        raise ConfigError(f"kappa must be a rational number or 'generic', got {text!r}")
    if val == 0:
        raise ConfigError("kappa = 0 (critical level) is not supported")
    return val


@dataclass
class Setup:
    cfg: RunConfig
    rs: object
    cb: object
    kappa: object
    lam: AffineWeight
    alg: AffineAlgebra = field(init=False)

    def __post_init__(self):
        self.alg = AffineAlgebra(self.cb, self.kappa)

    @property
    def window(self) -> Window:
        return Window(self.cfg.depth_t, self.cfg.depth_h)

    def module(self, kind: str | None = None, lam: AffineWeight | None = None):
        kind = kind or self.cfg.module
        lam = lam or self.lam
        if kind == "verma":
            return Verma(self.alg, lam, self.window)
        if kind == "dual-verma":
            return DualVerma(self.alg, lam, self.window)
        return simple_quotient(Verma(self.alg, lam, self.window))


def parse_weight(rs, text: str | None, kappa):
    if text is None or not text.strip():
        return (0,) * rs.rank
    parts = [p for p in text.split(",")]
    if len(parts) != rs.rank:
        raise ConfigError(f"weight needs {rs.rank} coordinates, got {len(parts)}")
    try:
        return tuple(evaluate(parse_scalar(p), kappa) for p in parts)
    except ScalarParseError as exc:
        raise ConfigError(str(exc)) from None


def setup(cfg: RunConfig) -> Setup:
    try:
        rs = build_root_system(cfg.type.upper(), cfg.rank)
    except UnsupportedAlgebra as exc:
        raise ConfigError(str(exc)) from None
    cb = chevalley_structure_constants(rs)
    if cfg.corrupt:
        try:
            bits = [int(x) for x in cfg.corrupt.split(",")]
            a, b = bits[:2]
            factor = bits[2] if len(bits) > 2 else 2
        except ValueError:
            raise ConfigError("corrupt must be 'a,b' or 'a,b,factor'") from None
        cb = corrupt_structure(cb, a, b, factor)
    kappa = parse_kappa(cfg.kappa)
    lam = make_weight(rs, parse_weight(rs, cfg.weight, kappa), kappa)
    return Setup(cfg, rs, cb, kappa, lam)


def _sides(cfg: RunConfig) -> list[str]:
    return ["+", "-"] if cfg.side == "both" else [cfg.side]


# --- roots ------------------------------------------------------------------------

def run_roots(cfg: RunConfig) -> tuple[dict, bool]:
    s = setup(cfg)
    rs, cb = s.rs, s.cb
    formula = sorted(plus_condition_set(rs), key=lambda b: (b.n, sum(b.finite), b.finite))
    brute = plus_condition_set_bruteforce(rs)
    struct = structure_report(cb)
    agree = formula == brute
    report = {
        "command": "roots",
        "algebra": rs.name,
        "rank": rs.rank,
        "dimension": cb.dim,
        "simple_roots": [root_name(r) for r in rs.simple_roots],
        "positive_roots": [root_name(r) for r in rs.positive_roots],
        "roots": [root_name(r) for r in rs.roots],
        "highest_root": root_name(rs.theta),
        "coxeter_number": rs.coxeter_number,
        "dual_coxeter_number": rs.dual_coxeter_number,
        "rho_check": [format_scalar(x) for x in rs.rho_check],
        "plus_condition_set": [str(b) for b in formula],
        "plus_condition_set_size": len(formula),
        "bruteforce_agrees": agree,
        "structure": struct,
    }
    return report, agree and struct["ok"]


# --- check ------------------------------------------------------------------------

def _admissible(s: Setup) -> dict:
    if not isinstance(s.kappa, Fraction) and not isinstance(s.kappa, int):
        return {"principal": False, "reason": "generic level"}
    kap = Fraction(s.kappa)
    p, q = kap.numerator, kap.denominator
    try:
        cands = enumerate_principal_admissible(s.rs, p, q)
    except ValueError as exc:
        return {"principal": False, "reason": str(exc)}
    for a in cands:
        if a.weight == s.lam:
            nondeg = not condition_minus_witnesses(s.rs, s.lam)
            return {"principal": True, "p": p, "q": q, "lam_bar": list(a.lam_bar),
                    "mu_bar": list(a.mu_bar), "nondegenerate": nondeg}
    return {"principal": False, "p": p, "q": q, "reason": "not in the principal admissible list"}


def run_check(cfg: RunConfig) -> tuple[dict, bool]:
    s = setup(cfg)
    plus_w = condition_plus_witnesses(s.rs, s.lam)
    minus_w = condition_minus_witnesses(s.rs, s.lam)
    report = {
        "command": "check",
        "algebra": s.rs.name,
        "kappa": format_scalar(s.kappa),
        "weight": s.lam.to_json(),
        "plus": {"pass": not plus_w, "witnesses": [str(b) for b in plus_w]},
        "minus": {"pass": not minus_w, "witnesses": [str(b) for b in minus_w]},
        "degree_eigenvalue_plus": format_scalar(degree_eigenvalue(s.rs, "+", s.lam)),
        "degree_eigenvalue_minus": format_scalar(degree_eigenvalue(s.rs, "-", s.lam)),
        "admissible": _admissible(s),
    }
    return report, True


# --- verify -----------------------------------------------------------------------

def _violation_dump(res) -> list[dict]:
    out = []
    for v in res.violations[:3]:
        if v is None:
            continue
        key, diff = v
        out.append({"source": _key_text(key),
                    "difference": [[_key_text(t), format_scalar(c)] for t, c in sorted(diff.items(), key=repr)][:8]})
    return out


def _key_text(key) -> str:
    beta, v, st = key
    return f"{list(beta)}|{v}|{list(st)}"


def run_verify(cfg: RunConfig) -> tuple[dict, bool]:
    s = setup(cfg)
    struct = structure_report(s.cb)
    ok = struct["ok"]
    sides = []
    for side in _sides(cfg):
        mod = s.module("verma")
        c = build_complex(mod, side)
        weights = c.weights()
        all_depths = s.window.depths(s.rs)
        entry = {"side": side, "saturated_weights": len(weights),
                 "unsaturated_weights": len(all_depths) - len(weights), "identities": []}
        try:
            results = operator_identities(c, weights, SuiteConfig())
        except WindowOverflow as exc:
            raise ConfigError(f"window too small: {exc}") from None
        for r in results:
            row = r.to_json()
            if not r.ok:
                row["dump"] = _violation_dump(r)
            entry["identities"].append(row)
            ok = ok and r.ok
        dual = DualVerma(s.alg, s.lam, s.window)
        pr = dual_pairing_check(build_complex(dual, side), build_transposed_complex(mod, side))
        entry["duality_pairing"] = pr.to_json()
        ok = ok and pr.ok
        bad, n = 0, 0
        for beta in weights:
            if beta[0] > cfg.branching_depth:
                continue
            lhs, rhs = branching_identity(c, beta)
            n += 1
            bad += lhs != rhs
        entry["branching"] = {"checked": n, "violations": bad, "ok": n > 0 and not bad}
        ok = ok and n > 0 and not bad
        sides.append(entry)
    report = {"command": "verify", "config": cfg.to_json(), "structure": struct, "sides": sides, "ok": ok}
    return report, ok


# --- cohomology ---------------------------------------------------------------------

def _scan_job(args) -> list[dict]:
    cfg, kind, lam_json, side, offsets = args
    s = setup(cfg)
    lam = _weight_from_json(lam_json)
    c = build_complex(s.module(kind, lam), side)
    return [_report_row(r) for r in eigenvalue_scan(c, offsets, cfg.s_min, cfg.s_max, cfg.guard)]


def _report_row(r) -> dict:
    return {"j": r.window.j, "eigenvalue": format_scalar(r.eigenvalue),
            "window": r.window_json(),
            "components": [{k: v for k, v in row.items() if k != "window"} for row in r.to_json()],
            "notes": list(r.notes)}


def _weight_from_json(d: dict) -> AffineWeight:
    return AffineWeight(tuple(parse_scalar(x) for x in d["finite"]), parse_scalar(d["level"]),
                        parse_scalar(d["d"]))


def scan(cfg: RunConfig, kind: str, lam: AffineWeight, side: str) -> list[dict]:
    """Windowed cohomology rows for eigen offsets 0..eigenvalues-1, optionally in parallel."""
    offsets = list(range(cfg.eigenvalues))
    jobs = cfg.jobs if cfg.jobs is not None else (os.cpu_count() or 1)
    jobs = max(1, min(jobs, len(offsets)))
    lam_json = lam.to_json()
    if jobs == 1:
        return _scan_job((cfg, kind, lam_json, side, offsets))
    chunks = [offsets[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(_scan_job, [(cfg, kind, lam_json, side, ch) for ch in chunks]))
    rows = [r for p in parts for r in p]
    return sorted(rows, key=lambda r: r["j"])


def _compare(rows: list[dict], predicted: dict[int, int] | None) -> tuple[list[dict], bool]:
    checks, ok = [], True
    for row in rows:
        for comp in row["components"]:
            if not comp["certified"]:
                continue
            if comp["i"] != 0:
                expect = 0
            elif predicted is not None:
                expect = predicted.get(row["j"])
            else:
                expect = None
            if expect is None:
                continue
            good = comp["dim"] == expect
            ok = ok and good
            checks.append({"j": row["j"], "i": comp["i"], "dim": comp["dim"], "expected": expect,
                           "pass": good})
    return checks, ok


def _certified_h0(rows: list[dict]) -> dict[int, int]:
    out = {}
    for row in rows:
        for comp in row["components"]:
            if comp["i"] == 0 and comp["certified"]:
                out[row["j"]] = comp["dim"]
    return out


def run_cohomology(cfg: RunConfig) -> tuple[dict, bool]:
    s = setup(cfg)
    side = "-" if cfg.side == "both" else cfg.side
    mod = s.module()
    c = build_complex(mod, side)
    predicted = predicted_h0(c, cfg.eigenvalues - 1)
    rows = scan(cfg, cfg.module, s.lam, side)
    checks, ok = _compare(rows, predicted)
    certified = sum(1 for r in rows for comp in r["components"] if comp["certified"])
    report = {
        "command": "cohomology",
        "config": cfg.to_json(),
        "algebra": s.rs.name,
        "side": side,
        "module": cfg.module,
        "top_eigenvalue": format_scalar(degree_eigenvalue(s.rs, side, s.lam)),
        "predicted_h0": None if predicted is None else [predicted[j] for j in sorted(predicted)],
        "certified_h0": [[j, d] for j, d in sorted(_certified_h0(rows).items())],
        "eigenvalues": rows,
        "checks": checks,
        "certified_components": certified,
        "ok": ok and certified > 0,
    }
    return report, report["ok"]


def dual_partner(s: Setup) -> AffineWeight:
    """t_{-rho^vee} o lam, whose side-minus reduction matches the side-plus reduction of M(lam)*."""
    mu = tuple(-x for x in s.rs.rho_check)
    return dot_act(s.rs, translation(s.rs, mu), s.lam)


def run_duality(cfg: RunConfig) -> tuple[dict, bool]:
    s = setup(cfg)
    partner = dual_partner(s)
    plus_rows = scan(cfg, "dual-verma", s.lam, "+")
    minus_rows = scan(cfg, "verma", partner, "-")
    a, b = _certified_h0(plus_rows), _certified_h0(minus_rows)
    shared = sorted(set(a) & set(b))
    pairs = [{"j": j, "plus_dual": a[j], "minus_translated": b[j], "pass": a[j] == b[j]} for j in shared]
    higher_ok = all(comp["dim"] == 0 for rows in (plus_rows, minus_rows) for r in rows
                    for comp in r["components"] if comp["certified"] and comp["i"] != 0)
    eig_ok = degree_eigenvalue(s.rs, "+", s.lam) == degree_eigenvalue(s.rs, "-", partner)
    ok = bool(shared) and all(p["pass"] for p in pairs) and higher_ok and eig_ok
    report = {
        "command": "duality",
        "config": cfg.to_json(),
        "weight": s.lam.to_json(),
        "partner_weight": partner.to_json(),
        "top_eigenvalues_agree": eig_ok,
        "shared_certified": pairs,
        "higher_vanish": higher_ok,
        "plus_dual": plus_rows,
        "minus_translated": minus_rows,
        "ok": ok,
    }
    return report, ok


COMMANDS = {
    "roots": run_roots,
    "check": run_check,
    "verify": run_verify,
    "cohomology": run_cohomology,
    "duality": run_duality,
}
