"""Exact cohomology of the reduction complex.

Three computations:

* ``weight_cohomology_standard``: cohomology of d^st on one weight space (finite).
* ``windowed_cohomology``: cohomology of d = d^st + chi on one eigenspace
  of the degree operator, truncated to a finite range of the s-grading.
* ``branching_space``: joint kernel of the dressed Heisenberg modes.

The eigenspace with eigenvalue h_top - j is graded by an integer sigma
(side '+': delta-depth k; side '-': finite height of beta). d^st keeps sigma
and chi lowers it by one, so F_p = (sigma <= p) is a subcomplex and the
window T = [layer_lo, layer_hi] is F_{layer_hi} / F_{layer_lo - 1}.

Certification of H^i(T) against the untruncated eigenspace uses the first
page E_1 = H(d^st) of the sigma filtration: H^i(T) is the true H^i when
E_1^i and E_1^{i+1} vanish on every layer above the window (a finite set,
checked exactly) and E_1^{i-1}, E_1^i vanish on every layer below it. Only a
guard band of layers below the window can be inspected; vanishing beyond the
guard band is an assumption recorded in the report.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .affine import Depth, degree_eigenvalue, in_positive_cone
from .brst import BrstComplex
from .linalg import compose_is_zero, kernel, rank
from .qseries import colored_partitions
from .scalars import Scalar, format_scalar, simplify


class UnsaturatedWeight(LookupError):
    pass


class ConditionViolated(ValueError):
    pass


# --- per-weight cohomology of d^st ---------------------------------------------

@dataclass
class GhostRow:
    i: int
    dim_c: int
    rank_in: int
    rank_out: int

    @property
    def dim_h(self) -> int:
        return self.dim_c - self.rank_in - self.rank_out


@dataclass
class WeightCohomology:
    beta: Depth
    rows: dict[int, GhostRow]

    def dims(self) -> dict[int, int]:
        return {i: r.dim_h for i, r in self.rows.items() if r.dim_h}

    def euler(self) -> tuple[int, int]:
        """(alternating sum of dim H, alternating sum of dim C)."""
        return (sum((-1) ** (i % 2) * r.dim_h for i, r in self.rows.items()),
                sum((-1) ** (i % 2) * r.dim_c for i, r in self.rows.items()))

    def to_json(self) -> dict:
        return {"beta": list(self.beta),
                "rows": [{"i": r.i, "dim_c": r.dim_c, "rank_in": r.rank_in, "rank_out": r.rank_out,
                          "dim_h": r.dim_h} for _, r in sorted(self.rows.items())]}


def _columns(op_fn, keys, index: dict) -> list[dict]:
    cols = []
    for k in keys:
        col = {}
        for t, v in op_fn(k).items():
            j = index.get(t)
            if j is None:
                raise AssertionError(f"differential left the block: {t}")
            col[j] = v
        cols.append(col)
    return cols


def complex_ranks(groups: dict[int, list], op_fn, check_square: bool = True) -> dict[int, GhostRow]:
    """Ranks of a cochain complex given by ghost-graded keys and a differential on keys."""
    index = {i: {k: n for n, k in enumerate(keys)} for i, keys in groups.items()}
    mats = {}
    for i, keys in groups.items():
        tgt = index.get(i + 1, {})
        cols = []
        for k in keys:
            col = {}
            for t, v in op_fn(k).items():
                j = tgt.get(t)
                if j is None:
                    raise AssertionError(f"differential left the block at ghost {i}: {t}")
                col[j] = v
            cols.append(col)
        mats[i] = cols
    if check_square:
        for i in groups:
            if i + 1 in mats and not compose_is_zero(mats[i], mats[i + 1]):
                raise AssertionError(f"d^2 != 0 between ghost {i} and {i + 2}")
    ranks = {i: rank(cols) for i, cols in mats.items()}
    return {i: GhostRow(i, len(keys), ranks.get(i - 1, 0), ranks[i]) for i, keys in groups.items()}


def weight_cohomology_standard(c: BrstComplex, beta: Depth) -> WeightCohomology:
    beta = tuple(beta)
    if not c.saturated(beta):
        raise UnsaturatedWeight(f"weight {beta} is not saturated")
    dst = c.standard_differential()
    return WeightCohomology(beta, complex_ranks(c.basis_by_ghost(beta), dst.fn))


# --- the s-grading ---------------------------------------------------------------

def eigen_offset(c: BrstComplex, beta: Depth) -> int:
    """j with eigenvalue(beta) = h_top - j."""
    j = simplify(c.eigenvalue((0,) * (c.rs.rank + 1)) - c.eigenvalue(beta))
    if not isinstance(j, int):
        raise ValueError(f"eigenvalue offset {j} is not an integer")
    return j


def layer_of(c: BrstComplex, beta: Depth) -> int:
    return beta[0] if c.eigen_side == "+" else sum(beta[1:])


def layer_floor(c: BrstComplex, j: int) -> int:
    if c.eigen_side == "+":
        return 0
    return -j * sum(c.rs.theta)


def slice_weights(c: BrstComplex, j: int, sig: int) -> list[Depth]:
    """Depths in Q_+ with eigen offset j and s-grading sigma."""
    rs = c.rs
    if c.eigen_side == "+":
        k, ht = sig, j - sig
    else:
        k, ht = j, sig
    if k < 0:
        return []
    lo = [-k * t for t in rs.theta]
    out = []
    # choose the first r-1 coordinates, the last is fixed by the height
    ranges = [range(l, ht - sum(lo) + l + 1) for l in lo[:-1]]
    for head in product(*ranges):
        last = ht - sum(head)
        beta = (k,) + tuple(head) + (last,)
        if in_positive_cone(rs, beta):
            out.append(beta)
    return sorted(out)


def first_page_layer(c: BrstComplex, j: int, sig: int) -> dict[int, int] | None:
    """E_1 dims per ghost on one layer; None when a weight of the layer is not saturated."""
    total: dict[int, int] = {}
    for beta in slice_weights(c, j, sig):
        if not c.saturated(beta):
            return None
        for i, r in weight_cohomology_standard(c, beta).rows.items():
            if r.dim_h:
                total[i] = total.get(i, 0) + r.dim_h
    return total


# --- windowed cohomology of d ------------------------------------------------------

@dataclass(frozen=True)
class LayerWindow:
    """Eigenvalue offset j (eigenvalue h_top - j) and a sigma range with a guard band."""

    j: int
    layer_lo: int
    layer_hi: int
    guard: int = 1

    def to_json(self) -> dict:
        return {"j": self.j, "layer_lo": self.layer_lo, "layer_hi": self.layer_hi, "guard": self.guard}


@dataclass
class CohomologyReport:
    eigenvalue: Scalar
    window: LayerWindow
    s_range: tuple[Scalar, Scalar]
    rows: dict[int, GhostRow]
    certified: dict[int, bool]
    e1: dict[int, dict[int, int]] = field(default_factory=dict)  # sigma -> ghost -> dim
    notes: list[str] = field(default_factory=list)
    grading: str = "D"  # the s-grading functional: D (side '+') or rho^vee (side '-')

    def dim(self, i: int) -> int:
        r = self.rows.get(i)
        return r.dim_h if r else 0

    def certified_dims(self) -> dict[int, int]:
        return {i: self.dim(i) for i, ok in sorted(self.certified.items()) if ok}

    def window_json(self) -> dict:
        return {"grading": self.grading, "s_min": format_scalar(self.s_range[0]),
                "s_max": format_scalar(self.s_range[1]), **self.window.to_json()}

    def to_json(self) -> list[dict]:
        win = self.window_json()
        out = []
        for i in sorted(set(self.rows) | set(self.certified)):
            r = self.rows.get(i)
            out.append({"a": format_scalar(self.eigenvalue), "i": i, "dim": self.dim(i),
                        "certified": bool(self.certified.get(i, False)),
                        "rank_in": r.rank_in if r else 0, "rank_out": r.rank_out if r else 0,
                        "window": win})
        return out


def top_grading_value(c: BrstComplex) -> Scalar:
    lam = c.module.lam
    if c.eigen_side == "+":
        return lam.d
    from .affine import pair_coweight
    return pair_coweight(c.rs, lam, c.rs.rho_check)


def windowed_cohomology(c: BrstComplex, sw: LayerWindow) -> CohomologyReport:
    j, lo, hi = sw.j, sw.layer_lo, sw.layer_hi
    smin = layer_floor(c, j)
    lo = max(lo, smin)
    layers = {s: slice_weights(c, j, s) for s in range(lo, hi + 1)}
    for s, ws in layers.items():
        for beta in ws:
            if not c.saturated(beta):
                raise UnsaturatedWeight(f"weight {beta} (sigma={s}) is not saturated")
    groups: dict[int, list] = {}
    for s in range(lo, hi + 1):
        for beta in layers[s]:
            for i, keys in c.basis_by_ghost(beta).items():
                groups.setdefault(i, []).extend(keys)
    dst, chi = c.standard_differential(), c.character_term()

    def truncated_differential(key):
        out = dst.fn(key)
        if layer_of(c, key[0]) - 1 >= lo:
            for t, v in chi.fn(key).items():
                out[t] = out.get(t, 0) + v
                if not out[t]:
                    del out[t]
        return out

    for i in range(min(groups, default=0) - 1, max(groups, default=0) + 2):
        groups.setdefault(i, [])
    rows = complex_ranks(dict(sorted(groups.items())), truncated_differential)

    # certification through the first page of the sigma filtration
    e1: dict[int, dict[int, int]] = {}
    notes = []
    above_ok = True
    for s in range(smin, lo):
        layer = first_page_layer(c, j, s)
        if layer is None:
            above_ok = False
            notes.append(f"layer sigma={s} above the window is not saturated")
            break
        e1[s] = layer
    below: list[int] = []
    below_ok = True
    for s in range(hi + 1, hi + sw.guard + 1):
        layer = first_page_layer(c, j, s)
        if layer is None:
            below_ok = False
            notes.append(f"guard layer sigma={s} is not saturated")
            break
        e1[s] = layer
        below.append(s)
    for s in range(lo, hi + 1):
        e1[s] = first_page_layer(c, j, s)
    certified = {}
    for i in sorted(rows):
        ok = above_ok and below_ok
        ok = ok and all(not e1[s].get(i) and not e1[s].get(i + 1) for s in range(smin, lo))
        ok = ok and all(not e1[s].get(i - 1) and not e1[s].get(i) for s in below)
        certified[i] = ok
    if below_ok:
        notes.append(f"E_1 assumed to vanish beyond sigma={hi + sw.guard}")
    top = top_grading_value(c)
    eig = simplify(degree_eigenvalue(c.rs, c.eigen_side, c.module.lam) - j)
    return CohomologyReport(eig, sw, (simplify(top - hi), simplify(top - lo)), rows, certified,
                            dict(sorted(e1.items())), notes, "D" if c.eigen_side == "+" else "rho_check")


# --- Heisenberg branching ------------------------------------------------------------

def branching_space(c: BrstComplex, beta: Depth) -> list[dict]:
    """Joint kernel of hat-h_i(n), n > 0, on the weight space beta (as vectors over basis keys)."""
    beta = tuple(beta)
    if not c.saturated(beta):
        raise UnsaturatedWeight(f"weight {beta} is not saturated")
    keys = c.basis(beta)
    ops = [c.dressed_current(i, n) for n in range(1, beta[0] + 1) for i in range(c.rs.rank)]
    cols = []
    for k in keys:
        col = {}
        for idx, op in enumerate(ops):
            for t, v in op.fn(k).items():
                col[(idx, t)] = v
        cols.append(col)
    return [{keys[j]: v for j, v in vec.items()} for vec in kernel(cols)]


def branching_identity(c: BrstComplex, beta: Depth) -> tuple[int, int]:
    """(dim C^beta, sum_j dim B_{beta - j delta} * p_rank(j))."""
    beta = tuple(beta)
    parts = colored_partitions(c.rs.rank, beta[0])
    total = 0
    for jj in range(0, beta[0] + 1):
        top = (beta[0] - jj,) + beta[1:]
        if not in_positive_cone(c.rs, top):
            continue
        total += len(branching_space(c, top)) * parts[jj]
    return len(c.basis(beta)), total


# --- window sizing ------------------------------------------------------------------

def window_bound(rs, lam, side: str, i: int) -> Scalar:
    """Largest eigenvalue H^i can have for modules in the block of lam: degree_eigenvalue(lam) - |i|."""
    from .affine import condition_minus, condition_plus
    ok = condition_plus(rs, lam) if side == "+" else condition_minus(rs, lam)
    if not ok:
        raise ConditionViolated(f"weight fails the side-{side} condition")
    return simplify(degree_eigenvalue(rs, side, lam) - abs(i))


def widest_window(c: BrstComplex, j: int, s_min: int | None = None, s_max: int | None = None,
                  guard: int = 1, limit: int = 64) -> LayerWindow | None:
    """Largest sigma window for offset j whose layers and guard band are all saturated."""
    lo = layer_floor(c, j) if s_min is None else max(s_min, layer_floor(c, j))
    hi = lo - 1
    cap = lo + limit if s_max is None else s_max
    # past the module window every layer is either unsaturated or empty; stop there
    cap = min(cap, max((layer_of(c, b) for b in c.module.window.depths(c.rs) if _offset(c, b) == j),
                       default=lo - 1))
    while hi + 1 <= cap:
        if not all(_layer_saturated(c, j, s) for s in range(hi + 1, hi + guard + 2)):
            break
        hi += 1
    if hi < lo:
        return None
    return LayerWindow(j, lo, hi, guard)


def _offset(c: BrstComplex, beta: Depth) -> int:
    return beta[0] + sum(beta[1:]) if c.eigen_side == "+" else beta[0]


def _layer_saturated(c: BrstComplex, j: int, s: int) -> bool:
    return all(c.saturated(b) for b in slice_weights(c, j, s))


def eigenvalue_scan(c: BrstComplex, offsets, s_min: int | None = None, s_max: int | None = None,
                    guard: int = 1) -> list[CohomologyReport]:
    """Windowed cohomology for each eigen offset j; offsets with no saturated window are skipped."""
    out = []
    for j in offsets:
        sw = widest_window(c, j, s_min, s_max, guard)
        if sw is not None:
            out.append(windowed_cohomology(c, sw))
    return out


# --- predicted characters -------------------------------------------------------------

def predicted_h0(c: BrstComplex, j_max: int) -> dict[int, int] | None:
    """dim H^0 at eigen offsets 0..j_max predicted from the Verma multiplicities of the module.

    Each M(mu) in the module contributes q^{h(mu)} / prod (1 - q^n)^rank. Returns
    None when the top weight fails the side's condition, where no prediction applies.
    Only multiplicities inside the module window are seen.
    """
    from .affine import condition_minus, condition_plus
    from .qseries import Character, verma_multiplicities
    rs, mod = c.rs, c.module
    ok = condition_plus(rs, mod.lam) if c.eigen_side == "+" else condition_minus(rs, mod.lam)
    if not ok:
        return None
    ch = Character(mod.lam, mod.window, {b: d for b, d in mod.character_dims().items() if d})
    # every window depth is a candidate: quotients need negative multiplicities
    mults = verma_multiplicities(rs, ch, mod.window.depths(rs))
    parts = colored_partitions(rs.rank, j_max)
    out = {j: 0 for j in range(j_max + 1)}
    for mu, m in mults.items():
        if not m:
            continue
        jm = eigen_offset(c, mu)
        for j in range(jm, j_max + 1):
            out[j] += m * parts[j - jm]
    return out
