"""The reduction complex C(n, V) = V (x) F(n) and its operators.

A basis vector of the complex is a triple (beta, v, s): total depth beta
(weight lam - beta), module basis key v living at depth beta - depth(s), and
a canonical Fock state s. Operators are linear maps on such keys; they are
evaluated lazily, and any output landing on a weight that is not saturated
raises ``NotSaturated`` so identities are only asserted where the truncation
is invisible.

side '+' reduces the loop algebra of the upper nilpotent part, side '-' the
lower one. The transposed complex used for the duality check runs the
differential of the opposite side with the transposed character.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .affine import Depth, below, depth_sub, degree_eigenvalue
from .fock import FockSpace, SideConfig
from .linalg import axpy
from .modules import WeightModule, WindowOverflow
from .scalars import Scalar, simplify

Key = tuple  # (beta, v, s)


class NotSaturated(WindowOverflow):
    pass


class Op:
    """Linear operator on the complex given on basis keys. parity 1 = odd."""

    def __init__(self, fn: Callable[[Key], dict], parity: int, name: str = ""):
        self.fn = fn
        self.parity = parity
        self.name = name

    def __call__(self, vec: dict) -> dict:
        out: dict = {}
        for k, c in vec.items():
            axpy(out, c, self.fn(k))
        return out

    def __add__(self, other: "Op") -> "Op":
        def fn(k):
            out = dict(self.fn(k))
            axpy(out, 1, other.fn(k))
            return out
        return Op(fn, self.parity, f"({self.name}+{other.name})")

    def __sub__(self, other: "Op") -> "Op":
        return self + other.scale(-1)

    def scale(self, c) -> "Op":
        return Op(lambda k: {x: c * v for x, v in self.fn(k).items()} if c else {}, self.parity,
                  f"{c}*{self.name}")

    def __matmul__(self, other: "Op") -> "Op":
        """Composition self o other."""
        return Op(lambda k: self(other.fn(k)), (self.parity + other.parity) % 2, f"{self.name}{other.name}")


def supercommutator(a: Op, b: Op) -> Op:
    sign = -1 if (a.parity and b.parity) else 1
    return Op(lambda k: _sc(a, b, sign, k), (a.parity + b.parity) % 2, f"[{a.name},{b.name}]")


def _sc(a: Op, b: Op, sign: int, k: Key) -> dict:
    out = a(b.fn(k))
    axpy(out, -sign, b(a.fn(k)))
    return out


def zero_op(parity: int = 0) -> Op:
    return Op(lambda k: {}, parity, "0")


def character_fermions(cb, side: SideConfig, transposed: bool = False) -> list[tuple[int, int]]:
    """Fermions summed in the character term.

    side '+': psi_{-alpha_i}(1); side '-': psi_{alpha_i}(0); the transposes are
    psi_{alpha_i}(-1) and psi_{-alpha_i}(0).
    """
    out = []
    for i in range(cb.rank):
        pos = cb.simple_index(i)
        negi = cb.opposite[pos]
        if side.side == "+":
            out.append((pos, -1) if transposed else (negi, 1))
        else:
            out.append((negi, 0) if transposed else (pos, 0))
    return out


def character_value(cb, side: SideConfig, a: int, n: int) -> int:
    """The character itself: chi(J_a(n)) = 1 on the generators dual to the chi fermions."""
    for f in character_fermions(cb, side):
        # psi_{-alpha}(m) in chi pairs with J_alpha(-m)
        if (cb.opposite[f[0]], -f[1]) == (a, n):
            return 1
    return 0


@dataclass
class BrstComplex:
    module: WeightModule
    side: SideConfig  # side whose d^st and charge grading are used
    character_modes: list[tuple[int, int]]  # fermions of the character term
    eigen_side: str  # which degree-operator formula labels eigenvalues
    fock: FockSpace = field(init=False)
    _sat: dict = field(init=False, default_factory=dict)
    _basis: dict = field(init=False, default_factory=dict)

    def __post_init__(self):
        self.fock = FockSpace(self.module.cb)
        self.cb = self.module.cb
        self.rs = self.module.rs
        self.alg = self.module.alg
        self.kappa = self.alg.kappa

    # --- weights and bases ------------------------------------------------
    def saturated(self, beta: Depth) -> bool:
        beta = tuple(beta)
        hit = self._sat.get(beta)
        if hit is None:
            hit = True
            for d, _ in self.fock.states_below(beta):
                vb = depth_sub(beta, d)
                if self.module.in_support(vb) and not self.module.in_window(vb):
                    hit = False
                    break
            self._sat[beta] = hit
        return hit

    def weights(self) -> list[Depth]:
        """Saturated depths of the complex (subset of the module window)."""
        return [b for b in self.module.window.depths(self.rs) if self.saturated(b)]

    def basis(self, beta: Depth) -> list[Key]:
        beta = tuple(beta)
        if beta not in self._basis:
            if not self.saturated(beta):
                raise NotSaturated(f"weight {beta} is not saturated")
            out = []
            for d, s in self.fock.states_below(beta):
                vb = depth_sub(beta, d)
                if not self.module.in_support(vb):
                    continue
                for v in self.module.basis(vb):
                    out.append((beta, v, s))
            self._basis[beta] = out
        return self._basis[beta]

    def ghost(self, key: Key) -> int:
        return self.fock.charge(key[2], self.side)

    def basis_by_ghost(self, beta: Depth) -> dict[int, list[Key]]:
        out: dict[int, list[Key]] = {}
        for k in self.basis(beta):
            out.setdefault(self.ghost(k), []).append(k)
        return dict(sorted(out.items()))

    def weight(self, beta: Depth):
        return below(self.rs, self.module.lam, beta)

    def eigenvalue(self, beta: Depth) -> Scalar:
        return degree_eigenvalue(self.rs, self.eigen_side, self.weight(beta))

    def _check(self, beta: Depth):
        if not self.saturated(beta):
            raise NotSaturated(f"weight {beta} is not saturated")

    # --- elementary operators -----------------------------------------------
    def psi(self, a: int, n: int) -> Op:
        fs = self.fock
        shift = fs.shift((a, n))

        def fn(key):
            beta, v, s = key
            r = fs.apply((a, n), s)
            if r is None:
                return {}
            tgt = depth_sub(beta, shift)
            self._check(tgt)
            return {(tgt, v, r[1]): r[0]}
        return Op(fn, 1, f"ψ({a},{n})")

    def current(self, a: int, n: int) -> Op:
        """J_a(n) (x) 1: the module action alone."""
        mod, fs = self.module, self.fock
        shift = self.alg.shift((a, n))

        def fn(key):
            beta, v, s = key
            tgt = depth_sub(beta, shift)
            if not mod.in_support(depth_sub(tgt, fs.state_depth(s))):
                return {}
            self._check(tgt)
            vb = depth_sub(beta, fs.state_depth(s))
            return {(tgt, v2, s): c for v2, c in mod.act((a, n), v, vb).items()}
        return Op(fn, 0, f"J({a},{n})")

    def scalar(self, c) -> Op:
        return Op(lambda k: {k: c} if c else {}, 0, str(c))

    # --- the differential -------------------------------------------------
    def standard_differential(self) -> Op:
        cb, fs, mod = self.cb, self.fock, self.module
        nil = list(self.side.nilpotent_roots(cb))
        cubic = []
        for a in nil:
            for b in nil:
                for g, c in cb.bracket(a, b):
                    cubic.append((a, b, g, Fraction(-1, 2) * c))

        def fn(key):
            beta, v, s = key
            out: dict = {}
            ds = fs.state_depth(s)
            vb = depth_sub(beta, ds)
            kv = vb[0]
            # sum_n J_a(-n) psi_{-a}(n)
            for a in nil:
                ma = cb.opposite[a]
                modes = set(range(-kv, 1)) | {-m for (b, m) in s if b == a}
                for n in sorted(modes):
                    r = fs.apply((ma, n), s)
                    if r is None:
                        continue
                    sign, s2 = r
                    vb2 = depth_sub(beta, fs.state_depth(s2))
                    if not mod.in_support(vb2):
                        continue
                    for v2, c in mod.act((a, -n), v, vb).items():
                        axpy(out, sign * c, {(beta, v2, s2): 1})
            # -1/2 sum c_{a,b}^g psi_{-a}(k) psi_{-b}(l) psi_g(m), k + l + m = 0
            if cubic:
                bound = ds[0]
                for a, b, g, coef in cubic:
                    ma, mb = cb.opposite[a], cb.opposite[b]
                    for k in range(-bound, bound + 1):
                        for l in range(-bound, bound + 1):
                            m = -k - l
                            r = fs.apply_word([(ma, k), (mb, l), (g, m)], s)
                            if r is not None:
                                axpy(out, coef * r[0], {(beta, v, r[1]): 1})
            return out
        return Op(fn, 1, "standard")

    def character_term(self) -> Op:
        ops = [self.psi(a, n) for a, n in self.character_modes]
        if not ops:
            return zero_op(1)
        total = ops[0]
        for o in ops[1:]:
            total = total + o
        total.name = "character"
        return total

    def differential(self) -> Op:
        out = self.standard_differential() + self.character_term()
        out.name = "d"
        return out

    # --- dressed currents ----------------------------------------------------
    def dressed_current(self, a: int, n: int, side: SideConfig | None = None) -> Op:
        """J_a(n) + sum_{b,g in nil(side)} c_{a,b}^g sum_k :psi_g(n-k) psi_{-b}(k):.

        ``side`` defaults to the complex's side; the opposite side gives the
        transposed representation on the same canonical state space.
        """
        side = side or self.side
        cb, fs = self.cb, self.fock
        nil = set(side.nilpotent_roots(cb))
        pairs = [(b, g, c) for b in sorted(nil) for g, c in cb.bracket(a, b) if g in nil]
        base = self.current(a, n)
        shift = self.alg.shift((a, n))

        def fn(key):
            out = base.fn(key)
            if not pairs:
                return out
            beta, v, s = key
            tgt = depth_sub(beta, shift)
            bound = fs.state_depth(s)[0] + abs(n) + 1
            for b, g, c in pairs:
                mb = cb.opposite[b]
                for k in range(-bound, bound + 1):
                    res = fs.normal_ordered_pair((g, n - k), (mb, k), s)
                    if not res:
                        continue
                    self._check(tgt)
                    for s2, sg in res.items():
                        axpy(out, c * sg, {(tgt, v, s2): 1})
            return out
        return Op(fn, 0, f"Ĵ({a},{n})")

    def mode_count_operator(self) -> Op:
        """D + sum_{a in nil, n} n :psi_a(n) psi_{-a}(-n): evaluated state by state."""
        cb, fs = self.cb, self.fock
        nil = list(self.side.nilpotent_roots(cb))
        lam_d = self.module.lam.d

        def fn(key):
            beta, v, s = key
            vb = depth_sub(beta, fs.state_depth(s))
            d0 = simplify(lam_d - vb[0])
            out = {key: d0} if d0 else {}
            bound = fs.state_depth(s)[0] + 1
            for a in nil:
                ma = cb.opposite[a]
                for n in range(-bound, bound + 1):
                    if n == 0:
                        continue
                    for s2, sg in fs.normal_ordered_pair((a, n), (ma, -n), s).items():
                        axpy(out, n * sg, {(beta, v, s2): 1})
            return out
        return Op(fn, 0, "D̂")

    def degree_operator(self) -> Op:
        """D^W: D̂ + pi(rho^vee) on side '+', D̂ + kappa |rho^vee|^2/2 - <rho, rho^vee> on side '-'."""
        from .affine import coweight_norm2
        rs = self.rs
        dh = self.mode_count_operator()
        if self.side.side == "+":
            total = dh
            for i, c in enumerate(rs.rho_check):
                if c:
                    total = total + self.dressed_current(i, 0).scale(c)
            return total
        const = simplify(self.kappa * coweight_norm2(rs, rs.rho_check) / 2 - sum(rs.rho_check))
        return dh + self.scalar(const)

    # --- blocks ------------------------------------------------------------
    def block(self, op: Op, beta: Depth, ghost: int | None = None) -> list[dict]:
        """Columns of op on the basis of weight beta (optionally one ghost degree)."""
        keys = self.basis(beta) if ghost is None else self.basis_by_ghost(beta).get(ghost, [])
        return [op.fn(k) for k in keys]


def build_complex(module: WeightModule, side: str) -> BrstComplex:
    sc = SideConfig(side)
    return BrstComplex(module, sc, character_fermions(module.cb, sc), side)


def build_transposed_complex(module: WeightModule, side: str) -> BrstComplex:
    """C(n^t, V) with d^t = d^st of the opposite side plus the transposed character of ``side``."""
    sc = SideConfig(side)
    return BrstComplex(module, sc.flipped(), character_fermions(module.cb, sc, transposed=True), side)


# --- identity checking -------------------------------------------------------

@dataclass
class IdentityResult:
    name: str
    checked: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and self.checked > 0

    def to_json(self) -> dict:
        return {"name": self.name, "checked": self.checked, "skipped": self.skipped,
                "violations": len(self.violations), "ok": self.ok}


def check_identity(c: BrstComplex, name: str, lhs: Op, rhs: Op, weights: Iterable[Depth]) -> IdentityResult:
    """Compare lhs and rhs on every basis vector of the given saturated weights."""
    res = IdentityResult(name)
    for beta in weights:
        for key in c.basis(beta):
            try:
                diff = lhs.fn(key)
                axpy(diff, -1, rhs.fn(key))
            except WindowOverflow:
                res.skipped += 1
                continue
            res.checked += 1
            if diff:
                if len(res.violations) < 5:
                    res.violations.append((key, diff))
                else:
                    res.violations.append(None)
    return res


def dump_triplets(c: BrstComplex, op: Op, beta_src: Depth, beta_tgt: Depth) -> str:
    """Sparse triplet text (row col value) of the block beta_src -> beta_tgt."""
    from .scalars import format_scalar
    src = c.basis(beta_src)
    tgt = {k: i for i, k in enumerate(c.basis(beta_tgt))}
    lines = [f"% block {list(beta_src)} -> {list(beta_tgt)} ({len(tgt)} x {len(src)})"]
    for j, k in enumerate(src):
        col = op.fn(k)
        for t, v in sorted(((tgt[t], v) for t, v in col.items() if t in tgt), key=lambda x: x[0]):
            lines.append(f"{t} {j} {format_scalar(v)}")
    return "\n".join(lines) + "\n"


@dataclass
class PairingReport:
    checked: int = 0
    skipped: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.mismatches

    def to_json(self) -> dict:
        return {"checked": self.checked, "skipped": self.skipped, "mismatches": len(self.mismatches),
                "ok": self.ok}


def dual_pairing_check(c_dual: BrstComplex, c_t: BrstComplex, weights: Iterable[Depth] | None = None) -> PairingReport:
    """Check <d x, y> = <x, d^t y> for x in C(n, V*) and y in C(n^t, V).

    Both complexes share the canonical key set (dual module basis = module
    basis, Fock pairing = identity), so this is a transpose test per block.
    """
    rep = PairingReport()
    d, dt = c_dual.differential(), c_t.differential()
    shifts = [(0,) * (c_dual.rs.rank + 1)] + [c_dual.fock.shift(f) for f in c_dual.character_modes]
    for beta in (weights if weights is not None else c_dual.weights()):
        for x in c_dual.basis(beta):
            try:
                dx = d.fn(x)
            except WindowOverflow:
                rep.skipped += 1
                continue
            for sh in shifts:
                tgt = depth_sub(beta, sh)
                if not (c_dual.module.in_support(tgt) or tgt == beta):
                    continue
                if not (c_t.saturated(tgt) and c_dual.saturated(tgt)):
                    rep.skipped += 1
                    continue
                for y in c_t.basis(tgt):
                    try:
                        lhs = dx.get(y, 0)
                        rhs = dt.fn(y).get(x, 0)
                    except WindowOverflow:
                        rep.skipped += 1
                        continue
                    rep.checked += 1
                    if lhs != rhs:
                        rep.mismatches.append((x, y, lhs, rhs))
    return rep
