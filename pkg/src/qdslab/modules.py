"""Weight modules over the affine algebra: Verma modules, their restricted
duals, simple quotients and sub/quotient pairs.

Generators are pairs (a, n) standing for J_a(n) = J_a (x) t^n, with a an index
of the Chevalley basis. The centre K acts by the level kappa - h^vee and D by
the d-coefficient of the weight.

Every module has a reference weight lam and a ``Window``; weight spaces are
addressed by depth vectors beta (the weight lam - beta). A module supplies
``basis(beta)`` and ``act(gen, key, beta)``; vectors are dicts key -> scalar.
"""
from __future__ import annotations

from typing import Callable, Hashable

from .affine import (AffineWeight, Depth, Window, depth_add, depth_sub, in_positive_cone)
from .liealg import ChevalleyBasis, RootSystemFin
from .linalg import Echelon, axpy, kernel
from .scalars import Scalar, simplify

Gen = tuple[int, int]  # (basis index a, mode n)
Mono = tuple[Gen, ...]


class WindowOverflow(LookupError):
    pass


class AffineAlgebra:
    """Loop algebra bookkeeping for a Chevalley basis at shifted level kappa."""

    def __init__(self, cb: ChevalleyBasis, kappa: Scalar):
        self.cb = cb
        self.rs: RootSystemFin = cb.rs
        self.kappa = kappa
        self.level = simplify(kappa - self.rs.dual_coxeter_number)

    def shift(self, gen: Gen) -> Depth:
        """Depth change of J_a(n): beta -> beta - shift."""
        a, n = gen
        return (n,) + self.cb.root_of[a]

    def is_negative(self, gen: Gen) -> bool:
        a, n = gen
        return n < 0 or (n == 0 and self.cb.is_negative(a))

    def is_positive(self, gen: Gen) -> bool:
        a, n = gen
        return n > 0 or (n == 0 and self.cb.is_positive(a))

    def transpose(self, gen: Gen) -> Gen:
        a, n = gen
        return (self.cb.transpose(a), -n)

    def bracket(self, x: Gen, y: Gen) -> tuple[list[tuple[Gen, Scalar]], Scalar]:
        """[J_a(m), J_b(n)] = sum c J_c(m+n) + m delta_{m+n,0} (J_a, J_b) K; returns (terms, central)."""
        (a, m), (b, n) = x, y
        terms = [((c, m + n), v) for c, v in self.cb.bracket(a, b)]
        central = 0
        if m + n == 0 and m != 0:
            f = self.cb.form(a, b)
            if f:
                central = m * f
        return terms, central

    def negative_generators(self, beta: Depth) -> list[Gen]:
        """Negative generators that can occur in a PBW monomial of depth beta."""
        k = beta[0]
        out = []
        for n in range(-k, 1):
            for a in range(self.cb.dim):
                if self.is_negative((a, n)):
                    out.append((a, n))
        return out


def pbw_key(gen: Gen) -> tuple[int, int]:
    """PBW order: mode descending (0, -1, -2, ...), then basis index."""
    return (-gen[1], gen[0])


class WeightModule:
    """Common interface; subclasses implement ``basis`` and ``_act``."""

    flavor = "generic"

    def __init__(self, alg: AffineAlgebra, lam: AffineWeight, window: Window):
        self.alg = alg
        self.rs = alg.rs
        self.cb = alg.cb
        self.lam = lam
        self.window = window

    def in_support(self, beta: Depth) -> bool:
        """Depths where the module may be nonzero (Q_+ relative to lam)."""
        return in_positive_cone(self.rs, beta)

    def in_window(self, beta: Depth) -> bool:
        return self.window.contains(self.rs, beta)

    def basis(self, beta: Depth) -> list[Hashable]:
        raise NotImplementedError

    def dim(self, beta: Depth) -> int:
        if not self.in_support(beta):
            return 0
        return len(self.basis(beta))

    def target(self, gen: Gen, beta: Depth) -> Depth:
        return depth_sub(beta, self.alg.shift(gen))

    def act(self, gen: Gen, key, beta: Depth) -> dict:
        """J_a(n) applied to a basis vector at depth beta; the result lives at ``target(gen, beta)``."""
        tgt = self.target(gen, beta)
        if not self.in_support(tgt):
            return {}
        if not self.in_window(tgt):
            raise WindowOverflow(f"depth {tgt} is outside the window {self.window}")
        return self._act(gen, key, beta)

    def _act(self, gen: Gen, key, beta: Depth) -> dict:
        raise NotImplementedError

    def act_vec(self, gen: Gen, vec: dict, beta: Depth) -> dict:
        out: dict = {}
        for key, c in vec.items():
            axpy(out, c, self.act(gen, key, beta))
        return out

    def central(self) -> Scalar:
        return self.alg.level

    def character_dims(self) -> dict[Depth, int]:
        return {b: self.dim(b) for b in self.window.depths(self.rs)}


# --- Verma modules -------------------------------------------------------------

class Verma(WeightModule):
    """M(lam) with PBW basis of ordered monomials in negative generators."""

    flavor = "verma"

    def __init__(self, alg: AffineAlgebra, lam: AffineWeight, window: Window):
        super().__init__(alg, lam, window)
        self._hw = tuple(lam.finite)  # eigenvalues of J_i(0) = alpha_i^vee on v_lam
        self._basis_cache: dict[Depth, list[Mono]] = {}
        self._act_cache: dict[tuple[Gen, Mono], dict] = {}

    def basis(self, beta: Depth) -> list[Mono]:
        beta = tuple(beta)
        if beta not in self._basis_cache:
            self._basis_cache[beta] = enumerate_pbw(self.alg, beta) if self.in_support(beta) else []
        return self._basis_cache[beta]

    def mono_depth(self, mono: Mono) -> Depth:
        d = (0,) * (self.rs.rank + 1)
        for g in mono:
            d = depth_sub(d, self.alg.shift(g))
        return d

    def _act(self, gen: Gen, key: Mono, beta: Depth) -> dict:
        return self.act_mono(gen, key)

    def cartan_eigen(self, i: int, mono: Mono) -> Scalar:
        """Eigenvalue of J_i(0) on a monomial vector: <lam - beta, alpha_i^vee>."""
        c = self.rs.cartan
        val = self._hw[i]
        for a, _ in mono:
            r = self.cb.root_of[a]
            val = val + sum(r[j] * c[i][j] for j in range(self.rs.rank))
        return val

    def act_mono(self, gen: Gen, mono: Mono) -> dict:
        ck = (gen, mono)
        hit = self._act_cache.get(ck)
        if hit is not None:
            return hit
        res = self._compute(gen, mono)
        self._act_cache[ck] = res
        return res

    def _compute(self, gen: Gen, mono: Mono) -> dict:
        alg = self.alg
        a, n = gen
        if n == 0 and self.cb.is_cartan(a):
            v = self.cartan_eigen(a, mono)
            return {mono: v} if v else {}
        if not mono:
            if alg.is_negative(gen):
                return {(gen,): 1}
            return {}
        y1, rest = mono[0], mono[1:]
        if alg.is_negative(gen) and pbw_key(gen) <= pbw_key(y1):
            return {(gen,) + mono: 1}
        out: dict = {}
        # X y1 R = y1 (X R) + [X, y1] R
        for m2, c in self.act_mono(gen, rest).items():
            axpy(out, c, self.act_mono(y1, m2))
        terms, central = alg.bracket(gen, y1)
        for g2, c in terms:
            axpy(out, c, self.act_mono(g2, rest))
        if central:
            axpy(out, central * self.alg.level, {rest: 1})
        return out

    def apply_word(self, mono: Mono, vec: dict) -> dict:
        """Apply y_1 ... y_k (rightmost first) to a vector."""
        for g in reversed(mono):
            out: dict = {}
            for key, c in vec.items():
                axpy(out, c, self.act_mono(g, key))
            vec = out
        return vec

    def shapovalov(self, u: Mono, vec: dict) -> Scalar:
        """Contravariant form <u v_lam, vec> = coefficient of v_lam in u^t vec."""
        for g in u:  # u^t = y_k^t ... y_1^t, so y_1^t acts first
            out: dict = {}
            gt = self.alg.transpose(g)
            for key, c in vec.items():
                axpy(out, c, self.act_mono(gt, key))
            vec = out
            if not vec:
                return 0
        return vec.get((), 0)

    def gram(self, beta: Depth) -> list[list[Scalar]]:
        b = self.basis(beta)
        return [[self.shapovalov(u, {v: 1}) for v in b] for u in b]


def enumerate_pbw(alg: AffineAlgebra, beta: Depth) -> list[Mono]:
    """Ordered monomials of negative generators with total depth beta."""
    rs = alg.rs
    gens = sorted(alg.negative_generators(beta), key=pbw_key, reverse=True)
    out: list[Mono] = []

    def rec(i: int, rem: Depth, acc: list[Gen]):
        if not any(rem):
            out.append(tuple(sorted(acc, key=pbw_key)))
            return
        if i == len(gens) or not in_positive_cone(rs, rem):
            return
        g = gens[i]
        sh = alg.shift(g)  # depth of one factor is -shift
        # take g zero or more times
        rec(i + 1, rem, acc)
        cur = rem
        count = 0
        while True:
            cur = depth_add(cur, sh)
            count += 1
            if not in_positive_cone(rs, cur):
                break
            rec(i + 1, cur, acc + [g] * count)

    rec(0, tuple(beta), [])
    return sorted(out, key=lambda m: [pbw_key(g) for g in m])


# --- restricted dual ---------------------------------------------------------

class DualVerma(WeightModule):
    """M(lam)^*: graded dual of M(lam) with X acting as the transpose of X^t."""

    flavor = "dual"

    def __init__(self, alg: AffineAlgebra, lam: AffineWeight, window: Window):
        super().__init__(alg, lam, window)
        self.verma = Verma(alg, lam, window)
        self._cols: dict[tuple[Gen, Depth], dict] = {}

    def basis(self, beta: Depth) -> list[Mono]:
        return self.verma.basis(beta)

    def _act(self, gen: Gen, key: Mono, beta: Depth) -> dict:
        tgt = self.target(gen, beta)
        ck = (gen, tgt)
        table = self._cols.get(ck)
        if table is None:
            # (X f)(v) = f(X^t v): row of X^t restricted to depth beta
            gt = self.alg.transpose(gen)
            table = {}
            for v in self.verma.basis(tgt):
                for m, c in self.verma.act_mono(gt, v).items():
                    table.setdefault(m, {})[v] = c
            self._cols[ck] = table
        return dict(table.get(key, {}))


# --- quotients and submodules ------------------------------------------------

class QuotientModule(WeightModule):
    """parent / S where S is given per depth by spanning vectors in the parent basis."""

    flavor = "quotient"

    def __init__(self, parent: WeightModule, sub: Callable[[Depth], list[dict]]):
        super().__init__(parent.alg, parent.lam, parent.window)
        self.parent = parent
        self._sub = sub
        self._ech: dict[Depth, Echelon] = {}
        self._basis: dict[Depth, list] = {}

    def in_support(self, beta: Depth) -> bool:
        return self.parent.in_support(beta)

    def echelon(self, beta: Depth) -> Echelon:
        beta = tuple(beta)
        e = self._ech.get(beta)
        if e is None:
            e = Echelon()
            for v in self._sub(beta):
                e.insert(v)
            self._ech[beta] = e
        return e

    def sub_dim(self, beta: Depth) -> int:
        return len(self.echelon(beta)) if self.parent.in_support(beta) else 0

    def basis(self, beta: Depth) -> list:
        beta = tuple(beta)
        if beta not in self._basis:
            piv = self.echelon(beta).rows
            self._basis[beta] = [k for k in self.parent.basis(beta) if k not in piv]
        return self._basis[beta]

    def project(self, vec: dict, beta: Depth) -> dict:
        return self.echelon(beta).reduce(vec)

    def _act(self, gen: Gen, key, beta: Depth) -> dict:
        tgt = self.target(gen, beta)
        return self.project(self.parent.act(gen, key, beta), tgt)


def radical_vectors(verma: Verma, beta: Depth) -> list[dict]:
    """Kernel of the contravariant form on M(lam)^beta, as parent vectors."""
    b = verma.basis(beta)
    if not b:
        return []
    g = verma.gram(beta)
    cols = [{i: g[i][j] for i in range(len(b)) if g[i][j]} for j in range(len(b))]
    return [{b[j]: c for j, c in v.items()} for v in kernel(cols)]


def simple_quotient(verma: Verma) -> QuotientModule:
    """L(lam) = M(lam) / radical of the contravariant form, weight by weight."""
    q = QuotientModule(verma, lambda beta: radical_vectors(verma, beta))
    q.flavor = "simple"
    return q


def radical_dims(verma: Verma) -> dict[Depth, int]:
    return {b: len(radical_vectors(verma, b)) for b in verma.window.depths(verma.rs)}


class SubModule(WeightModule):
    """Submodule of a Verma module generated by one vector w of depth beta_w.

    Basis at depth beta: PBW monomials b of depth beta - beta_w, realized as b.w
    (U of the negative part acts freely, so these are independent; checked).
    """

    flavor = "sub"

    def __init__(self, parent: Verma, w: dict, beta_w: Depth):
        super().__init__(parent.alg, parent.lam, parent.window)
        self.parent = parent
        self.w = w
        self.beta_w = tuple(beta_w)
        self._vecs: dict[Depth, list[dict]] = {}
        self._ech: dict[Depth, Echelon] = {}

    def in_support(self, beta: Depth) -> bool:
        return in_positive_cone(self.rs, depth_sub(beta, self.beta_w))

    def basis(self, beta: Depth) -> list[Mono]:
        if not self.in_support(beta):
            return []
        return enumerate_pbw(self.alg, depth_sub(beta, self.beta_w))

    def vectors(self, beta: Depth) -> list[dict]:
        beta = tuple(beta)
        if beta not in self._vecs:
            self._vecs[beta] = [self.parent.apply_word(b, dict(self.w)) for b in self.basis(beta)]
        return self._vecs[beta]

    def echelon(self, beta: Depth) -> Echelon:
        beta = tuple(beta)
        e = self._ech.get(beta)
        if e is None:
            e = Echelon(track=True)
            for v in self.vectors(beta):
                if e.insert(v) is not None:
                    raise ArithmeticError(f"generated vectors are dependent at {beta}")
            self._ech[beta] = e
        return e

    def _act(self, gen: Gen, key: Mono, beta: Depth) -> dict:
        tgt = self.target(gen, beta)
        b = self.basis(beta)
        vec = self.vectors(beta)[b.index(key)]
        image = self.parent.act_vec(gen, vec, beta)
        if not image:
            return {}
        if not self.in_support(tgt):
            raise ArithmeticError("image left the submodule support")
        coords = self.echelon(tgt).coordinates(image)
        if coords is None:
            raise ArithmeticError(f"not a submodule: J{gen} leaves the span at {tgt}")
        tb = self.basis(tgt)
        return {tb[j]: c for j, c in coords.items()}


def affine_raising(alg: AffineAlgebra) -> list[Gen]:
    """Chevalley raising generators of the affine algebra: e_i(0) and J_{-theta}(1)."""
    cb = alg.cb
    gens = [(cb.simple_index(i), 0) for i in range(alg.rs.rank)]
    gens.append((cb.index_of_root[tuple(-x for x in alg.rs.theta)], 1))
    return gens


def singular_vectors(verma: Verma, beta: Depth) -> list[dict]:
    """Vectors of M(lam)^beta killed by every affine raising generator."""
    b = verma.basis(beta)
    raising = affine_raising(verma.alg)
    cols = []
    for mono in b:
        col = {}
        for g in raising:
            for m, c in verma.act_mono(g, mono).items():
                col[(g, m)] = c
        cols.append(col)
    return [{b[j]: c for j, c in v.items()} for v in kernel(cols)]


def sub_quotient_pair(verma: Verma, w: dict, beta_w: Depth) -> tuple[SubModule, QuotientModule]:
    sub = SubModule(verma, w, beta_w)
    quo = QuotientModule(verma, lambda beta: sub.vectors(beta) if sub.in_support(beta) else [])
    return sub, quo


def build_verma(cb: ChevalleyBasis, lam: AffineWeight, window: Window) -> Verma:
    kappa = simplify(lam.level + cb.rs.dual_coxeter_number)
    return Verma(AffineAlgebra(cb, kappa), lam, window)


def representation_defect(mod: WeightModule, gens: list[Gen], depths: list[Depth]) -> int:
    """Count of violated relations X Y v - Y X v = [X, Y] v over basis vectors (0 = representation)."""
    alg = mod.alg
    bad = 0
    for beta in depths:
        for key in mod.basis(beta):
            for x in gens:
                for y in gens:
                    try:
                        lhs = _apply(mod, [y, x], {key: 1}, beta)
                        axpy(lhs, -1, _apply(mod, [x, y], {key: 1}, beta))
                        terms, central = alg.bracket(x, y)
                        rhs: dict = {}
                        for g, c in terms:
                            axpy(rhs, c, mod.act(g, key, beta))
                        if central:
                            axpy(rhs, central * mod.central(), {key: 1})
                    except WindowOverflow:
                        continue
                    axpy(lhs, -1, rhs)
                    if lhs:
                        bad += 1
    return bad


def _apply(mod: WeightModule, word: list[Gen], vec: dict, beta: Depth) -> dict:
    """Apply word[0] first, then word[1], ..."""
    for g in word:
        out: dict = {}
        for key, c in vec.items():
            axpy(out, c, mod.act(g, key, beta))
        beta = mod.target(g, beta)
        vec = out
    return vec
