"""Affine weights, real affine roots and the extended affine Weyl group.

A weight is stored as (finite part in fundamental-weight coordinates,
level = <lambda, K>, d = <lambda, D>). The level of a module is written
kappa - h^vee; kappa is either a rational number or the formal variable k
(``scalars.KAPPA``) for the generic case.

Weights of modules and complexes are handled relative to a reference weight
by integer depth vectors beta = (k, m_1, ..., m_r), meaning lambda - beta with
beta = k*delta + sum m_i alpha_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .liealg import RootSystemFin, neg, height
from .linalg import solve_square
from .scalars import Scalar, is_integer, simplify, format_scalar

Depth = tuple[int, ...]


def _q(x) -> Scalar:
    return simplify(x) if not isinstance(x, int) else x


@dataclass(frozen=True)
class AffineWeight:
    finite: tuple  # fundamental-weight coordinates
    level: Scalar
    d: Scalar

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(tuple(_q(a + b) for a, b in zip(self.finite, other.finite)),
                            _q(self.level + other.level), _q(self.d + other.d))

    def __neg__(self):
        return AffineWeight(tuple(_q(-a) for a in self.finite), _q(-self.level), _q(-self.d))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AffineWeight":
        return AffineWeight(tuple(_q(c * a) for a in self.finite), _q(c * self.level), _q(c * self.d))

    def to_json(self) -> dict:
        return {"finite": [format_scalar(x) for x in self.finite],
                "level": format_scalar(self.level), "d": format_scalar(self.d)}


@dataclass(frozen=True, order=True)
class AffineRoot:
    """Real affine root finite + n*delta (finite part in simple-root coordinates)."""

    finite: tuple[int, ...]
    n: int

    def is_positive(self) -> bool:
        return self.n > 0 or (self.n == 0 and all(x >= 0 for x in self.finite))

    def __neg__(self):
        return AffineRoot(neg(self.finite), -self.n)

    def __str__(self):
        from .liealg import root_name
        if self.n == 0:
            return root_name(self.finite)
        mult = "" if abs(self.n) == 1 else str(abs(self.n))
        return f"{root_name(self.finite)}{'+' if self.n > 0 else '-'}{mult}δ"


def zero_weight(rs: RootSystemFin) -> AffineWeight:
    return AffineWeight((0,) * rs.rank, 0, 0)


def delta(rs: RootSystemFin) -> AffineWeight:
    return AffineWeight((0,) * rs.rank, 0, 1)


def lambda0(rs: RootSystemFin) -> AffineWeight:
    return AffineWeight((0,) * rs.rank, 1, 0)


def affine_rho(rs: RootSystemFin) -> AffineWeight:
    return AffineWeight(rs.rho, rs.dual_coxeter_number, 0)


def make_weight(rs: RootSystemFin, finite, kappa, d=0) -> AffineWeight:
    """Weight with the given finite part at level kappa - h^vee."""
    return AffineWeight(tuple(_q(Fraction(x) if not isinstance(x, int) else x) for x in finite),
                        _q(kappa - rs.dual_coxeter_number), _q(d))


def root_weight(rs: RootSystemFin, finite, n=0) -> AffineWeight:
    """Level zero element finite + n*delta with finite part in root coordinates."""
    return AffineWeight(tuple(_q(x) for x in rs.root_to_fund(finite)), 0, _q(n))


def below(rs: RootSystemFin, lam: AffineWeight, beta: Depth) -> AffineWeight:
    """lam - beta for a depth vector beta = (k, m_1..m_r)."""
    return lam - root_weight(rs, beta[1:], beta[0])


def pairing_coroot(rs: RootSystemFin, lam: AffineWeight, alpha: AffineRoot) -> Scalar:
    """<lam, alpha^vee> for a real affine root; alpha^vee = abar^vee + (2n/|abar|^2) K."""
    abar = alpha.finite
    n2 = rs.norm2(abar)
    cor = rs.coroot_coords(abar)
    fin = sum((c * x for c, x in zip(cor, lam.finite) if c), Fraction(0))
    return _q(fin + Fraction(2 * alpha.n) / n2 * lam.level)


def finite_form(rs: RootSystemFin, a, b) -> Scalar:
    """(a, b) for finite parts in fundamental-weight coordinates."""
    ra, rb = rs.fund_to_root(a), rs.fund_to_root(b)
    return _q(sum((ra[i] * rs.gram[i][j] * rb[j] for i in range(rs.rank) for j in range(rs.rank)), Fraction(0)))


def weight_form(rs: RootSystemFin, a: AffineWeight, b: AffineWeight) -> Scalar:
    return _q(finite_form(rs, a.finite, b.finite) + a.level * b.d + a.d * b.level)


def pair_coweight(rs: RootSystemFin, lam: AffineWeight, mu) -> Scalar:
    """<lam, mu> for mu in h-bar given in simple-coroot coordinates."""
    return _q(sum((Fraction(m) * x for m, x in zip(mu, lam.finite) if m), Fraction(0)))


def coweight_norm2(rs: RootSystemFin, mu) -> Fraction:
    g = rs.coroot_gram
    return sum((Fraction(mu[i]) * g[i][j] * mu[j] for i in range(rs.rank) for j in range(rs.rank)), Fraction(0))


def translate(rs: RootSystemFin, mu, lam: AffineWeight) -> AffineWeight:
    """t_mu(lam) = lam + <lam,K> mu - (<lam,mu> + |mu|^2 <lam,K> / 2) delta."""
    nu = rs.root_to_fund(rs.coweight_to_weight(mu))
    lev = lam.level
    fin = tuple(_q(x + lev * y) for x, y in zip(lam.finite, nu))
    dd = _q(lam.d - (pair_coweight(rs, lam, mu) + coweight_norm2(rs, mu) * lev / 2))
    return AffineWeight(fin, lev, dd)


def reflection_word(rs: RootSystemFin, beta) -> tuple[int, ...]:
    """Reduced-enough word for the finite reflection s_beta."""
    beta = tuple(beta)
    if any(x < 0 for x in beta):
        beta = neg(beta)
    path = []
    while sum(beta) > 1:
        for j in range(rs.rank):
            if sum(beta[i] * rs.cartan[j][i] for i in range(rs.rank)) > 0:
                p = sum(beta[i] * rs.cartan[j][i] for i in range(rs.rank))
                b = list(beta)
                b[j] -= p
                beta = tuple(b)
                path.append(j)
                break
        else:
            raise ValueError("not a root")
    i = beta.index(1)
    return tuple(path) + (i,) + tuple(reversed(path))


@dataclass(frozen=True)
class ExtWeylElt:
    """Element t_mu w of the extended affine Weyl group (w applied first).

    mu is a coweight in simple-coroot coordinates; composition follows
    t_mu w t_nu w' = t_{mu + w(nu)} w w'.
    """

    finite_word: tuple[int, ...]
    translation: tuple

    def act(self, rs: RootSystemFin, lam: AffineWeight) -> AffineWeight:
        from .liealg import weyl_act
        fin = weyl_act(rs, self.finite_word, lam.finite, coords="fund")
        x = AffineWeight(tuple(_q(v) for v in fin), lam.level, lam.d)
        return translate(rs, self.translation, x)

    def compose(self, rs: RootSystemFin, other: "ExtWeylElt") -> "ExtWeylElt":
        moved = _weyl_on_coweight(rs, self.finite_word, other.translation)
        mu = tuple(_q(a + b) for a, b in zip(self.translation, moved))
        return ExtWeylElt(self.finite_word + other.finite_word, mu)


def _weyl_on_coweight(rs: RootSystemFin, word, mu) -> tuple:
    # finite reflections act on coroot coordinates like on roots of the dual system
    v = tuple(mu)
    for i in reversed(tuple(word)):
        p = sum(v[j] * rs.cartan[j][i] for j in range(rs.rank))  # <alpha_i, mu>
        out = list(v)
        out[i] = out[i] - p
        v = tuple(out)
    return v


def translation(rs: RootSystemFin, mu) -> ExtWeylElt:
    return ExtWeylElt((), tuple(mu))


def affine_reflection(rs: RootSystemFin, alpha: AffineRoot) -> ExtWeylElt:
    """s_{abar + n delta} = t_{-n abar^vee} s_abar."""
    cor = rs.coroot_coords(alpha.finite)
    return ExtWeylElt(reflection_word(rs, alpha.finite), tuple(_q(-alpha.n * c) for c in cor))


def reflect(rs: RootSystemFin, alpha: AffineRoot, lam: AffineWeight) -> AffineWeight:
    """s_alpha(lam) = lam - <lam, alpha^vee> alpha, straight from the definition."""
    c = pairing_coroot(rs, lam, alpha)
    return lam - root_weight(rs, alpha.finite, alpha.n).scale(c)


def dot_act(rs: RootSystemFin, w: ExtWeylElt, lam: AffineWeight) -> AffineWeight:
    rho = affine_rho(rs)
    return w.act(rs, lam + rho) - rho


def root_reflect(rs: RootSystemFin, beta: AffineRoot, gamma: AffineRoot) -> AffineRoot:
    """s_beta(gamma) on level-zero real roots."""
    c = rs.pair_coroot(gamma.finite, beta.finite)
    c = int(c) if Fraction(c).denominator == 1 else c
    fin = tuple(g - c * b for g, b in zip(gamma.finite, beta.finite))
    return AffineRoot(fin, gamma.n - c * beta.n)


def positive_real_roots(rs: RootSystemFin, max_n: int) -> list[AffineRoot]:
    """Positive real roots with delta-coefficient at most max_n, ordered by (n, height, lex)."""
    out = [AffineRoot(r, 0) for r in rs.positive_roots]
    for n in range(1, max_n + 1):
        for r in sorted(rs.roots, key=lambda r: (height(r), r)):
            out.append(AffineRoot(r, n))
    return out


# --- the two conditions on weights -------------------------------------------

def plus_condition_set(rs: RootSystemFin) -> list[AffineRoot]:
    """Positive real roots sent to negative roots by t_{-rho^vee}: {-abar + n delta : 1 <= n <= ht(abar)}."""
    return [AffineRoot(neg(a), n) for a in rs.positive_roots for n in range(1, height(a) + 1)]


def plus_condition_set_bruteforce(rs: RootSystemFin) -> list[AffineRoot]:
    """Delta_+ intersected with t_{rho^vee}(Delta_-), found by scanning a box of roots."""
    h = rs.coxeter_number
    out = []
    for n in range(-h, h + 1):
        for r in rs.roots:
            beta = AffineRoot(r, n)
            if beta.is_positive():
                continue
            # t_mu(beta) = beta - <beta, mu> delta on level-zero roots, mu = rho^vee
            img = AffineRoot(r, n - height(r))
            if img.is_positive():
                out.append(img)
    return sorted(out, key=lambda b: (b.n, height(b.finite), b.finite))


def condition_plus_witnesses(rs: RootSystemFin, lam: AffineWeight) -> list[AffineRoot]:
    """Roots alpha of the condition set with <lam + rho, alpha^vee> integral."""
    shifted = lam + affine_rho(rs)
    return [a for a in plus_condition_set(rs) if is_integer(pairing_coroot(rs, shifted, a))]


def condition_minus_witnesses(rs: RootSystemFin, lam: AffineWeight) -> list[AffineRoot]:
    """Positive finite roots abar with <lam + rho, abar^vee> integral."""
    shifted = lam + affine_rho(rs)
    return [AffineRoot(a, 0) for a in rs.positive_roots
            if is_integer(pairing_coroot(rs, shifted, AffineRoot(a, 0)))]


def condition_plus(rs: RootSystemFin, lam: AffineWeight) -> bool:
    """True when <lam + rho, alpha^vee> is non-integral for every alpha in the condition set."""
    return not condition_plus_witnesses(rs, lam)


def condition_minus(rs: RootSystemFin, lam: AffineWeight) -> bool:
    """True when <lam + rho, abar^vee> is non-integral for every positive finite root."""
    return not condition_minus_witnesses(rs, lam)


# --- integral root systems ---------------------------------------------------

@dataclass
class IntegralData:
    positive: list[AffineRoot]  # integral positive real roots with n <= cutoff
    simple: list[AffineRoot]  # simple roots of the integral system, verified within the cutoff
    cutoff: int

    def height(self, beta: AffineRoot | Depth) -> int:
        """Height of an element of the positive integral root cone, w.r.t. the simple integral roots."""
        if isinstance(beta, AffineRoot):
            vec = (beta.n,) + tuple(beta.finite)
        else:
            vec = tuple(beta)
        basis = [(s.n,) + tuple(s.finite) for s in self.simple]
        dim = len(vec)
        if len(basis) != dim:
            raise ValueError("height needs a simple system spanning the root lattice")
        m = [[basis[j][i] for j in range(dim)] for i in range(dim)]
        coords = solve_square(m, list(vec))
        if any(Fraction(c).denominator != 1 or c < 0 for c in coords):
            raise ValueError(f"{vec} is not in the positive integral cone")
        return int(sum(coords))


def integral_data(rs: RootSystemFin, lam: AffineWeight, cutoff: int = 6) -> IntegralData:
    shifted = lam + affine_rho(rs)
    pos = [a for a in positive_real_roots(rs, cutoff) if is_integer(pairing_coroot(rs, shifted, a))]
    simple = []
    for b in pos:
        ok = True
        for g in pos:
            if g == b:
                continue
            img = root_reflect(rs, b, g)
            if not img.is_positive():
                ok = False
                break
        if ok:
            simple.append(b)
    return IntegralData(pos, simple, cutoff)


# --- principal admissible weights --------------------------------------------

@dataclass(frozen=True)
class AdmissibleWeight:
    p: int
    q: int
    lam_bar: tuple[int, ...]  # dominant, level p - h^vee
    mu_bar: tuple[int, ...]  # dominant coweight, fundamental-coweight coordinates
    weight: AffineWeight

    @property
    def kappa(self) -> Fraction:
        return Fraction(self.p, self.q)


def _dominant_bounded(rs: RootSystemFin, bound: int, marks) -> list[tuple[int, ...]]:
    """Integral dominant tuples x with sum_i marks[i] x_i <= bound."""
    out = []
    for x in product(*(range(bound // m + 1) for m in marks)):
        if sum(m * v for m, v in zip(marks, x)) <= bound:
            out.append(tuple(x))
    return sorted(out)


def enumerate_principal_admissible(rs: RootSystemFin, p: int, q: int) -> list[AdmissibleWeight]:
    """Principal admissible weights lam - (p/q) mu + (p/q - h^vee) Lambda_0."""
    hv, h = rs.dual_coxeter_number, rs.coxeter_number
    rv = rs.lacing
    if gcd(p, q) != 1 or p < (hv if gcd(q, rv) == 1 else h) or q < (h if gcd(q, rv) == 1 else rv * hv):
        raise ValueError(f"(p, q) = ({p}, {q}) is not an admissible level")
    kappa = Fraction(p, q)
    # <lam, theta^vee> <= p - h^vee: marks of theta^vee in terms of fundamental weights
    theta_cor = rs.coroot_coords(rs.theta)
    lam_marks = [int(c) for c in theta_cor]
    # <theta, mu> <= q - h for mu in fundamental coweights: marks of theta
    mu_marks = list(rs.theta)
    if gcd(q, rv) == 1:
        lam_bound, mu_bound = p - hv, q - h
    else:
        lam_bound, mu_bound = p - h, q // rv - hv
    out = []
    for lam in _dominant_bounded(rs, lam_bound, lam_marks):
        for mu in _dominant_bounded(rs, mu_bound, mu_marks):
            mu_cor = tuple(sum(mu[j] * rs.fund_coweight(j)[i] for j in range(rs.rank)) for i in range(rs.rank))
            nu = rs.root_to_fund(rs.coweight_to_weight(mu_cor))
            fin = tuple(_q(l - kappa * v) for l, v in zip(lam, nu))
            out.append(AdmissibleWeight(p, q, lam, mu, AffineWeight(fin, _q(kappa - hv), 0)))
    return out


# --- eigenvalues of the degree operators ---------------------------------------

def degree_eigenvalue_plus(rs: RootSystemFin, mu: AffineWeight) -> Scalar:
    """Eigenvalue of the side-plus degree operator on the lam-weight space: <mu, rho^vee> + <mu, D>."""
    return _q(pair_coweight(rs, mu, rs.rho_check) + mu.d)


def degree_eigenvalue_minus(rs: RootSystemFin, mu: AffineWeight) -> Scalar:
    """Eigenvalue of the side-minus degree operator: <mu, D> + kappa |rho^vee|^2 / 2 - <rho, rho^vee>."""
    kappa = mu.level + rs.dual_coxeter_number
    rr = sum(rs.rho_check)  # <rho, rho^vee> with <rho, alpha_i^vee> = 1
    return _q(mu.d + kappa * coweight_norm2(rs, rs.rho_check) / 2 - rr)


def degree_eigenvalue(rs: RootSystemFin, side: str, mu: AffineWeight) -> Scalar:
    return degree_eigenvalue_plus(rs, mu) if side == "+" else degree_eigenvalue_minus(rs, mu)


# --- depth windows -----------------------------------------------------------

def in_positive_cone(rs: RootSystemFin, beta: Depth) -> bool:
    """beta = k delta + mbar lies in Q_+ (non-negative sums of positive affine roots)."""
    k, m = beta[0], beta[1:]
    if k < 0:
        return False
    if k == 0:
        return all(x >= 0 for x in m)
    return all(x + k * t >= 0 for x, t in zip(m, rs.theta))


@dataclass(frozen=True)
class Window:
    """Finite set of depths: beta in Q_+ with delta-depth <= n_t and |height| <= n_h.

    ``offset`` shifts the test (beta + offset must be inside), which is how a
    module generated at a lower weight inherits the window of its parent.
    """

    n_t: int
    n_h: int
    offset: Depth | None = None

    def contains(self, rs: RootSystemFin, beta: Depth) -> bool:
        if not in_positive_cone(rs, beta):
            return False
        if self.offset is not None:
            beta = tuple(a + b for a, b in zip(beta, self.offset))
        return beta[0] <= self.n_t and abs(sum(beta[1:])) <= self.n_h

    def shifted(self, gamma: Depth) -> "Window":
        off = gamma if self.offset is None else tuple(a + b for a, b in zip(gamma, self.offset))
        return Window(self.n_t, self.n_h, tuple(off))

    def depths(self, rs: RootSystemFin) -> list[Depth]:
        """All depths in the window, sorted by (k, height, lex)."""
        off = self.offset or (0,) * (rs.rank + 1)
        out = []
        for k in range(0, self.n_t - off[0] + 1):
            lo = [-k * t for t in rs.theta]
            span = self.n_h + abs(sum(off[1:])) + k * sum(rs.theta)
            for m in product(*(range(l, l + span + 1) for l in lo)):
                beta = (k,) + tuple(m)
                if self.contains(rs, beta):
                    out.append(beta)
        return sorted(out, key=lambda b: (b[0], sum(b[1:]), b))

    def to_json(self) -> dict:
        return {"n_t": self.n_t, "n_h": self.n_h, "offset": list(self.offset) if self.offset else None}


def depth_sub(a: Depth, b: Depth) -> Depth:
    return tuple(x - y for x, y in zip(a, b))


def depth_add(a: Depth, b: Depth) -> Depth:
    return tuple(x + y for x, y in zip(a, b))
