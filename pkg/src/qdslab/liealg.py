"""Finite root systems and Chevalley bases of simple Lie algebras.

Supported types: A1-A3, B2, C2. Roots are stored as integer tuples of
simple-root coordinates, weights as tuples of fundamental-weight coordinates.
The invariant form is normalized by (theta, theta) = 2.

The Chevalley basis is read off from a matrix model closed under matrix
transposition, so that transposition realizes the Chevalley anti-involution
(e_i <-> f_i, Cartan fixed). Root vectors are scaled so that (J_a, J_-a) = 1;
this only needs rational square roots in the models used here (C2 is realized
inside so(5) with the simple roots relabeled).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt

Root = tuple[int, ...]


class UnsupportedAlgebra(ValueError):
    pass


class NormalizationError(ArithmeticError):
    pass


# --- small exact matrix helpers -------------------------------------------

Mat = list[list[Fraction]]


def _zeros(n: int) -> Mat:
    return [[Fraction(0)] * n for _ in range(n)]


def _unit(n: int, i: int, j: int) -> Mat:
    m = _zeros(n)
    m[i][j] = Fraction(1)
    return m


def _mul(a: Mat, b: Mat) -> Mat:
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n) if a[i][k]), Fraction(0)) for j in range(n)]
            for i in range(n)]


def _add(a: Mat, b: Mat, s=1) -> Mat:
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _scale(a: Mat, s) -> Mat:
    return [[s * x for x in r] for r in a]


def _bracket(a: Mat, b: Mat) -> Mat:
    return _add(_mul(a, b), _mul(b, a), -1)


def _tr(a: Mat) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def _transpose(a: Mat) -> Mat:
    return [list(r) for r in zip(*a)]


def _is_zero(a: Mat) -> bool:
    return all(x == 0 for r in a for x in r)


def _solve(m: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular system by Gauss-Jordan elimination."""
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(m, rhs)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[i][n] for i in range(n)]


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    cols = [_solve(m, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _qsqrt(x: Fraction) -> Fraction:
    if x <= 0:
        raise NormalizationError(f"cannot normalize: form value {x} is not positive")
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n != x.numerator or d * d != x.denominator:
        raise NormalizationError(f"form value {x} is not a rational square")
    return Fraction(n, d)


# --- root systems -----------------------------------------------------------

def _simple_gram(typ: str, rank: int) -> list[list[Fraction]]:
    """Gram matrix (alpha_i, alpha_j) of simple roots, long roots of square length 2."""
    g = _zeros(rank)
    if typ == "A":
        for i in range(rank):
            g[i][i] = Fraction(2)
            if i + 1 < rank:
                g[i][i + 1] = g[i + 1][i] = Fraction(-1)
        return g
    if typ == "B" and rank == 2:
        return [[Fraction(2), Fraction(-1)], [Fraction(-1), Fraction(1)]]
    if typ == "C" and rank == 2:
        return [[Fraction(1), Fraction(-1)], [Fraction(-1), Fraction(2)]]
    raise UnsupportedAlgebra(f"type {typ}{rank} is not supported")


SUPPORTED = (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2))


@dataclass(frozen=True)
class RootSystemFin:
    """Finite irreducible root system of type A1-A3, B2 or C2."""

    type: str
    rank: int
    gram: tuple[tuple[Fraction, ...], ...]  # (alpha_i, alpha_j)
    positive_roots: tuple[Root, ...]  # height-then-lex order
    longest_word: tuple[int, ...] = field(default=())

    @property
    def name(self) -> str:
        return f"{self.type}{self.rank}"

    # cartan[i][j] = <alpha_j, alpha_i^vee>
    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        g = self.gram
        return tuple(tuple(int(2 * g[i][j] / g[i][i]) for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def cartan_inverse(self) -> list[list[Fraction]]:
        return _inverse([[Fraction(x) for x in row] for row in self.cartan])

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @property
    def roots(self) -> tuple[Root, ...]:
        """All roots: positive ones followed by their negatives."""
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    @cached_property
    def theta(self) -> Root:
        return self.positive_roots[-1]

    @property
    def coxeter_number(self) -> int:
        return height(self.theta) + 1

    @cached_property
    def dual_coxeter_number(self) -> int:
        # <rho, theta^vee> + 1, with <rho, alpha_i^vee> = 1
        return int(sum(self.coroot_coords(self.theta))) + 1

    @cached_property
    def lacing(self) -> int:
        """r^vee: ratio of long to short square lengths."""
        return int(max(Fraction(2) / self.gram[i][i] for i in range(self.rank)))

    def form(self, a, b) -> Fraction:
        """Invariant form of two vectors in simple-root coordinates."""
        return sum((Fraction(a[i]) * self.gram[i][j] * b[j]
                    for i in range(self.rank) for j in range(self.rank) if a[i] and b[j]), Fraction(0))

    def norm2(self, a) -> Fraction:
        return self.form(a, a)

    def pair_coroot(self, beta, alpha: Root):
        """<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha) for beta in root coordinates."""
        return 2 * self.form(beta, alpha) / self.norm2(alpha)

    def coroot_coords(self, alpha: Root) -> tuple[Fraction, ...]:
        """alpha^vee in the basis of simple coroots."""
        n = self.norm2(alpha)
        return tuple(Fraction(alpha[i]) * self.gram[i][i] / n for i in range(self.rank))

    @cached_property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank

    @cached_property
    def rho_check(self) -> tuple[Fraction, ...]:
        """rho^vee = half sum of positive coroots, in simple-coroot coordinates."""
        acc = [Fraction(0)] * self.rank
        for a in self.positive_roots:
            for i, c in enumerate(self.coroot_coords(a)):
                acc[i] += c / 2
        return tuple(acc)

    @cached_property
    def coroot_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """(alpha_i^vee, alpha_j^vee) = 4 (alpha_i, alpha_j) / (|alpha_i|^2 |alpha_j|^2)."""
        g = self.gram
        return tuple(tuple(4 * g[i][j] / (g[i][i] * g[j][j]) for j in range(self.rank)) for i in range(self.rank))

    # coordinate changes
    def root_to_fund(self, beta) -> tuple:
        """Simple-root coordinates to fundamental-weight coordinates."""
        c = self.cartan
        return tuple(sum(beta[j] * c[i][j] for j in range(self.rank)) for i in range(self.rank))

    def fund_to_root(self, lam) -> tuple:
        inv = self.cartan_inverse
        return tuple(sum(inv[i][j] * lam[j] for j in range(self.rank)) for i in range(self.rank))

    def coweight_to_weight(self, mu) -> tuple:
        """Image of a coweight (simple-coroot coordinates) under the form identification, in root coordinates."""
        return tuple(Fraction(mu[i]) * 2 / self.gram[i][i] for i in range(self.rank))

    def fund_coweight(self, i: int) -> tuple[Fraction, ...]:
        """omega_i^vee in simple-coroot coordinates: <alpha_j, omega_i^vee> = delta_ij."""
        ct = [[Fraction(self.cartan[j][k]) for j in range(self.rank)] for k in range(self.rank)]
        return tuple(_solve(ct, [Fraction(int(j == i)) for j in range(self.rank)]))

    def is_root(self, beta) -> bool:
        return tuple(beta) in self._root_set

    @cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.roots)

    def is_positive(self, beta) -> bool:
        return any(beta) and all(x >= 0 for x in beta)

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "positive_roots": [list(r) for r in self.positive_roots],
            "theta": list(self.theta),
            "coxeter_number": self.coxeter_number,
            "dual_coxeter_number": self.dual_coxeter_number,
            "rho_check": [str(x) for x in self.rho_check],
            "longest_word": list(self.longest_word),
        }


def neg(r):
    return tuple(-x for x in r)


def height(r) -> int:
    return sum(r)


def _reflect_root(cartan, i: int, beta: tuple) -> tuple:
    # s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
    p = sum(beta[j] * cartan[i][j] for j in range(len(beta)))
    out = list(beta)
    out[i] -= p
    return tuple(out)


def _positive_roots(cartan) -> list[Root]:
    rank = len(cartan)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(rank):
                # q = how far down the alpha_i string from beta goes
                q = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        q += 1
                    else:
                        break
                p = q - sum(beta[j] * cartan[i][j] for j in range(rank))
                if p >= 1:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(found, key=lambda r: (height(r), r))


def _longest_word(cartan, positive: list[Root]) -> tuple[int, ...]:
    """Reduced word for w0, grown greedily: append s_i while w(alpha_i) > 0."""
    rank = len(cartan)
    word: list[int] = []
    while True:
        for i in range(rank):
            img = tuple(int(j == i) for j in range(rank))
            for k in reversed(word):
                img = _reflect_root(cartan, k, img)
            if all(x >= 0 for x in img):
                word.append(i)
                break
        else:
            return tuple(word)


def build_root_system(typ: str, rank: int) -> RootSystemFin:
    typ = typ.upper()
    if (typ, rank) not in SUPPORTED:
        raise UnsupportedAlgebra(f"type {typ}{rank} is not supported (supported: A1-A3, B2, C2)")
    g = _simple_gram(typ, rank)
    gram = tuple(tuple(r) for r in g)
    cartan = tuple(tuple(int(2 * g[i][j] / g[i][i]) for j in range(rank)) for i in range(rank))
    pos = _positive_roots(cartan)
    return RootSystemFin(typ, rank, gram, tuple(pos), _longest_word(cartan, pos))


def parse_type(text: str) -> tuple[str, int]:
    text = text.strip().upper()
    if len(text) < 2 or not text[1:].isdigit():
        raise UnsupportedAlgebra(f"cannot parse Lie type {text!r}")
    return text[0], int(text[1:])


def weyl_act(rs: RootSystemFin, word, v, coords: str = "root") -> tuple:
    """Apply s_{w[0]} ... s_{w[-1]} to v (rightmost reflection first).

    coords='root' for simple-root coordinates, 'fund' for fundamental weights.
    """
    v = tuple(v)
    for i in reversed(tuple(word)):
        if coords == "root":
            p = sum(v[j] * rs.cartan[i][j] for j in range(rs.rank))
            out = list(v)
            out[i] = out[i] - p
        elif coords == "fund":
            li = v[i]
            out = [v[j] - li * rs.cartan[j][i] for j in range(rs.rank)]  # alpha_i = column i
        else:
            raise ValueError(f"unknown coordinates {coords!r}")
        v = tuple(out)
    return v


# --- matrix models and the Chevalley basis ----------------------------------

def _model(typ: str, rank: int) -> tuple[int, list[Mat]]:
    """Return (matrix size, simple raising operators E_i) of a transpose-closed model."""
    if typ == "A":
        n = rank + 1
        return n, [_unit(n, i, i + 1) for i in range(rank)]
    # so(5) for the form with antidiagonal ones; E for x1-x2 (long) and x2 (short)
    n = 5
    long_e = _add(_unit(n, 0, 1), _unit(n, 3, 4), -1)
    short_e = _add(_unit(n, 1, 2), _unit(n, 2, 3), -1)
    if typ == "B":
        return n, [long_e, short_e]
    if typ == "C":
        return n, [short_e, long_e]
    raise UnsupportedAlgebra(typ)


@dataclass
class ChevalleyBasis:
    """Basis J_a of a simple Lie algebra with integer-indexed labels.

    Index layout: 0..r-1 Cartan elements alpha_i^vee, then r..r+N-1 positive
    root vectors in the order of ``rs.positive_roots``, then their negatives.
    """

    rs: RootSystemFin
    matrices: list[Mat]
    form_matrix: dict[tuple[int, int], Fraction]
    structure: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def dim(self) -> int:
        return self.rs.rank + 2 * len(self.rs.positive_roots)

    @cached_property
    def root_of(self) -> tuple[Root, ...]:
        zero = (0,) * self.rank
        return (zero,) * self.rank + self.rs.positive_roots + tuple(neg(r) for r in self.rs.positive_roots)

    @cached_property
    def index_of_root(self) -> dict[Root, int]:
        return {r: a for a, r in enumerate(self.root_of) if a >= self.rank}

    @cached_property
    def opposite(self) -> tuple[int, ...]:
        """Index of J_{-a}; Cartan indices map to themselves."""
        npos = len(self.rs.positive_roots)
        r = self.rank
        out = list(range(r))
        out += [r + npos + p for p in range(npos)]
        out += [r + p for p in range(npos)]
        return tuple(out)

    def transpose(self, a: int) -> int:
        """Chevalley anti-involution on basis labels: J_alpha^t = J_-alpha, J_i^t = J_i."""
        return self.opposite[a]

    def is_cartan(self, a: int) -> bool:
        return a < self.rank

    def is_positive(self, a: int) -> bool:
        return self.rank <= a < self.rank + len(self.rs.positive_roots)

    def is_negative(self, a: int) -> bool:
        return a >= self.rank + len(self.rs.positive_roots)

    @property
    def cartan_indices(self) -> range:
        return range(self.rank)

    @property
    def positive_indices(self) -> range:
        return range(self.rank, self.rank + len(self.rs.positive_roots))

    @property
    def negative_indices(self) -> range:
        return range(self.rank + len(self.rs.positive_roots), self.dim)

    def simple_index(self, i: int) -> int:
        return self.index_of_root[self.rs.simple_roots[i]]

    def bracket(self, a: int, b: int) -> tuple[tuple[int, Fraction], ...]:
        return self.structure.get((a, b), ())

    def form(self, a: int, b: int) -> Fraction:
        return self.form_matrix.get((a, b), Fraction(0))

    def name(self, a: int) -> str:
        if a < self.rank:
            return f"h{a + 1}"
        return root_name(self.root_of[a])

    def to_json(self) -> dict:
        brackets = []
        for (a, b), terms in sorted(self.structure.items()):
            brackets.append({"a": a, "b": b, "terms": [[c, str(v)] for c, v in terms]})
        return {"rs": self.rs.name, "labels": [self.name(a) for a in range(self.dim)], "brackets": brackets}


def root_name(r: Root) -> str:
    sign = "-" if any(x < 0 for x in r) else ""
    parts = []
    for i, c in enumerate(r):
        c = abs(c)
        if c:
            parts.append(("" if c == 1 else str(c)) + f"α{i + 1}")
    body = "+".join(parts)
    if sign and len(parts) > 1:
        return f"-({body})"
    return sign + body


def chevalley_structure_constants(rs: RootSystemFin) -> ChevalleyBasis:
    """Structure constants c_ab^c and the normalized form in the Chevalley basis."""
    typ, rank = rs.type, rs.rank
    n, simple_e = _model(typ, rank)

    # raw Cartan generators and normalization of the trace form
    raw_h = []
    for i, e in enumerate(simple_e):
        h = _bracket(e, _transpose(e))
        c = next(x / y for x, y in zip(sum(_bracket(h, e), []), sum(e, [])) if y != 0)
        raw_h.append(_scale(h, Fraction(2) / c))
    # (alpha_i^vee, alpha_i^vee) = 4 / (alpha_i, alpha_i) fixes the trace normalization
    tr_scale = Fraction(4) / (rs.gram[0][0] * _tr(_mul(raw_h[0], raw_h[0])))

    def tform(x: Mat, y: Mat) -> Fraction:
        return tr_scale * _tr(_mul(x, y))

    # positive root vectors by iterated brackets with simple ones
    vec: dict[Root, Mat] = {}
    for i, e in enumerate(simple_e):
        vec[rs.simple_roots[i]] = e
    for beta in rs.positive_roots:
        if beta in vec:
            continue
        for i in range(rank):
            prev = list(beta)
            prev[i] -= 1
            prev = tuple(prev)
            if prev in vec:
                m = _bracket(simple_e[i], vec[prev])
                if not _is_zero(m):
                    vec[beta] = m
                    break
        else:
            raise NormalizationError(f"could not build a root vector for {beta}")
    for beta in rs.positive_roots:
        s = _qsqrt(tform(vec[beta], _transpose(vec[beta])))
        vec[beta] = _scale(vec[beta], 1 / s)

    mats: list[Mat] = list(raw_h)
    mats += [vec[b] for b in rs.positive_roots]
    mats += [_transpose(vec[b]) for b in rs.positive_roots]
    dim = len(mats)

    form = {}
    for a in range(dim):
        for b in range(dim):
            v = tform(mats[a], mats[b])
            if v != 0:
                form[(a, b)] = v
    cg = [[form.get((i, j), Fraction(0)) for j in range(rank)] for i in range(rank)]

    basis = ChevalleyBasis(rs, mats, form, {})
    roots = basis.root_of
    structure = {}
    for a in range(dim):
        for b in range(dim):
            m = _bracket(mats[a], mats[b])
            if _is_zero(m):
                continue
            target = tuple(x + y for x, y in zip(roots[a], roots[b]))
            terms = []
            if any(target):
                c = basis.index_of_root.get(target)
                if c is None:
                    raise NormalizationError(f"bracket landed outside root spaces: {a}, {b}")
                # (J_c, J_-c) = 1 and root spaces pair only with opposites
                coeff = tform(m, mats[basis.opposite[c]])
                terms.append((c, coeff))
            else:
                rhs = [tform(m, mats[j]) for j in range(rank)]
                for j, x in enumerate(_solve(cg, rhs)):
                    if x != 0:
                        terms.append((j, x))
            # exact reconstruction check
            rec = _zeros(n)
            for c, x in terms:
                rec = _add(rec, _scale(mats[c], x))
            if rec != m:
                raise NormalizationError(f"bracket [{a},{b}] not in the span of the basis")
            structure[(a, b)] = tuple(terms)
    basis.structure = structure
    return basis
