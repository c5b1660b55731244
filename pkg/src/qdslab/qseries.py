"""Truncated q-series and formal characters.

A ``QSeries`` with offset h and coefficients c_0, c_1, ... stands for
q^h (c_0 + c_1 q + c_2 q^2 + ...). For cohomology of the reduction complexes
the coefficient c_j is the dimension at degree-operator eigenvalue h - j
(the eigenvalues decrease in integer steps from the top weight).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .affine import AffineWeight, Depth, Window, degree_eigenvalue, depth_sub, in_positive_cone
from .liealg import RootSystemFin, height
from .scalars import Scalar, format_scalar


class NotVermaSpanned(ValueError):
    pass


def colored_partitions(colors: int, n_max: int) -> list[int]:
    """Coefficients of prod_{i>=1} (1 - q^i)^(-colors) up to q^n_max."""
    c = [1] + [0] * n_max
    for i in range(1, n_max + 1):
        for _ in range(colors):
            for n in range(i, n_max + 1):
                c[n] += c[n - i]
    return c


@dataclass(frozen=True)
class QSeries:
    offset: Scalar
    coeffs: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        n = min(len(self.coeffs), len(other.coeffs))
        return QSeries(self.offset, tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __sub__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        n = min(len(self.coeffs), len(other.coeffs))
        return QSeries(self.offset, tuple(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def shift(self, j: int) -> "QSeries":
        """Multiply by q^j, keeping the offset."""
        return QSeries(self.offset, (0,) * j + self.coeffs[: max(len(self.coeffs) - j, 0)])

    def _check(self, other):
        if self.offset != other.offset:
            raise ValueError(f"offsets differ: {self.offset} vs {other.offset}")

    def truncate(self, n: int) -> "QSeries":
        return QSeries(self.offset, self.coeffs[: n + 1])

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if j == 0 else ("q" if j == 1 else f"q^{j}")
            if mono:
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            else:
                body = str(abs(c))
            terms.append(("- " if c < 0 else "+ ") + body)
        inner = " ".join(terms).lstrip("+ ") if terms else "0"
        if terms and terms[0].startswith("- "):
            inner = "-" + inner[2:]
        return f"q^{{{format_scalar(self.offset)}}}({inner} + O(q^{len(self.coeffs)}))"

    def to_json(self) -> dict:
        return {"offset": format_scalar(self.offset), "coeffs": list(self.coeffs)}


def h0_character(rs: RootSystemFin, lam: AffineWeight, side: str, n_max: int) -> QSeries:
    """Predicted character of the degree-zero reduction of M(lam): q^h / prod (1-q^i)^rank."""
    return QSeries(degree_eigenvalue(rs, side, lam), tuple(colored_partitions(rs.rank, n_max)))


@dataclass
class Character:
    """Formal character sum_beta c_beta e^(ref - beta) restricted to a window."""

    ref: AffineWeight
    window: Window
    coeffs: dict[Depth, int] = field(default_factory=dict)

    def __getitem__(self, beta: Depth) -> int:
        return self.coeffs.get(tuple(beta), 0)

    def __sub__(self, other: "Character") -> "Character":
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            v = out.get(b, 0) - c
            if v:
                out[b] = v
            else:
                out.pop(b, None)
        return Character(self.ref, self.window, out)

    def __add__(self, other: "Character") -> "Character":
        return self - other.scale(-1)

    def scale(self, c: int) -> "Character":
        return Character(self.ref, self.window, {b: c * v for b, v in self.coeffs.items() if c * v})

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self.ref == other.ref and {b: v for b, v in self.coeffs.items() if v} == \
            {b: v for b, v in other.coeffs.items() if v}

    def to_json(self) -> dict:
        return {"ref": self.ref.to_json(), "window": self.window.to_json(),
                "coeffs": [[list(b), c] for b, c in sorted(self.coeffs.items())]}


def _affine_positive_roots(rs: RootSystemFin, n_t: int) -> list[tuple[Depth, int]]:
    """Positive affine roots with delta-coefficient <= n_t as (depth, multiplicity)."""
    out = [((0,) + r, 1) for r in rs.positive_roots]
    for k in range(1, n_t + 1):
        out += [((k,) + r, 1) for r in rs.roots]
        out.append(((k,) + (0,) * rs.rank, rs.rank))
    return out


def kostant_partitions(rs: RootSystemFin, n_t: int, h_max: int) -> dict[Depth, int]:
    """Number of ways to write beta as a sum of positive affine roots (imaginary ones with multiplicity rank).

    Exact for every beta with k <= n_t and height <= h_max - n_t*ht(theta); the
    slack covers partial sums that dip below the final height.
    """
    counts: dict[Depth, int] = {(0,) * (rs.rank + 1): 1}
    for root, mult in _affine_positive_roots(rs, n_t):
        for _ in range(mult):
            # geometric series 1/(1 - e^root): add every multiple of the root
            new = dict(counts)
            frontier = dict(counts)
            while frontier:
                nxt = {}
                for b, c in frontier.items():
                    t = tuple(x + y for x, y in zip(b, root))
                    if t[0] > n_t or sum(t[1:]) > h_max:
                        continue
                    nxt[t] = nxt.get(t, 0) + c
                for t, c in nxt.items():
                    new[t] = new.get(t, 0) + c
                frontier = nxt
            counts = new
    return counts


def verma_character(rs: RootSystemFin, lam: AffineWeight, window: Window) -> Character:
    slack = window.n_t * height(rs.theta)
    off = window.offset or (0,) * (rs.rank + 1)
    parts = kostant_partitions(rs, window.n_t, window.n_h + abs(sum(off[1:])) + slack)
    coeffs = {b: c for b, c in parts.items() if window.contains(rs, b)}
    return Character(lam, window, coeffs)


def verma_multiplicities(rs: RootSystemFin, ch: Character, candidates: list[Depth]) -> dict[Depth, int]:
    """Coefficients [V : M(ref - gamma)] for gamma in candidates, by unitriangular elimination.

    Raises NotVermaSpanned if the remainder does not vanish on the window.
    """
    win = ch.window
    slack = win.n_t * height(rs.theta)
    parts = kostant_partitions(rs, win.n_t, win.n_h + slack)
    residual = dict(ch.coeffs)
    out: dict[Depth, int] = {}
    for gamma in sorted(set(map(tuple, candidates)), key=lambda b: (b[0], sum(b[1:]), b)):
        c = residual.get(gamma, 0)
        out[gamma] = c
        if not c:
            continue
        for beta in list(win.depths(rs)):
            rel = depth_sub(beta, gamma)
            if not in_positive_cone(rs, rel):
                continue
            p = parts.get(rel, 0)
            if p:
                v = residual.get(beta, 0) - c * p
                if v:
                    residual[beta] = v
                else:
                    residual.pop(beta, None)
    left = {b: v for b, v in residual.items() if v and win.contains(rs, b)}
    if left:
        raise NotVermaSpanned(f"remainder not spanned by the candidates: {sorted(left.items())[:5]}")
    return out
