"""Exact sparse linear algebra over Q or Q(k).

Vectors are dicts key -> nonzero scalar. Matrices are lists of column vectors.
Elimination keeps a fully reduced echelon basis and can track, for every
stored row, the combination of inputs that produced it; that gives kernels
and coordinates without a separate back-substitution pass.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable

from .scalars import pivot_cost

Vec = dict


def axpy(y: Vec, a, x: Vec) -> None:
    """y += a*x in place, dropping zeros."""
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        elif k in y:
            del y[k]


def scaled(x: Vec, a) -> Vec:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def add(x: Vec, y: Vec) -> Vec:
    out = dict(x)
    axpy(out, 1, y)
    return out


class Echelon:
    """Incrementally built, fully reduced row echelon basis of a subspace.

    With ``track=True`` each stored row remembers its expression in the
    inserted vectors (by insertion index), so that inserting a dependent
    vector yields a relation among inputs.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[Hashable, Vec] = {}  # pivot -> row with row[pivot] == 1
        self.combo: dict[Hashable, Vec] = {}
        self.track = track
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Vec, combo: Vec | None = None) -> Vec:
        v = dict(v)
        for p in [p for p in v if p in self.rows]:
            c = v.get(p)
            if c:
                axpy(v, -c, self.rows[p])
                if combo is not None:
                    axpy(combo, -c, self.combo[p])
        return v

    def insert(self, v: Vec):
        """Insert v. Returns None if independent, otherwise the relation (tracked mode) or {}."""
        idx = self.count
        self.count += 1
        combo = {idx: 1} if self.track else None
        r = self.reduce(v, combo)
        if not r:
            return combo if self.track else {}
        p = min(r, key=lambda k: pivot_cost(r[k]))
        inv = 1 / r[p] if not isinstance(r[p], int) else Fraction(1, r[p])
        r = scaled(r, inv)
        if combo is not None:
            combo = scaled(combo, inv)
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
                if self.track:
                    axpy(self.combo[q], -c, combo)
        self.rows[p] = r
        if self.track:
            self.combo[p] = combo
        return None

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Vec) -> Vec | None:
        """Express v in the inserted vectors (tracked mode); None if v is outside the span."""
        if not self.track:
            raise ValueError("coordinates need a tracked echelon")
        combo: Vec = {}
        r = self.reduce(v, combo)
        if r:
            return None
        return scaled(combo, -1)


def rank(columns: Iterable[Vec]) -> int:
    e = Echelon()
    for c in columns:
        e.insert(c)
    return len(e)


def kernel(columns: list[Vec]) -> list[Vec]:
    """Basis of the kernel of the map whose j-th column is columns[j] (vectors over indices j)."""
    e = Echelon(track=True)
    out = []
    for c in columns:
        rel = e.insert(c)
        if rel is not None:
            out.append(rel)
    return out


def rank_and_kernel_dim(columns: list[Vec]) -> tuple[int, int]:
    r = rank(columns)
    return r, len(columns) - r


def compose_is_zero(first: list[Vec], second: list[Vec]) -> bool:
    """Check second o first == 0, where first maps basis j to a vector over second's indices."""
    for col in first:
        acc: Vec = {}
        for i, a in col.items():
            axpy(acc, a, second[i])
        if acc:
            return False
    return True


def solve_square(m: list[list], rhs: list) -> list:
    """Unique solution of a square system; raises if singular."""
    cols = [{i: m[i][j] for i in range(len(m)) if m[i][j]} for j in range(len(m))]
    e = Echelon(track=True)
    for c in cols:
        if e.insert(c) is not None:
            raise ArithmeticError("singular system")
    coords = e.coordinates({i: x for i, x in enumerate(rhs) if x})
    return [coords.get(j, 0) for j in range(len(m))]


def solve_in_span(vectors: list[Vec], target: Vec) -> Vec | None:
    e = Echelon(track=True)
    for v in vectors:
        e.insert(v)
    return e.coordinates(target)
