"""Semi-infinite fermionic Fock space of the loop algebra.

Fermions psi_a(n) are labelled by a root index a of the Chevalley basis and a
mode n, with {psi_a(m), psi_b(n)} = delta_{a,-b} delta_{m+n,0}. A fermion is a
creator when its weight root(a) + n*delta is a negative real root (n < 0, or
n = 0 and a negative); every other fermion kills the vacuum. This split is the
same for both sides; the side only decides the charge grading.

States are ordered tuples of creators in the canonical order (mode descending,
then root index). Putting a creator in position p costs the sign (-1)^p and
removing the creator at position j costs (-1)^j. The pairing between the two
sides is the identity matrix on canonical states, which makes psi_a(n)
transposed equal to psi_{-a}(-n).
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .affine import Depth, depth_add, depth_sub, in_positive_cone
from .liealg import ChevalleyBasis, root_name

Fermion = tuple[int, int]  # (root index a, mode n)
State = tuple[Fermion, ...]

VACUUM: State = ()


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SideConfig:
    """Which nilpotent loop subalgebra is reduced: '+' (upper finite part) or '-' (lower)."""

    side: str

    def __post_init__(self):
        if self.side not in ("+", "-"):
            raise ConfigError(f"side must be '+' or '-', got {self.side!r}")

    def flipped(self) -> "SideConfig":
        return SideConfig("-" if self.side == "+" else "+")

    def nilpotent_roots(self, cb: ChevalleyBasis) -> range:
        """Root indices of the finite nilpotent part n (positive roots for '+')."""
        return cb.positive_indices if self.side == "+" else cb.negative_indices

    def opposite_roots(self, cb: ChevalleyBasis) -> range:
        return cb.negative_indices if self.side == "+" else cb.positive_indices

    def in_nilpotent(self, cb: ChevalleyBasis, a: int) -> bool:
        return cb.is_positive(a) if self.side == "+" else cb.is_negative(a)


def fermion_key(f: Fermion) -> tuple[int, int]:
    return (-f[1], f[0])


class FockSpace:
    def __init__(self, cb: ChevalleyBasis):
        self.cb = cb
        self.rs = cb.rs
        self._by_k: dict[int, dict[Depth, list[State]]] = {}

    # --- classification --------------------------------------------------
    def is_creator(self, f: Fermion) -> bool:
        a, n = f
        return n < 0 or (n == 0 and self.cb.is_negative(a))

    def partner(self, f: Fermion) -> Fermion:
        a, n = f
        return (self.cb.opposite[a], -n)

    def depth_of(self, f: Fermion) -> Depth:
        """Depth (-weight) carried by a creator."""
        a, n = f
        return (-n,) + tuple(-x for x in self.cb.root_of[a])

    def shift(self, f: Fermion) -> Depth:
        """Operator psi_a(n) moves depth beta to beta - shift."""
        a, n = f
        return (n,) + self.cb.root_of[a]

    def state_depth(self, s: State) -> Depth:
        d = (0,) * (self.rs.rank + 1)
        for f in s:
            d = depth_add(d, self.depth_of(f))
        return d

    def charge(self, s: State, side: SideConfig) -> int:
        """Ghost charge: creators from the nilpotent part count -1, the others +1."""
        return sum(-1 if side.in_nilpotent(self.cb, f[0]) else 1 for f in s)

    # --- operators -------------------------------------------------------
    def apply(self, f: Fermion, s: State) -> tuple[int, State] | None:
        """psi_a(n)|s> = sign * |s'> or None when zero."""
        if self.is_creator(f):
            keys = [fermion_key(x) for x in s]
            k = fermion_key(f)
            p = bisect_left(keys, k)
            if p < len(s) and s[p] == f:
                return None
            return (-1 if p % 2 else 1), s[:p] + (f,) + s[p:]
        g = self.partner(f)
        try:
            j = s.index(g)
        except ValueError:
            return None
        return (-1 if j % 2 else 1), s[:j] + s[j + 1:]

    def apply_word(self, word: list[Fermion], s: State) -> tuple[int, State] | None:
        """Apply word[-1] first (operator product order)."""
        sign = 1
        for f in reversed(word):
            r = self.apply(f, s)
            if r is None:
                return None
            sg, s = r
            sign *= sg
        return sign, s

    def normal_ordered_pair(self, f: Fermion, g: Fermion, s: State) -> dict[State, int]:
        """:psi_f psi_g: |s>, annihilators moved to the right with a sign."""
        out: dict[State, int] = {}
        r = self.apply_word([f, g], s)
        if r is not None:
            out[r[1]] = r[0]
        if not self.is_creator(f) and self.is_creator(g) and g == self.partner(f):
            # :AB: = AB - {A, B} for annihilator A and its creator partner B
            out[s] = out.get(s, 0) - 1
            if not out[s]:
                del out[s]
        return out

    # --- enumeration -----------------------------------------------------
    def creators_up_to(self, k_max: int) -> list[Fermion]:
        out = []
        for n in range(0, -k_max - 1, -1):
            for a in range(self.cb.rank, self.cb.dim):
                if self.is_creator((a, n)):
                    out.append((a, n))
        return sorted(out, key=fermion_key)

    def states_up_to(self, k_max: int) -> dict[Depth, list[State]]:
        """All states with delta-depth <= k_max, bucketed by depth, each bucket in canonical order."""
        hit = self._by_k.get(k_max)
        if hit is not None:
            return hit
        cre = self.creators_up_to(k_max)
        buckets: dict[Depth, list[State]] = {}

        def rec(i: int, depth: Depth, acc: tuple):
            buckets.setdefault(depth, []).append(acc)
            for j in range(i, len(cre)):
                d2 = depth_add(depth, self.depth_of(cre[j]))
                if d2[0] > k_max:
                    continue
                rec(j + 1, d2, acc + (cre[j],))

        rec(0, (0,) * (self.rs.rank + 1), ())
        for d in buckets:
            buckets[d].sort(key=lambda s: [fermion_key(f) for f in s])
        self._by_k[k_max] = buckets
        return buckets

    def states_at(self, beta: Depth) -> list[State]:
        return self.states_up_to(beta[0]).get(tuple(beta), [])

    def states_below(self, beta: Depth) -> list[tuple[Depth, State]]:
        """States s with beta - depth(s) in Q_+, as (depth(s), s)."""
        out = []
        for d, states in sorted(self.states_up_to(beta[0]).items()):
            if in_positive_cone(self.rs, depth_sub(beta, d)):
                out.extend((d, s) for s in states)
        return out


def fock_pairing(s: State, t: State) -> int:
    """Pairing of the opposite-side Fock spaces: identity on canonical states."""
    return 1 if s == t else 0


def format_state(cb: ChevalleyBasis, s: State) -> str:
    if not s:
        return "|0⟩"
    return "".join(f"ψ_{{{root_name(cb.root_of[a])}}}({n})" for a, n in s) + "|0⟩"
