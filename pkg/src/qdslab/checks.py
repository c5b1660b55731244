"""Verification suites.

Structure-constant checks run over all basis triples of the finite algebra.
Operator identities run on the reduction complex, one ``IdentityResult`` per
family, asserted on every basis vector of the requested saturated weights;
evaluations that would leave the window are counted as skipped.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product

from .affine import Depth
from .brst import (BrstComplex, IdentityResult, Op, check_identity, supercommutator,
                   zero_op)
from .linalg import axpy
from .liealg import ChevalleyBasis
from .scalars import simplify


# --- finite structure constants ------------------------------------------------

def _br(cb: ChevalleyBasis, x: dict, b: int) -> dict:
    out: dict = {}
    for a, c in x.items():
        for g, v in cb.bracket(a, b):
            axpy(out, c * v, {g: 1})
    return out


def jacobi_violations(cb: ChevalleyBasis) -> list[tuple[int, int, int]]:
    """Triples with [[a,b],c] + [[b,c],a] + [[c,a],b] != 0."""
    bad = []
    for a, b, c in product(range(cb.dim), repeat=3):
        if not (a < b < c):
            continue
        total: dict = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            axpy(total, 1, _br(cb, dict(cb.bracket(x, y)), z))
        if total:
            bad.append((a, b, c))
    return bad


def antisymmetry_violations(cb: ChevalleyBasis) -> list[tuple[int, int]]:
    bad = []
    for a, b in product(range(cb.dim), repeat=2):
        x = dict(cb.bracket(a, b))
        axpy(x, 1, dict(cb.bracket(b, a)))
        if x:
            bad.append((a, b))
    return bad


def contravariance_violations(cb: ChevalleyBasis) -> list[tuple[int, int, int]]:
    """Root triples with c_{a,b}^g != -c_{-a,-b}^{-g}."""
    op = cb.opposite
    bad = []
    roots = [a for a in range(cb.dim) if not cb.is_cartan(a)]
    for a, b in product(roots, repeat=2):
        lhs = dict(cb.bracket(a, b))
        rhs = {op[g]: v for g, v in cb.bracket(op[a], op[b])}
        for g in set(lhs) | set(rhs):
            if cb.is_cartan(g):
                continue
            if lhs.get(g, 0) != -rhs.get(g, 0):
                bad.append((a, b, g))
    return bad


def invariance_violations(cb: ChevalleyBasis) -> list[tuple[int, int, int]]:
    """Triples with ([a,b],c) != (a,[b,c])."""
    bad = []
    for a, b, c in product(range(cb.dim), repeat=3):
        lhs = sum((v * cb.form(g, c) for g, v in cb.bracket(a, b)), Fraction(0))
        rhs = sum((v * cb.form(a, g) for g, v in cb.bracket(b, c)), Fraction(0))
        if lhs != rhs:
            bad.append((a, b, c))
    return bad


def structure_report(cb: ChevalleyBasis) -> dict:
    checks = {
        "antisymmetry": antisymmetry_violations(cb),
        "jacobi": jacobi_violations(cb),
        "contravariance": contravariance_violations(cb),
        "invariant_form": invariance_violations(cb),
    }
    return {"algebra": cb.rs.name, "dim": cb.dim,
            "checks": {k: {"violations": len(v), "ok": not v} for k, v in checks.items()},
            "ok": not any(checks.values())}


def corrupt_structure(cb: ChevalleyBasis, a: int, b: int, factor=2) -> ChevalleyBasis:
    """Copy of cb with c_{a,b} and c_{b,a} multiplied by factor (negative control)."""
    st = dict(cb.structure)
    for x, y in ((a, b), (b, a)):
        st[(x, y)] = tuple((g, v * factor) for g, v in st.get((x, y), ()))
    return replace(cb, structure=st)


# --- operator identities on the complex ------------------------------------------

@dataclass(frozen=True)
class SuiteConfig:
    mode_max: int = 1  # |n| for single-current identities
    bracket_max: int = 2  # |m|, |n| for the bracket relations of the dressed currents


def _dressable(c: BrstComplex) -> list[int]:
    """Labels a in the nilpotent part of the side plus the Cartan part."""
    return list(c.side.nilpotent_roots(c.cb)) + list(c.cb.cartan_indices)


def _sum(ops: list[Op], parity: int) -> Op:
    if not ops:
        return zero_op(parity)
    total = ops[0]
    for o in ops[1:]:
        total = total + o
    return total


def _merge(name: str, results: list[IdentityResult]) -> IdentityResult:
    out = IdentityResult(name)
    for r in results:
        out.checked += r.checked
        out.skipped += r.skipped
        out.violations.extend(r.violations)
    return out


def character_commutator_rhs(c: BrstComplex, a: int, n: int) -> Op:
    """[chi, Ĵ_a(n)] = sum over chi fermions psi_{-g}(m) of c_{a,b}^g psi_{-b}(n + m)."""
    cb = c.cb
    nil = set(c.side.nilpotent_roots(cb))
    ops = []
    for fa, fm in c.character_modes:
        g = cb.opposite[fa]
        for b in sorted(nil):
            for g2, v in cb.bracket(a, b):
                if g2 == g:
                    ops.append(c.psi(cb.opposite[b], n + fm).scale(v))
    return _sum(ops, 1)


def tail_constant(c: BrstComplex, alpha: int):
    """k_alpha = kappa - h^vee - sum_{b,g in nil} c_{alpha,b}^g c_{-alpha,-b}^{-g}."""
    cb = c.cb
    nil = list(c.side.nilpotent_roots(cb))
    op = cb.opposite
    total = Fraction(0)
    for b in nil:
        for g, v in cb.bracket(alpha, b):
            if g in nil:
                w = dict(cb.bracket(op[alpha], op[b])).get(op[g], 0)
                total += v * w
    return simplify(c.kappa - c.rs.dual_coxeter_number - total)


def tail_rhs(c: BrstComplex, alpha: int, n: int) -> Op:
    """sum_{b in nil, e in Cartan or opposite part} c_{b,-alpha}^e :psi_{-b}(k) Ĵ_e(n-k): - n k_alpha psi_{-alpha}(n).

    Ĵ_e for e in the opposite nilpotent part is the transposed dressing. In the
    normal ordered product psi stands left when it is a creator, right otherwise.
    """
    cb, fs = c.cb, c.fock
    nil = list(c.side.nilpotent_roots(cb))
    opp_side = c.side.flipped()
    opp = set(opp_side.nilpotent_roots(cb))
    malpha = cb.opposite[alpha]
    terms = [(b, e, v) for b in nil for e, v in cb.bracket(b, malpha) if e in opp or cb.is_cartan(e)]
    k_alpha = tail_constant(c, alpha)
    last = c.psi(malpha, n).scale(simplify(-n * k_alpha))

    def fn(key):
        out = last.fn(key)
        bound = key[0][0] + abs(n) + 2
        for b, e, v in terms:
            mb = cb.opposite[b]
            for k in range(-bound, bound + 1):
                p, j = c.psi(mb, k), c.dressed_current(e, n - k, side=opp_side)
                vec = p(j.fn(key)) if fs.is_creator((mb, k)) else j(p.fn(key))
                axpy(out, v, vec)
        return out
    return Op(fn, 1, f"tail({alpha},{n})")


def degree_count(c: BrstComplex) -> Op:
    """D̂ by direct mode count: lam.d minus the total delta-depth."""
    d0 = c.module.lam.d
    return Op(lambda key: {key: simplify(d0 - key[0][0])} if simplify(d0 - key[0][0]) else {}, 0, "Dcount")


def operator_identities(c: BrstComplex, weights: list[Depth] | None = None,
                        cfg: SuiteConfig = SuiteConfig()) -> list[IdentityResult]:
    cb = c.cb
    ws = c.weights() if weights is None else list(weights)
    dst, chi, d = c.standard_differential(), c.character_term(), c.differential()
    nil = list(c.side.nilpotent_roots(cb))
    modes = range(-cfg.mode_max, cfg.mode_max + 1)
    out = [
        check_identity(c, "differential squares to zero", d @ d, zero_op(), ws),
        check_identity(c, "standard part squares to zero", dst @ dst, zero_op(), ws),
        check_identity(c, "character term squares to zero", chi @ chi, zero_op(), ws),
        check_identity(c, "standard part anticommutes with character term", supercommutator(dst, chi), zero_op(1), ws),
    ]
    out.append(_merge("ghost anticommutator is the dressed current", [
        check_identity(c, "", supercommutator(dst, c.psi(a, n)), c.dressed_current(a, n), ws)
        for a in nil for n in modes]))
    out.append(_merge("dressed currents commute with the standard part", [
        check_identity(c, "", supercommutator(dst, c.dressed_current(a, n)), zero_op(), ws)
        for a in _dressable(c) for n in modes]))
    out.append(_merge("character term commutes with nilpotent dressed currents", [
        check_identity(c, "", supercommutator(chi, c.dressed_current(a, n)), zero_op(1), ws)
        for a in nil for n in modes]))
    out.append(_merge("character term on Cartan dressed currents", [
        check_identity(c, "", supercommutator(chi, c.dressed_current(a, n)), character_commutator_rhs(c, a, n), ws)
        for a in cb.cartan_indices for n in modes]))
    bm = range(-cfg.bracket_max, cfg.bracket_max + 1)
    res = []
    labels = _dressable(c)
    for a, b in product(labels, repeat=2):
        if b < a:
            continue
        for m, n in product(bm, repeat=2):
            rhs = [c.dressed_current(g, m + n).scale(v) for g, v in cb.bracket(a, b)]
            cen = simplify(m * cb.form(a, b) * c.kappa) if m + n == 0 else 0
            if cen:
                rhs.append(c.scalar(cen))
            res.append(check_identity(c, "", supercommutator(c.dressed_current(a, m), c.dressed_current(b, n)),
                                      _sum(rhs, 0), ws))
    out.append(_merge("dressed current brackets at level kappa", res))
    out.append(_merge("dressed current tail constant", [
        check_identity(c, "", supercommutator(dst, c.dressed_current(cb.opposite[a], n, side=c.side.flipped())),
                       tail_rhs(c, a, n), ws)
        for a in nil for n in modes]))
    out.append(check_identity(c, "mode count operator", c.mode_count_operator(), degree_count(c), ws))

    def eig(key):
        e = c.eigenvalue(key[0])
        return {key: e} if e else {}
    out.append(check_identity(c, "degree operator eigenvalues", c.degree_operator(), Op(eig, 0), ws))
    return out


def suite_ok(results: list[IdentityResult]) -> bool:
    return all(r.ok for r in results)
