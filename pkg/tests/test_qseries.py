from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy.functions.combinatorial.numbers import partition

from qdslab.affine import Window, make_weight
from qdslab.liealg import build_root_system, chevalley_structure_constants
from qdslab.modules import AffineAlgebra, enumerate_pbw
from qdslab.qseries import (Character, NotVermaSpanned, QSeries, colored_partitions, h0_character,
                            kostant_partitions, verma_character, verma_multiplicities)
from qdslab.scalars import KAPPA


def _brute_colored(colors: int, n: int) -> int:
    # multisets of (part, color) summing to n
    items = [(p, c) for p in range(1, n + 1) for c in range(colors)]

    def rec(i, rem):
        if rem == 0:
            return 1
        if i == len(items):
            return 0
        p = items[i][0]
        return sum(rec(i + 1, rem - m * p) for m in range(rem // p + 1))
    return rec(0, n)


def test_partition_numbers():
    assert colored_partitions(1, 12) == [int(partition(n)) for n in range(13)]


@pytest.mark.parametrize("colors", [2, 3])
def test_colored_partitions_bruteforce(colors):
    assert colored_partitions(colors, 7) == [_brute_colored(colors, n) for n in range(8)]


def test_verma_coefficients_start_1_1_2_3():
    rs = build_root_system("A", 1)
    ch = h0_character(rs, make_weight(rs, [Fraction(2, 7)], KAPPA), "-", 3)
    assert ch.coeffs == (1, 1, 2, 3)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=6), st.lists(st.integers(-3, 3), min_size=1, max_size=6))
def test_qseries_arithmetic(a, b):
    n = min(len(a), len(b))
    x, y = QSeries(0, tuple(a)), QSeries(0, tuple(b))
    assert (x + y - y).coeffs == tuple(a[:n])
    assert x.shift(1).coeffs[1:] == tuple(a[: len(a) - 1])


@pytest.mark.parametrize("typ, nt, nh", [(("A", 1), 3, 4), (("A", 2), 1, 3), (("B", 2), 1, 3)])
def test_kostant_partitions_match_pbw(typ, nt, nh):
    """Kostant partition counts against direct enumeration of ordered PBW monomials."""
    rs = build_root_system(*typ)
    alg = AffineAlgebra(chevalley_structure_constants(rs), KAPPA)
    lam = make_weight(rs, [0] * rs.rank, KAPPA)
    ch = verma_character(rs, lam, Window(nt, nh))
    assert ch.coeffs
    for beta, c in ch.coeffs.items():
        assert c == len(enumerate_pbw(alg, beta)), beta


def test_a1_small_kostant_values():
    rs = build_root_system("A", 1)
    parts = kostant_partitions(rs, 2, 8)
    assert parts[(0, 0)] == 1
    assert parts[(1, 0)] == 2  # delta; alpha + (-alpha + delta)
    assert parts[(1, 1)] == 3


def test_verma_multiplicities_of_a_verma_character():
    rs = build_root_system("A", 1)
    lam = make_weight(rs, [Fraction(1, 3)], KAPPA)
    ch = verma_character(rs, lam, Window(2, 4))
    mults = verma_multiplicities(rs, ch, list(ch.coeffs))
    assert {b: m for b, m in mults.items() if m} == {(0, 0): 1}
    # a sum of two shifted Verma characters is decomposed back
    sub = Character(lam, Window(2, 4), {b: c for b, c in ch.coeffs.items()})
    shifted = {}
    for b, c in ch.coeffs.items():
        t = (b[0], b[1] + 1)
        if Window(2, 4).contains(rs, t):
            shifted[t] = c
    both = sub + Character(lam, Window(2, 4), shifted)
    mults = verma_multiplicities(rs, both, list(both.coeffs))
    assert {b: m for b, m in mults.items() if m} == {(0, 0): 1, (0, 1): 1}
    with pytest.raises(NotVermaSpanned):
        verma_multiplicities(rs, ch, [(0, 1)])
