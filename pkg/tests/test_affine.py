from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qdslab.affine import (AffineRoot, Window, affine_reflection, condition_minus,
                           condition_minus_witnesses, condition_plus, condition_plus_witnesses,
                           dot_act, enumerate_principal_admissible, degree_eigenvalue_minus, degree_eigenvalue_plus, in_positive_cone,
                           integral_data, make_weight, pairing_coroot, plus_condition_set,
                           plus_condition_set_bruteforce, reflect, translation, weight_form)
from qdslab.liealg import SUPPORTED, build_root_system
from qdslab.scalars import KAPPA

SIZES = {("A", 1): 1, ("A", 2): 4, ("A", 3): 10, ("B", 2): 7, ("C", 2): 7}


@pytest.mark.parametrize("typ", SUPPORTED, ids=lambda t: f"{t[0]}{t[1]}")
def test_condition_set_formula_matches_bruteforce(typ):
    rs = build_root_system(*typ)
    formula = sorted(plus_condition_set(rs))
    brute = sorted(plus_condition_set_bruteforce(rs))
    assert formula == brute
    assert len(formula) == SIZES[typ]
    # size = sum of heights of the positive roots
    assert len(formula) == sum(sum(r) for r in rs.positive_roots)


def test_a1_condition_set():
    rs = build_root_system("A", 1)
    assert [str(b) for b in plus_condition_set(rs)] == ["-α1+δ"]


fin = st.fractions(min_value=-5, max_value=5, max_denominator=9)


@given(st.data())
def test_reflections(data):
    typ = data.draw(st.sampled_from(SUPPORTED))
    rs = build_root_system(*typ)
    lam = make_weight(rs, data.draw(st.lists(fin, min_size=rs.rank, max_size=rs.rank)),
                      data.draw(st.fractions(min_value=1, max_value=7, max_denominator=5)),
                      data.draw(fin))
    r = data.draw(st.sampled_from(rs.roots))
    alpha = AffineRoot(r, data.draw(st.integers(-3, 3)))
    w = affine_reflection(rs, alpha)
    once = w.act(rs, lam)
    # agrees with the direct formula, is an involution and preserves the form
    assert once == reflect(rs, alpha, lam)
    assert w.act(rs, once) == lam
    assert weight_form(rs, once, once) == weight_form(rs, lam, lam)


@given(st.data())
def test_dual_degree_eigenvalues(data):
    """degree_eigenvalue_plus(lam) = degree_eigenvalue_minus(t_{-rho^vee} o lam) for every weight."""
    typ = data.draw(st.sampled_from(SUPPORTED))
    rs = build_root_system(*typ)
    lam = make_weight(rs, data.draw(st.lists(fin, min_size=rs.rank, max_size=rs.rank)), KAPPA,
                      data.draw(fin))
    mu = tuple(-x for x in rs.rho_check)
    assert degree_eigenvalue_plus(rs, lam) == degree_eigenvalue_minus(rs, dot_act(rs, translation(rs, mu), lam))


def test_principal_admissible_a1():
    rs = build_root_system("A", 1)
    ws = enumerate_principal_admissible(rs, 2, 3)
    finite = sorted(a.weight.finite for a in ws)
    # lam_bar = 0 with mu_bar in {0, omega^vee}
    assert finite == [(Fraction(-2, 3),), (0,)]
    lam = [a for a in ws if a.mu_bar == (1,)][0].weight
    assert condition_minus(rs, lam) and condition_plus(rs, lam)
    with pytest.raises(ValueError):
        enumerate_principal_admissible(rs, 1, 3)


def test_integral_root_system_of_admissible_weight():
    rs = build_root_system("A", 1)
    lam = make_weight(rs, [Fraction(-2, 3)], Fraction(2, 3))
    data = integral_data(rs, lam)
    assert sorted(map(str, data.simple)) == ["-α1+2δ", "α1+δ"]
    for b in data.positive:
        v = pairing_coroot(rs, lam + make_weight(rs, [1], 0) + make_weight(rs, [0], 2), b)
        assert Fraction(v).denominator == 1


def test_condition_witnesses():
    rs = build_root_system("A", 1)
    dominant = make_weight(rs, [1], Fraction(3))
    assert [str(b) for b in condition_minus_witnesses(rs, dominant)] == ["α1"]
    generic = make_weight(rs, [2], KAPPA)
    assert condition_plus_witnesses(rs, generic) == []
    assert not condition_minus(rs, generic)


@given(st.integers(0, 4), st.integers(-8, 8))
def test_window_depths(nt, m):
    rs = build_root_system("A", 1)
    w = Window(nt, 5)
    depths = w.depths(rs)
    assert all(in_positive_cone(rs, b) and w.contains(rs, b) for b in depths)
    beta = (nt, m)
    assert (beta in depths) == (in_positive_cone(rs, beta) and abs(m) <= 5)
