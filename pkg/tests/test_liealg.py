from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qdslab.checks import (contravariance_violations, corrupt_structure, invariance_violations,
                           jacobi_violations, structure_report)
from qdslab.liealg import (SUPPORTED, UnsupportedAlgebra, build_root_system,
                           chevalley_structure_constants, height, neg, parse_type, root_name,
                           weyl_act)

# Cartan matrices a_ij = <alpha_i^vee, alpha_j>, long root first for B2, short first for C2
CARTAN = {
    ("A", 1): [[2]],
    ("A", 2): [[2, -1], [-1, 2]],
    ("A", 3): [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    ("B", 2): [[2, -1], [-2, 2]],
    ("C", 2): [[2, -2], [-1, 2]],
}
# (positive roots, Coxeter number, dual Coxeter number, highest root, |W|)
DATA = {
    ("A", 1): (1, 2, 2, (1,), 2),
    ("A", 2): (3, 3, 3, (1, 1), 6),
    ("A", 3): (6, 4, 4, (1, 1, 1), 24),
    ("B", 2): (4, 4, 3, (1, 2), 8),
    ("C", 2): (4, 4, 3, (2, 1), 8),
}


@pytest.fixture(scope="module", params=SUPPORTED, ids=lambda t: f"{t[0]}{t[1]}")
def algebra(request):
    rs = build_root_system(*request.param)
    return rs, chevalley_structure_constants(rs)


def test_cartan_matrix(algebra):
    rs, _ = algebra
    cm = [list(r) for r in rs.cartan]
    assert cm == CARTAN[(rs.type, rs.rank)]


def test_root_data(algebra):
    rs, cb = algebra
    npos, h, hv, theta, order = DATA[(rs.type, rs.rank)]
    assert len(rs.positive_roots) == npos
    assert rs.coxeter_number == h and rs.dual_coxeter_number == hv
    assert rs.theta == theta and rs.norm2(rs.theta) == 2
    assert len(rs.longest_word) == npos  # length of w0 = number of positive roots
    assert cb.dim == rs.rank + 2 * npos
    # |W| through the orbit-stabilizer count of a regular element
    orbit = {weyl_act(rs, (), rs.rho, coords="fund")}
    frontier = list(orbit)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                w = weyl_act(rs, (i,), v, coords="fund")
                if w not in orbit:
                    orbit.add(w)
                    nxt.append(w)
        frontier = nxt
    assert len(orbit) == order


def test_rho_check_a3():
    rs = build_root_system("A", 3)
    assert rs.rho_check == (Fraction(3, 2), 2, Fraction(3, 2))


def test_longest_word_negates_positive_roots(algebra):
    rs, _ = algebra
    for r in rs.positive_roots:
        assert neg(tuple(weyl_act(rs, rs.longest_word, r))) in rs.positive_roots


@given(st.data())
def test_weyl_action_preserves_form(data):
    typ = data.draw(st.sampled_from(SUPPORTED))
    rs = build_root_system(*typ)
    word = tuple(data.draw(st.lists(st.integers(0, rs.rank - 1), max_size=6)))
    a = tuple(data.draw(st.lists(st.integers(-4, 4), min_size=rs.rank, max_size=rs.rank)))
    b = tuple(data.draw(st.lists(st.integers(-4, 4), min_size=rs.rank, max_size=rs.rank)))
    wa, wb = weyl_act(rs, word, a), weyl_act(rs, word, b)
    assert rs.form(wa, wb) == rs.form(a, b)
    # simple reflections are involutions
    for i in range(rs.rank):
        assert tuple(weyl_act(rs, (i, i), a)) == a


def test_structure_constants_are_exact(algebra):
    rs, cb = algebra
    rep = structure_report(cb)
    assert rep["ok"], rep


def test_chevalley_normalization(algebra):
    rs, cb = algebra
    for a in list(cb.positive_indices) + list(cb.negative_indices):
        assert cb.form(a, cb.opposite[a]) == 1
        # [J_alpha, J_beta] lands on the root alpha + beta
        for b in list(cb.positive_indices) + list(cb.negative_indices):
            for g, _ in cb.bracket(a, b):
                s = tuple(x + y for x, y in zip(cb.root_of[a], cb.root_of[b]))
                assert cb.root_of[g] == s


def test_transpose_model(algebra):
    _, cb = algebra
    for a, m in enumerate(cb.matrices):
        t = [list(r) for r in zip(*m)]
        assert t == cb.matrices[cb.opposite[a]]


def test_corruption_is_detected():
    rs = build_root_system("A", 2)
    cb = chevalley_structure_constants(rs)
    a, b = cb.simple_index(0), cb.simple_index(1)
    bad = corrupt_structure(cb, a, b, 3)
    assert jacobi_violations(bad)
    assert contravariance_violations(bad) or invariance_violations(bad)


def test_unsupported_and_parsing():
    with pytest.raises(UnsupportedAlgebra):
        build_root_system("G", 2)
    with pytest.raises(UnsupportedAlgebra):
        parse_type("A")
    assert parse_type("b2") == ("B", 2)


def test_root_names():
    assert root_name((1, 1)) == "α1+α2"
    assert root_name((-1, 0)) == "-α1"
    assert root_name((-1, -2)) == "-(α1+2α2)"
    assert height((1, 2)) == 3


@given(st.data())
def test_weyl_action_agrees_across_coordinates(data):
    typ = data.draw(st.sampled_from(SUPPORTED))
    rs = build_root_system(*typ)
    word = tuple(data.draw(st.lists(st.integers(0, rs.rank - 1), max_size=6)))
    beta = tuple(data.draw(st.lists(st.integers(-4, 4), min_size=rs.rank, max_size=rs.rank)))
    via_fund = weyl_act(rs, word, rs.root_to_fund(beta), coords="fund")
    assert tuple(via_fund) == tuple(rs.root_to_fund(weyl_act(rs, word, beta)))
