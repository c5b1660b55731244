from fractions import Fraction

import pytest

from qdslab.affine import Window, depth_sub, in_positive_cone, make_weight
from qdslab.brst import build_complex, build_transposed_complex, dual_pairing_check
from qdslab.checks import corrupt_structure, operator_identities, suite_ok
from qdslab.modules import AffineAlgebra, DualVerma, Verma, build_verma
from qdslab.qseries import verma_character
from qdslab.scalars import KAPPA, simplify

TOP = (0, 0)


@pytest.fixture(scope="module")
def verma_a1(a1):
    rs, cb = a1
    return build_verma(cb, make_weight(rs, [Fraction(2, 7)], KAPPA), Window(2, 4))


def _clean(vec):
    return {k: v for k, v in vec.items() if simplify(v) != 0}


@pytest.mark.parametrize("side", ["+", "-"])
def test_top_vector_is_closed(verma_a1, side):
    c = build_complex(verma_a1, side)
    top = (TOP, (), ())
    assert _clean(c.standard_differential().fn(top)) == {}
    assert _clean(c.character_term().fn(top)) == {}


def test_differential_on_one_ghost(verma_a1):
    c = build_complex(verma_a1, "+")
    e = c.cb.simple_index(0)
    key = ((1, -1), (), ((e, -1),))
    out = _clean(c.standard_differential().fn(key))
    assert out == {((1, -1), ((e, -1),), ()): 1}


@pytest.mark.parametrize("side", ["+", "-"])
def test_differential_raises_ghost_by_one(verma_a1, side):
    c = build_complex(verma_a1, side)
    d = c.differential()
    for beta in c.weights():
        if beta[0] > 1:
            continue
        for k in c.basis(beta):
            for t in _clean(d.fn(k)):
                assert c.ghost(t) == c.ghost(k) + 1


def test_complex_dims_are_a_convolution(a1, verma_a1):
    rs, _ = a1
    c = build_complex(verma_a1, "-")
    ch = verma_character(rs, verma_a1.lam, verma_a1.window).coeffs
    for beta in c.weights():
        total = 0
        for d, states in c.fock.states_up_to(beta[0]).items():
            rest = depth_sub(beta, d)
            if in_positive_cone(rs, rest):
                total += ch.get(rest, 0) * len(states)
        assert len(c.basis(beta)) == total, beta


@pytest.mark.parametrize("side", ["+", "-"])
def test_degree_operator_is_diagonal(verma_a1, side):
    c = build_complex(verma_a1, side)
    dw = c.degree_operator()
    for beta in c.weights():
        if beta[0] > 1:
            continue
        ev = c.eigenvalue(beta)
        for k in c.basis(beta):
            assert _clean(dw.fn(k)) == _clean({k: ev})


@pytest.mark.parametrize("side", ["+", "-"])
def test_small_identity_suite(a1, side):
    rs, cb = a1
    mod = build_verma(cb, make_weight(rs, [Fraction(1, 3)], KAPPA), Window(1, 3))
    res = operator_identities(build_complex(mod, side))
    assert suite_ok(res), [(r.name, len(r.violations)) for r in res if not r.ok]


def test_identity_suite_detects_corruption(a1):
    rs, cb = a1
    bad = corrupt_structure(cb, cb.simple_index(0), cb.opposite[cb.simple_index(0)], 2)
    mod = Verma(AffineAlgebra(bad, KAPPA), make_weight(rs, [Fraction(1, 3)], KAPPA), Window(1, 3))
    res = {r.name: r for r in operator_identities(build_complex(mod, "+"))}
    assert not res["differential squares to zero"].ok


@pytest.mark.parametrize("side", ["+", "-"])
def test_duality_pairing(a1, side):
    rs, cb = a1
    alg = AffineAlgebra(cb, KAPPA)
    lam = make_weight(rs, [Fraction(3, 5)], KAPPA)
    w = Window(1, 3)
    rep = dual_pairing_check(build_complex(DualVerma(alg, lam, w), side),
                             build_transposed_complex(Verma(alg, lam, w), side))
    assert rep.ok and rep.checked > 0
