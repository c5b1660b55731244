import pytest
import sympy as sp
from hypothesis import given, strategies as st

from qdslab.fock import ConfigError, FockSpace, SideConfig, fock_pairing, format_state

fermion_modes = st.integers(-2, 2)


def _axpy(out, c, r):
    if r is not None:
        out[r[1]] = out.get(r[1], 0) + c * r[0]


@st.composite
def fock_case(draw, cb):
    fs = FockSpace(cb)
    roots = list(range(cb.rank, cb.dim))
    f = (draw(st.sampled_from(roots)), draw(fermion_modes))
    g = (draw(st.sampled_from(roots)), draw(fermion_modes))
    states = [s for bucket in fs.states_up_to(2).values() for s in bucket]
    return fs, f, g, draw(st.sampled_from(states))


@given(st.data())
def test_canonical_anticommutation(a2, data):
    _, cb = a2
    fs, f, g, s = data.draw(fock_case(cb))
    out: dict = {}
    _axpy(out, 1, fs.apply_word([f, g], s))
    _axpy(out, 1, fs.apply_word([g, f], s))
    out = {k: v for k, v in out.items() if v}
    expected = {s: 1} if g == fs.partner(f) else {}
    assert out == expected


@given(st.data())
def test_normal_ordering_is_antisymmetric(a1, data):
    _, cb = a1
    fs, f, g, s = data.draw(fock_case(cb))
    ab = fs.normal_ordered_pair(f, g, s)
    ba = fs.normal_ordered_pair(g, f, s)
    keys = set(ab) | set(ba)
    assert all(ab.get(k, 0) == -ba.get(k, 0) for k in keys)


@given(st.data())
def test_charge_moves_by_one(a2, data):
    _, cb = a2
    fs, f, _, s = data.draw(fock_case(cb))
    side = SideConfig(data.draw(st.sampled_from("+-")))
    r = fs.apply(f, s)
    if r is not None:
        assert abs(fs.charge(r[1], side) - fs.charge(s, side)) == 1
        assert fs.charge(r[1], side) + fs.charge(r[1], side.flipped()) == 0


def test_vacuum_and_pauli(a1):
    _, cb = a1
    fs = FockSpace(cb)
    e = cb.simple_index(0)
    f = cb.opposite[e]
    assert fs.apply((e, 0), ()) is None  # psi_alpha(0) kills the vacuum
    sign, s = fs.apply((f, 0), ())
    assert sign == 1 and fs.apply((f, 0), s) is None
    assert format_state(cb, s) == "ψ_{-α1}(0)|0⟩"


def test_state_counts_match_product_formula(a1):
    """Generating function prod (1 + z) prod_{n>=1} (1 + q^n z)(1 + q^n / z) for sl2."""
    _, cb = a1
    q, z = sp.symbols("q z")
    kmax = 4
    gen = 1 + z
    for n in range(1, kmax + 1):
        gen *= (1 + q**n * z) * (1 + q**n / z)
    poly = sp.expand(gen)
    fs = FockSpace(cb)
    buckets = fs.states_up_to(kmax)
    for k in range(kmax + 1):
        for m in range(-kmax - 1, kmax + 2):
            want = poly.coeff(q, k).coeff(z, m) if k else sp.expand(poly.subs(q, 0)).coeff(z, m)
            assert len(buckets.get((k, m), [])) == int(want), (k, m)


def test_states_are_in_canonical_order(a2):
    _, cb = a2
    fs = FockSpace(cb)
    for bucket in fs.states_up_to(2).values():
        for s in bucket:
            assert fs.apply_word(list(s), ()) == (1, s)


def test_side_validation():
    with pytest.raises(ConfigError):
        SideConfig("0")


def test_anticommutation_exhaustive_a1(a1):
    _, cb = a1
    fs = FockSpace(cb)
    fermions = [(a, n) for a in range(cb.rank, cb.dim) for n in range(-4, 5)]
    states = [s for bucket in fs.states_up_to(3).values() for s in bucket]
    for f in fermions:
        for g in fermions:
            for s in states:
                out: dict = {}
                _axpy(out, 1, fs.apply_word([f, g], s))
                _axpy(out, 1, fs.apply_word([g, f], s))
                out = {k: v for k, v in out.items() if v}
                assert out == ({s: 1} if g == fs.partner(f) else {}), (f, g, s)


def test_pairing_adjointness(a2):
    """<psi u, v> = <u, psi^t v> with psi_a(n)^t = psi_{-a}(-n), on a grid of states."""
    _, cb = a2
    fs = FockSpace(cb)
    states = [s for bucket in fs.states_up_to(2).values() for s in bucket]
    index = set(states)
    for a in range(cb.rank, cb.dim):
        for n in range(-2, 3):
            t = fs.partner((a, n))
            for u in states:
                r = fs.apply((a, n), u)
                if r is None or r[1] not in index:
                    continue
                back = fs.apply(t, r[1])
                assert back is not None and back[1] == u and back[0] == r[0]


def test_debug_printer(a1):
    _, cb = a1
    fs = FockSpace(cb)
    e, f = cb.simple_index(0), cb.opposite[cb.simple_index(0)]
    _, s = fs.apply_word([(f, 0), (e, -2)], ())
    assert format_state(cb, s) == "ψ_{-α1}(0)ψ_{α1}(-2)|0⟩"
    assert fock_pairing(s, s) == 1 and fock_pairing(s, ()) == 0
