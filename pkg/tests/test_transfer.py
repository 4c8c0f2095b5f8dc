from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parahecke import transfer
from parahecke.algebra.rings import GF
from parahecke.algebra.unipoly import UniPoly
from parahecke.errors import FactorError, ShapeError, UnitError

F = Fraction


def _roots(rs):
    return UniPoly.from_roots([F(r) for r in rs])


def test_dual_example():
    f = UniPoly([F(6), F(-5), F(1)])
    assert transfer.dual_poly(f) == UniPoly([F(1, 6), F(-5, 6), F(1)])
    assert transfer.dual_poly(f) == _roots([F(1, 2), F(1, 3)])
    d = transfer.dual_poly(transfer.CharPolyData(f, "vc", F(3)))
    assert isinstance(d, transfer.CharPolyData) and d.place == "vc" and d.poly == transfer.dual_poly(f)


def test_dual_needs_unit_constant_term():
    with pytest.raises(UnitError):
        transfer.dual_poly(UniPoly([F(0), F(1)]))
    G = GF(5)
    with pytest.raises(UnitError):
        transfer.perp_poly(UniPoly([G(0), G(1)]), G(2), 1)


def test_charpoly_data_validation():
    with pytest.raises(ShapeError):
        transfer.CharPolyData(UniPoly([F(1), F(2)]))
    with pytest.raises(ShapeError):
        transfer.CharPolyData(UniPoly([F(1), F(1)]), place="w")


def test_transfer_n1():
    q = F(5)
    T = transfer.transfer_poly(_roots([2]), _roots([3]), q, 1)
    assert T == _roots([2, F(5, 3)])


def test_transfer_q_one():
    T = transfer.transfer_poly(_roots([2, 3]), _roots([4, 7]), F(1), 2)
    assert T == _roots([2, 3, F(1, 4), F(1, 7)])


def test_transfer_degree_check():
    with pytest.raises(ShapeError):
        transfer.transfer_poly(_roots([2]), _roots([3, 4]), F(3), 2)


def test_svf_full_multiplicity():
    q, n, a = F(3), 2, F(2)
    Pv, Pc = _roots([a, a]), _roots([5, 7])
    T = transfer.transfer_poly(Pv, Pc, q, n)
    head, rest, tail = transfer.svf_factor(T, a, n, Pc, q)
    assert head == _roots([a, a]) and rest == UniPoly([F(1)])
    assert tail == _roots([F(27, 5), F(27, 7)])
    assert head * rest * tail == T


def test_svf_errors():
    q, n = F(3), 2
    Pv, Pc = _roots([2, 4]), _roots([5, 7])
    T = transfer.transfer_poly(Pv, Pc, q, n)
    with pytest.raises(FactorError):
        transfer.svf_factor(T, F(2), 0, Pc, q)
    with pytest.raises(FactorError):
        transfer.svf_factor(T, F(2), 3, Pc, q)
    with pytest.raises(FactorError):
        transfer.svf_factor(T, F(2), 2, Pc, q)
    with pytest.raises(FactorError):
        transfer.svf_factor(T, F(2), 1, _roots([5, 8]), q)
    with pytest.raises(ShapeError):
        transfer.svf_factor(Pv, F(2), 1, Pc, q)


def test_perp_self_dual_double_root():
    # beta = q^(2n-1)/beta when beta^2 = q^(2n-1): n = 1, q = 4, beta = 2
    q, n = F(4), 1
    Pc = _roots([2])
    assert transfer.perp_poly(Pc, q, n) == Pc
    Pv = _roots([2])
    D0 = transfer.claimed_d0(Pv, Pc, q, n)
    assert D0 == _roots([2, 2])
    assert transfer.perp_identity_check([transfer.PerpPair("double", Pv, Pc, D0)], q, n)


def test_transfer_over_finite_field():
    G = GF(13)
    q, n = G(3), 2
    Pv = UniPoly.from_roots([G(2), G(5)], G(1))
    Pc = UniPoly.from_roots([G(4), G(6)], G(1))
    Q = q ** 3
    expect = UniPoly.from_roots([G(2), G(5), Q / G(4), Q / G(6)], G(1))
    assert transfer.transfer_poly(Pv, Pc, q, n) == expect


nonzero = st.integers(-9, 9).filter(bool)


@settings(max_examples=500, deadline=None)
@given(st.lists(st.tuples(nonzero, st.integers(1, 5)), min_size=1, max_size=4))
def test_dual_is_an_involution(rs):
    f = _roots([F(a, b) for a, b in rs])
    assert transfer.dual_poly(transfer.dual_poly(f)) == f


@settings(max_examples=100, deadline=None)
@given(st.lists(nonzero, min_size=2, max_size=2), st.lists(nonzero, min_size=2, max_size=2), st.integers(2, 7))
def test_perp_identity_random(rv, rc, qq):
    q, n = F(qq), 2
    Pv, Pc = _roots(rv), _roots(rc)
    assert transfer.perp_poly(Pc, q, n) == _roots([q ** 3 / F(b) for b in rc])
    D0 = transfer.claimed_d0(Pv, Pc, q, n)
    assert transfer.perp_identity_check([transfer.PerpPair("r", Pv, Pc, D0)], q, n)
