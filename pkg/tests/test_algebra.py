from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parahecke.algebra import linalg
from parahecke.algebra.laurent import LaurentPoly, SymPoly
from parahecke.algebra.rings import (
    GF, QQ, FiniteField, ModRing, QuadField, TruncRing, ring_from_spec,
)
from parahecke.algebra.unipoly import UniPoly, bezout_cofactors, resultant, resultant_any, sylvester
from parahecke.errors import ConventionError, ShapeError, UnitError

RINGS = [GF(7), ModRing(3, 3), TruncRing(5, 3), FiniteField(3, 2), QuadField(3)]


def _elem(ring, data):
    if isinstance(ring, ModRing):
        return ring(data[0])
    if isinstance(ring, TruncRing):
        return ring([d % ring.p for d in data[: ring.k]])
    if isinstance(ring, FiniteField):
        return ring([d % ring.p for d in data[: ring.k]])
    return ring((Fraction(data[0], 1 + abs(data[1])), Fraction(data[2])))


triple = st.lists(st.integers(-50, 50), min_size=3, max_size=3)


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.name)
@settings(max_examples=60, deadline=None)
@given(a=triple, b=triple, c=triple)
def test_ring_axioms(ring, a, b, c):
    x, y, z = _elem(ring, a), _elem(ring, b), _elem(ring, c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == ring(0)
    if ring.is_unit(x):
        assert x * ring.inv(x) == ring(1)


def test_local_ring_structure():
    R = ModRing(3, 2)
    assert R.valuation(R(9 - 3)) == 1 and R.valuation(R(0)) >= R.k
    assert R.digit(R(7), 0) == 1 and R.digit(R(7), 1) == 2
    assert not R.is_unit(R(3))
    with pytest.raises(UnitError):
        R.inv(R(6))
    T = TruncRing(3, 3)
    t = T.uniformizer
    assert t * t * t == T(0) and t * t != T(0)


def test_gf9_generator():
    F9 = FiniteField(3, 2)
    g = F9.gen
    assert g * g == F9(-1)
    assert len(F9.units()) == 8
    assert all(u ** 8 == F9(1) for u in F9.units())


def test_quadratic_field_sqrt():
    K = QuadField(7)
    assert K.sqrt * K.sqrt == K(7)
    with pytest.raises(ConventionError):
        QuadField(9)


@pytest.mark.parametrize("spec,kind", [("GF(5)", ModRing), ("Z/27", ModRing), ("F5[t]/t^3", TruncRing),
                                       ("GF(3^2)", FiniteField), ("QQ(sqrt5)", QuadField)])
def test_ring_from_spec(spec, kind):
    R = ring_from_spec(spec)
    assert isinstance(R, kind)
    assert ring_from_spec("QQ") is QQ
    assert ring_from_spec("Z/27") == ModRing(3, 3)


def test_ring_from_spec_rejects():
    with pytest.raises(ConventionError):
        ring_from_spec("ZZ")


# linear algebra ---------------------------------------------------------------

small_mat = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
)


@settings(max_examples=80, deadline=None)
@given(small_mat)
def test_cayley_hamilton_and_det(rows):
    A = [[Fraction(x) for x in r] for r in rows]
    cp = linalg.charpoly(A)
    assert linalg.is_zero_matrix(linalg.poly_eval_matrix(cp, A))
    n = len(A)
    assert cp[-1] == 1 and cp[0] == (-1) ** n * linalg.det(A)


@settings(max_examples=80, deadline=None)
@given(small_mat)
def test_rank_nullity_over_gf5(rows):
    F = GF(5)
    A = [[F(x) for x in r] for r in rows]
    n = len(A)
    ker = linalg.nullspace(A)
    assert linalg.rank(A) + len(ker) == n
    for v in ker:
        assert all(not x for x in linalg.mat_vec(A, v))
    if linalg.det(A):
        assert linalg.mat_mul(A, linalg.inverse(A)) == linalg.identity(n, F(1))


def test_solve_inconsistent():
    A = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert linalg.solve(A, [Fraction(1), Fraction(2)]) is None
    assert linalg.solve(A, [Fraction(2), Fraction(2)]) is not None


def test_inverse_needs_unit_pivots():
    R = ModRing(3, 2)
    with pytest.raises(UnitError):
        linalg.inverse([[R(3), R(0)], [R(0), R(1)]])


# polynomials ------------------------------------------------------------------


def test_laurent_examples():
    X1, X2 = LaurentPoly.var(0, 2), LaurentPoly.var(1, 2)
    assert (X1 * X2 ** -1).substitute([Fraction(6), Fraction(3)]) == 2
    e2 = LaurentPoly.elementary(2, [0, 1, 2], 3)
    assert e2.substitute([Fraction(1), Fraction(2), Fraction(3)]) == 11
    assert X1 * X1 ** -1 == X1.one_like()


def test_laurent_exponent_bound():
    with pytest.raises(ShapeError):
        LaurentPoly.var(0, 1, power=65)


def test_sympoly_invariance():
    X = [LaurentPoly.var(i, 3) for i in range(3)]
    SymPoly(X[0] + X[1], (2, 1))
    with pytest.raises(ConventionError):
        SymPoly(X[0] + X[2], (2, 1))


def test_unipoly_matrix_eval():
    f = UniPoly([Fraction(6), Fraction(-5), Fraction(1)])
    A = [[Fraction(2), Fraction(1)], [Fraction(0), Fraction(3)]]
    assert linalg.is_zero_matrix(f.eval_matrix(A))


def test_resultant_examples():
    X1, X2 = LaurentPoly.var(0, 2), LaurentPoly.var(1, 2)
    one = X1.one_like()
    zero = one - one
    f = UniPoly([-X1, one], zero)
    g = UniPoly([-X2, one], zero)
    assert resultant(f, g) == X1 - X2
    assert not resultant(f, f)
    assert resultant(UniPoly([Fraction(1), 0, Fraction(1)]), UniPoly([Fraction(-2), Fraction(1)])) == 5
    with pytest.raises(ConventionError):
        resultant(UniPoly([Fraction(1), Fraction(2)]), UniPoly([Fraction(1), Fraction(1)]))


roots = st.lists(st.integers(-6, 6), min_size=1, max_size=3)


@settings(max_examples=80, deadline=None)
@given(roots, roots, roots)
def test_resultant_multiplicative_and_product_formula(a, b, c):
    for F in (QQ, GF(11)):
        one = F(1)
        fa = UniPoly.from_roots([F(x) for x in a], one)
        fb = UniPoly.from_roots([F(x) for x in b], one)
        fc = UniPoly.from_roots([F(x) for x in c], one)
        assert resultant(fa * fb, fc) == resultant(fa, fc) * resultant(fb, fc)
        prod = one
        for x in a:
            for y in c:
                prod = prod * (F(x) - F(y))
        assert resultant(fa, fc) == prod
        sign = (-1) ** (fa.degree * fc.degree)
        assert resultant(fa, fc) == sign * resultant(fc, fa)


def test_sylvester_shape_and_resultant_any():
    f = UniPoly([Fraction(1), Fraction(2)])
    g = UniPoly([Fraction(3), Fraction(0), Fraction(1)])
    S = sylvester(f, g)
    assert len(S) == 3 and all(len(r) == 3 for r in S)
    assert resultant_any(f, g) == linalg.det(S)


def test_bezout_cofactors_linear():
    X1, X2 = LaurentPoly.var(0, 2), LaurentPoly.var(1, 2)
    one = X1.one_like()
    zero = one - one
    P = [UniPoly([-X1, one], zero), UniPoly([-X2, one], zero)]
    Q = bezout_cofactors(P, X1 - X2)
    assert Q[0] == UniPoly([one], zero) and Q[1] == UniPoly([-one], zero)
