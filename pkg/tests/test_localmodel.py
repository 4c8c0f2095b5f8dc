import random
from fractions import Fraction
from itertools import product

import pytest

from parahecke import bernstein, localmodel, weyl
from parahecke.algebra import linalg
from parahecke.errors import ConventionError, ShapeError

F = Fraction


def _m(rows):
    return [[F(x) for x in r] for r in rows]


def test_valuation_helpers():
    assert localmodel.val(F(18), 3) == 2
    assert localmodel.val(F(1, 9), 3) == -2
    assert localmodel.reduce_mod(F(10), 1, 3) == 1
    assert localmodel.reduce_mod(F(1, 3), 1, 3) == F(1, 3)
    assert localmodel.primitive_root(7) == 3


def test_membership_examples():
    iw = localmodel.ParahoricSpec.iwahori(2, 7)
    assert localmodel.membership(_m([[1, 0], [0, 1]]), iw)
    assert not localmodel.membership(_m([[0, 1], [1, 0]]), iw)
    assert localmodel.membership(_m([[0, 1], [1, 0]]), localmodel.ParahoricSpec((2,), 7))
    p1 = localmodel.ParahoricSpec((1, 1), 7, "parahoric_1", 3)
    # 3 is not a cube in F_7 (the cubes are 1 and 6)
    assert not localmodel.membership(_m([[1, 0], [0, 3]]), p1)
    assert localmodel.membership(_m([[1, 0], [0, 6]]), p1)


def test_parahoric_1_validation():
    with pytest.raises(ConventionError):
        localmodel.ParahoricSpec((1, 1), 5, "parahoric_1", 3)
    with pytest.raises(ConventionError):
        localmodel.ParahoricSpec((1, 1), 6)


def test_bruhat_examples():
    ell = 5
    g = _m([[ell, 0], [1, 1]])
    b, w, k = localmodel.bruhat_iwahori(g, ell)
    assert b == _m([[-ell, ell], [0, 1]]) and w == (2, 1) and k == _m([[1, 1], [0, 1]])
    up = _m([[2, 3], [0, 7]])
    b, w, k = localmodel.bruhat_iwahori(up, ell)
    assert w == (1, 2) and linalg.mat_mul(b, k) == up
    b, w, k = localmodel.bruhat_iwahori(_m([[0, 1], [1, 0]]), ell)
    assert w == (2, 1) and b == _m([[1, 0], [0, 1]]) and k == _m([[1, 0], [0, 1]])


def test_bruhat_recomposition_500():
    rng = random.Random(500)
    done = 0
    while done < 500:
        n = rng.randint(2, 4)
        ell = rng.choice([2, 3, 5, 7])
        g = _m([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
        d = linalg.det(g)
        if d == 0 or localmodel.val(d, ell) != 0:
            continue
        b, w, k = localmodel.bruhat_iwahori(g, ell)
        assert all(b[i][j] == 0 for i in range(n) for j in range(i))
        assert localmodel.membership(k, localmodel.ParahoricSpec.iwahori(n, ell))
        assert linalg.mat_mul(linalg.mat_mul(b, weyl.perm_matrix(w, F(1), F(0))), k) == g
        done += 1


def test_enumerate_examples():
    iw = localmodel.ParahoricSpec.iwahori(2, 3)
    reps = localmodel.enumerate_cosets((1, 0), iw)
    assert sorted(reps) == sorted(_m([[3, s], [0, 1]]) for s in range(3))
    assert localmodel.enumerate_cosets((0, 0), iw) == [_m([[1, 0], [0, 1]])]
    assert len(localmodel.enumerate_cosets((1, 0), localmodel.ParahoricSpec((2,), 3))) == 4
    with pytest.raises(ShapeError):
        localmodel.enumerate_cosets((0, 1), iw)
    assert len(localmodel.enumerate_cosets((0, 1), iw, require_dominant=False)) == 3


def test_distinctness_and_canonical_invariance():
    rng = random.Random(7)
    for mu, ell, m in [((1, 1), 3, (1, 0)), ((1, 1, 1), 3, (2, 1, 0)), ((2, 1), 5, (1, 1, 0)), ((1, 2), 3, (1, 0, 0))]:
        spec = localmodel.ParahoricSpec(mu, ell)
        reps = localmodel.enumerate_cosets(m, spec)
        assert len(reps) == localmodel.index_formula(m, spec)
        for i, a in enumerate(reps):
            ai = linalg.inverse(a)
            for b in reps[i + 1:]:
                assert not localmodel.membership(linalg.mat_mul(ai, b), spec)
        for a in reps[:5]:
            k = localmodel.random_iwahori(spec.n, ell, rng, spec=spec)
            assert localmodel.coset_key(linalg.mat_mul(a, k), spec) == localmodel.coset_key(a, spec)


def test_parahoric_1_cosets_are_distinct():
    spec = localmodel.ParahoricSpec((2, 1), 7, "parahoric_1", 3)
    reps = localmodel.enumerate_cosets((0, 0, 1), spec, require_dominant=False)
    assert len(reps) == 49
    for i, a in enumerate(reps):
        ai = linalg.inverse(a)
        for b in reps[i + 1:]:
            assert not localmodel.membership(linalg.mat_mul(ai, b), spec)


def _index_mod_ell2(m, spec):
    """[K : K cap m K m^-1] by exhaustive counting of both groups mod ell^2 (n = 2)."""
    n, ell = spec.n, spec.ell
    mod = ell * ell
    mk = [[spec.c(i, j) + max(0, m[i] - m[j]) for j in range(n)] for i in range(n)]
    cK = cH = 0
    for vals in product(range(mod), repeat=n * n):
        M = [vals[i * n:(i + 1) * n] for i in range(n)]
        if (M[0][0] * M[1][1] - M[0][1] * M[1][0]) % ell == 0:
            continue
        vs = [[localmodel.val(F(M[i][j]), ell) if M[i][j] else 2 for j in range(n)] for i in range(n)]
        if all(vs[i][j] >= spec.c(i, j) for i in range(n) for j in range(n)):
            cK += 1
            if all(vs[i][j] >= min(2, mk[i][j]) for i in range(n) for j in range(n)):
                cH += 1
    return cK // cH


@pytest.mark.parametrize("mu,ell,m", [((1, 1), 3, (1, 0)), ((2,), 3, (1, 0)), ((1, 1), 5, (1, 0)), ((2,), 5, (1, 0))])
def test_index_matches_exhaustive_count(mu, ell, m):
    spec = localmodel.ParahoricSpec(mu, ell)
    assert len(localmodel.enumerate_cosets(m, spec)) == _index_mod_ell2(m, spec) == localmodel.index_formula(m, spec)


def test_pattern_group_order_matches_brute_force():
    ell = 3
    for mu in [(1, 1, 1), (2, 1), (1, 2), (3,)]:
        spec = localmodel.ParahoricSpec(mu, ell)
        allowed = [[spec.c(i, j) == 0 for j in range(3)] for i in range(3)]
        assert localmodel.pattern_group_order(allowed, ell) == localmodel.brute_pattern_order(allowed, ell)


def test_convolution_examples():
    spec = localmodel.ParahoricSpec.iwahori(2, 3)
    one = ((0, 0), (1, 2))
    s = ((0, 0), (2, 1))
    reps = lambda x: localmodel.double_coset_reps(x, spec)
    assert localmodel.convolve_indicators(reps(s), reps(s), spec) == {s: 2, one: 3}
    x = ((1, 0), (2, 1))
    assert localmodel.convolve_indicators(reps(one), reps(x), spec) == {x: 1}
    t1, t2 = ((1, 0), (1, 2)), ((2, 0), (1, 2))
    # dominant translations multiply like theta
    assert localmodel.convolve_indicators(reps(t1), reps(t1), spec) == {t2: 1}
    alg = bernstein.HeckeAlgebra(2, F(3))
    assert alg.to_im(alg.theta((1, 0)) * alg.theta((1, 0))) == {t2: 1}


def test_double_coset_labels():
    rng = random.Random(3)
    ell = 3
    spec = localmodel.ParahoricSpec.iwahori(3, ell)
    for x in [((1, 0, 0), (1, 2, 3)), ((0, 1, -1), (2, 3, 1)), ((2, 0, 0), (3, 2, 1))]:
        g = localmodel.monomial(x, ell)
        k1 = localmodel.random_iwahori(3, ell, rng)
        k2 = localmodel.random_iwahori(3, ell, rng)
        assert localmodel.iwahori_double_coset(linalg.mat_mul(linalg.mat_mul(k1, g), k2), ell) == x
