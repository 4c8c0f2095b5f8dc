"""The twelve acceptance criteria, each at its stated tolerance and time budget.

Every criterion records one PASS/FAIL line; ``conftest.py`` prints them in
the terminal summary and ``python3 tests/test_acceptance.py`` prints them
directly.
"""
from __future__ import annotations

import functools
import random
import sys
import time
from fractions import Fraction

from parahecke import bernstein, blocklift, localmodel, pseries, specproj, transfer, weyl
from parahecke.algebra import linalg
from parahecke.algebra.rings import GF, FiniteField, ModRing, QuadField
from parahecke.algebra.unipoly import UniPoly, resultant

RESULTS: dict[int, str] = {}


def criterion(number: int, title: str, budget: float | None):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*a, **kw):
            t0 = time.perf_counter()
            status, detail = "FAIL", ""
            try:
                fn(*a, **kw)
                elapsed = time.perf_counter() - t0
                if budget is not None and elapsed >= budget:
                    detail = f" (runtime {elapsed:.1f}s exceeds {budget:.0f}s)"
                    raise AssertionError(detail.strip())
                status = "PASS"
            except Exception as exc:
                detail = detail or f" ({type(exc).__name__}: {exc})"
                raise
            finally:
                elapsed = time.perf_counter() - t0
                RESULTS[number] = f"criterion {number:2d} {status}: {title} [{elapsed:.2f}s]{detail}"
        return wrapper
    return deco


# 1 -------------------------------------------------------------------------


def _g_im(i, n, ell, m):
    g = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        g[k][k] = Fraction(ell if k < i else 1)
    for k in range(i):
        for l in range(i, n):
            g[k][l] = Fraction(m[k][l - i])
    return g


def _all_m(i, n, ell):
    cells = i * (n - i)
    for idx in range(ell**cells):
        digits = [(idx // ell**c) % ell for c in range(cells)]
        yield [digits[r * (n - i):(r + 1) * (n - i)] for r in range(i)]


@criterion(1, "coset count law |Iw t_i Iw / Iw| = ell^(i(n-i))", 10)
def test_criterion_01_coset_count():
    for n in (2, 3):
        for ell in (3, 5, 7):
            spec = localmodel.ParahoricSpec.iwahori(n, ell)
            for i in range(1, n):
                m = tuple([1] * i + [0] * (n - i))
                reps = localmodel.enumerate_cosets(m, spec)
                keys = {localmodel.coset_key(g, spec) for g in reps}
                assert len(reps) == ell ** (i * (n - i)) == len(keys)
                family = {localmodel.coset_key(_g_im(i, n, ell, mm), spec) for mm in _all_m(i, n, ell)}
                assert family == keys


# 2 -------------------------------------------------------------------------


def _conv(a, b, spec):
    out = {}
    for x, c in a.items():
        for y, d in b.items():
            A = localmodel.double_coset_reps(x, spec)
            B = localmodel.double_coset_reps(y, spec)
            for z, e in localmodel.convolve_indicators(A, B, spec).items():
                out[z] = out.get(z, 0) + c * d * e
    return {k: v for k, v in out.items() if v}


@criterion(2, "convolution oracle equals Bernstein rewriting (n=2, ell=3)", 60)
def test_criterion_02_hecke_oracle():
    n, ell = 2, 3
    rng = random.Random(20)
    spec = localmodel.ParahoricSpec.iwahori(n, ell)
    alg = bernstein.HeckeAlgebra(n, Fraction(ell))
    s = ((0, 0), (2, 1))
    # [Iw s Iw]^2 = (q - 1)[Iw s Iw] + q[Iw]
    assert _conv({s: 1}, {s: 1}, spec) == {s: Fraction(2), ((0, 0), (1, 2)): Fraction(3)}
    assert _conv({s: 1}, {s: 1}, spec) == alg.to_im(alg.Ts(1) * alg.Ts(1))
    for _ in range(20):
        x = (tuple(rng.randint(-1, 1) for _ in range(n)), tuple(rng.sample(range(1, n + 1), n)))
        y = (tuple(rng.randint(-1, 1) for _ in range(n)), tuple(rng.sample(range(1, n + 1), n)))
        assert _conv({x: 1}, {y: 1}, spec) == alg.to_im(alg.im(x) * alg.im(y))
    for _ in range(20):
        lam = tuple(rng.randint(-2, 2) for _ in range(n))
        theta = alg.to_im(alg.theta(lam))
        assert _conv({s: 1}, theta, spec) == alg.to_im(alg.Ts(1) * alg.theta(lam))


# 3 -------------------------------------------------------------------------


@criterion(3, "parahoric idempotent commutes with theta orbit sums (n <= 3)", None)
def test_criterion_03_parahoric_commutation():
    rng = random.Random(3)
    for n in (1, 2, 3):
        alg = bernstein.HeckeAlgebra(n, Fraction(5))
        for mu in weyl.compositions(n):
            e = bernstein.parahoric_idem(alg, mu).e
            assert e * e == e
            for _ in range(10):
                lam = tuple(rng.randint(-2, 2) for _ in range(n))
                z = alg.orbit_sum(lam, mu)
                assert e * z == z * e


# 4 -------------------------------------------------------------------------


@criterion(4, "minimal double coset representatives biject with partition matrices (n <= 5)", 30)
def test_criterion_04_double_cosets():
    for n in range(1, 6):
        for Q in weyl.compositions(n):
            for P in weyl.compositions(n):
                reps = weyl.double_coset_reps(Q, P)
                mats = weyl.partition_matrices(Q, P)
                assert len(reps) == len(mats)
                images = {tuple(map(tuple, weyl.rep_to_matrix(w, Q, P))) for w in reps}
                assert images == {tuple(map(tuple, M)) for M in mats}
                for w in reps:
                    assert weyl.matrix_to_rep(weyl.rep_to_matrix(w, Q, P), Q, P) == w


# 5 -------------------------------------------------------------------------


def _random_split_matrix(F, rng, n):
    while True:
        sizes = []
        left = n
        while left:
            s = rng.randint(1, left)
            sizes.append(s)
            left -= s
        if len(sizes) < 2:
            continue
        blocks = [[[F(rng.randrange(F.p)) for _ in range(s)] for _ in range(s)] for s in sizes]
        factors = [UniPoly(linalg.charpoly(B)) for B in blocks]
        if any(not resultant(f, g) for i, f in enumerate(factors) for g in factors[i + 1:]):
            continue
        D = blocks[0]
        for B in blocks[1:]:
            D = linalg.block_diag(D, B)
        while True:
            P = [[F(rng.randrange(F.p)) for _ in range(n)] for _ in range(n)]
            if linalg.det(P):
                break
        return linalg.mat_mul(linalg.mat_mul(P, D), linalg.inverse(P)), factors


@criterion(5, "spectral projectors from phi(E_i / res) on 200 random matrices", 60)
def test_criterion_05_projectors():
    rng = random.Random(5)
    for trial in range(200):
        F = GF(rng.choice([5, 7, 11]))
        n = rng.randint(2, 4)
        A, factors = _random_split_matrix(F, rng, n)
        pis = specproj.projectors(A, factors)
        one, zero = F(1), F(0)
        I = linalg.identity(n, one)
        total = linalg.zeros(n, n, zero)
        for i, P in enumerate(pis):
            assert linalg.mat_mul(P, P) == P
            assert linalg.mat_mul(A, P) == linalg.mat_mul(P, A)
            for j, R in enumerate(pis):
                if i != j:
                    assert linalg.is_zero_matrix(linalg.mat_mul(P, R))
            img = linalg.column_space(P)
            assert linalg.same_span(img, specproj.generalized_eigenspace(A, factors[i]))
            assert len(img) == factors[i].degree
            total = linalg.mat_add(total, P)
        assert total == I


# 6 -------------------------------------------------------------------------


@criterion(6, "Bezout identity sum Q_i prod_{j != i} P_j = res_mu (n <= 4)", None)
def test_criterion_06_bezout():
    for n in range(1, 5):
        for mu in weyl.compositions(n):
            sd = specproj.build(mu, Fraction(3))
            acc = sd.E[0]
            for e in sd.E[1:]:
                acc = acc + e
            assert acc == UniPoly([sd.res_mu], sd.E[0].zero)
            for Qi, Pi in zip(sd.Q, sd.P):
                assert Qi.degree < Pi.degree


# 7 -------------------------------------------------------------------------


@criterion(7, "e_alpha is an idempotent onto the span of phi_w', w' in W' (n = 2, 3)", 60)
def test_criterion_07_e_alpha():
    F3 = GF(3)
    F9 = FiniteField(3, 2)
    g = F9.gen
    cases = [
        (F3, (F3(2), F3(1))),
        (F3, (F3(1), F3(2))),
        (F9, (F9(1), g, g + 1)),
        (F9, (F9(2), g, F9(1))),
        (F9, (g, g + 1, F9(2))),
    ]
    for ring, vals in cases:
        chi = pseries.PSeriesChar(vals, ring, 7)
        basis = sorted(bernstein.all_perms(chi.n))
        for alpha in vals:
            res = pseries.build_e_alpha(chi, alpha)
            assert linalg.mat_mul(res.matrix, res.matrix) == res.matrix
            coords = [basis.index(w) for w in res.W_prime]
            assert res.rank == len(res.W_prime) > 0
            assert pseries.image_is_coordinate_span(res.matrix, coords)


# 8 -------------------------------------------------------------------------


@criterion(8, "V^{i,j} joint spectra equal e_i(S_j) with the tabulated q-power (n <= 3)", 120)
def test_criterion_08_steinberg():
    for ell, samples in ((3, [(2,), (2, 5), (2, 5, 11)]), (5, [(3, 7)])):
        K = QuadField(ell)
        for vals in samples:
            chi = pseries.PSeriesChar(tuple(K(v) for v in vals), K, ell, True, K.sqrt)
            for mu in weyl.compositions(len(vals)):
                rep = pseries.steinberg_eigencheck(chi, mu, normalization="table")
                assert rep.ok, (vals, mu, rep.mismatches)
                assert all(t == 0 for t in rep.exponents.values())


# 9 -------------------------------------------------------------------------


@criterion(9, "block lifting over Z/p^k: X = 1 mod p, conjugates block-diagonal (100 problems)", 30)
def test_criterion_09_block_lift():
    rng = random.Random(9)
    for trial in range(100):
        p, k, n = rng.choice([3, 5]), rng.randint(1, 4), rng.randint(2, 4)
        n1 = rng.randint(1, n - 1)
        ring = ModRing(p, k)
        mode = "single" if trial % 3 == 0 else "conjugated"
        prob = blocklift.random_problem(ring, (n1, n - n1), rng, n_gens=rng.randint(1, 3), mode=mode)
        res = blocklift.split_lift(prob)
        assert blocklift.is_identity_mod_m(ring, res.X)
        Xi = linalg.inverse(res.X)
        for g, h in zip(prob.generators, res.generators):
            direct = linalg.mat_mul(linalg.mat_mul(res.X, g), Xi)
            assert direct == h
            assert blocklift.is_block_diagonal(direct, n1)


# 10 ------------------------------------------------------------------------


def _f7(rows):
    F = GF(7)
    return [[F(x) for x in r] for r in rows]


def _span(pairs):
    G = blocklift.group_closure(pairs)
    return len(G), blocklift.burnside_span_dim([a for a, _ in G], [b for _, b in G])


@criterion(10, "Burnside span dimension 2n^2 vs n^2 for 2-dim representations over F_7", None)
def test_criterion_10_burnside():
    s, c = _f7([[0, 1], [1, 0]]), _f7([[0, -1], [1, -1]])
    one = _f7([[1, 0], [0, 1]])
    neg = _f7([[-1, 0], [0, -1]])
    w = _f7([[2, 0], [0, 2]])  # 2 has order 3 in F_7^x
    w2 = linalg.mat_mul(w, w)
    # S3 x C2, std(x)triv against std(x)sgn
    assert _span([(s, s), (c, c), (one, neg)]) == (12, 8)
    # S3 x C3, std(x)chi against std(x)chi^2
    assert _span([(s, s), (c, c), (w, w2)]) == (18, 8)
    # S3 against a conjugate of itself
    u = _f7([[1, 2], [3, 1]])
    ui = linalg.inverse(u)
    conj = lambda X: linalg.mat_mul(linalg.mat_mul(u, X), ui)
    assert _span([(s, conj(s)), (c, conj(c))]) == (6, 4)
    # D4: rho and its twist by the character r -> -1 are isomorphic
    r, f = _f7([[0, -1], [1, 0]]), _f7([[1, 0], [0, -1]])
    assert _span([(r, linalg.mat_scale(GF(7)(-1), r)), (f, f)]) == (8, 4)


# 11 ------------------------------------------------------------------------


def _rand_root(rng):
    return Fraction(rng.randint(1, 12), rng.randint(1, 6)) * rng.choice([1, -1])


@criterion(11, "dual, transfer root law, svf factorization and perp identity (100 inputs)", None)
def test_criterion_11_transfer():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 3)
        q = Fraction(rng.choice([2, 3, 4, 5, 7, 9]))
        ra = [_rand_root(rng) for _ in range(n)]
        rb = [_rand_root(rng) for _ in range(n)]
        Pv, Pc = UniPoly.from_roots(ra), UniPoly.from_roots(rb)
        assert transfer.dual_poly(transfer.dual_poly(Pv)) == Pv
        assert transfer.dual_poly(Pv) == UniPoly.from_roots([1 / a for a in ra])
        T = transfer.transfer_poly(Pv, Pc, q, n)
        assert T == UniPoly.from_roots(ra + [q ** (2 * n - 1) / b for b in rb])
        d = sum(1 for a in ra if a == ra[0])
        head, rest, tail = transfer.svf_factor(T, ra[0], d, Pc, q)
        assert head * rest * tail == T
        pair = transfer.PerpPair("v", Pv, Pc, transfer.claimed_d0(Pv, Pc, q, n))
        assert transfer.perp_identity_check([pair], q, n)
        bad = UniPoly(pair.D0.coeffs[:1] + [pair.D0.coeffs[1] + 1] + pair.D0.coeffs[2:])
        assert not transfer.perp_identity_check([transfer.PerpPair("v", Pv, Pc, bad)], q, n)


# 12 ------------------------------------------------------------------------


@criterion(12, "inertia relation on 100 split diagonal models, negative controls rejected", None)
def test_criterion_12_inertia():
    rng = random.Random(12)
    F = GF(101)
    for _ in range(100):
        k = rng.randint(2, 3)
        sizes = [rng.randint(1, 2) for _ in range(k)]
        n = sum(sizes)
        vals = rng.sample(range(1, 101), n)
        factors, start = [], 0
        for s in sizes:
            factors.append(UniPoly.from_roots([F(v) for v in vals[start:start + s]], F(1)))
            start += s
        Fr = [[F(vals[i]) if i == j else F(0) for j in range(n)] for i in range(n)]
        tau = F(rng.randint(2, 100))
        assert specproj.inertia_relation_check(factors, Fr, tau)
        assert specproj.inertia_relation_check(factors, Fr, tau, exponent=2)
        # tau placed on the wrong block
        assert not specproj.inertia_relation_check(factors, Fr, tau, tau_block=0)
        # Frobenius coupled across the first and last blocks
        Fp = [r[:] for r in Fr]
        Fp[0][n - 1] = F(1)
        assert not specproj.inertia_relation_check(factors, Fp, tau)
        # factors listed in the wrong order, so E_k cuts out the first block
        assert not specproj.inertia_relation_check(factors[::-1], Fr, tau)


def main() -> int:
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for t in tests:
        try:
            t()
        except Exception:
            failed += 1
    for k in sorted(RESULTS):
        print(RESULTS[k])
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
