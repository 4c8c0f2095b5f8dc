"""Built-in checks behind ``parahecke selftest``.

``quick`` runs the small hand-checkable examples; ``full`` adds
acceptance-scale sweeps at reduced size.
"""
from __future__ import annotations

import random
from fractions import Fraction

from . import bernstein, blocklift, localmodel, pseries, specproj, transfer, weyl
from .algebra.laurent import LaurentPoly
from .algebra.rings import GF, ModRing
from .algebra.unipoly import UniPoly


def _weyl():
    return len(weyl.parabolic((3,))) == 6 and weyl.length(weyl.longest(3)) == 3


def _quadratic_relation():
    alg = bernstein.HeckeAlgebra(3, Fraction(5))
    s = alg.Ts(1)
    return s * s == s * (alg.q - 1) + alg.scalar(alg.q)


def _theta_commute():
    alg = bernstein.HeckeAlgebra(2, Fraction(3))
    a, b = alg.theta((1, 0)), alg.theta((0, -1))
    return a * b == b * a == alg.theta((1, -1))


def _coset_count():
    spec = localmodel.ParahoricSpec.iwahori(2, 3)
    return len(localmodel.enumerate_cosets((1, 0), spec)) == 3


def _res_11():
    sd = specproj.build((1, 1), Fraction(2))
    return sd.res_mu == LaurentPoly.var(0, 2) - LaurentPoly.var(1, 2)


def _block_lift():
    R = ModRing(3, 2)
    res = blocklift.split_lift(blocklift.BlockLiftProblem(R, [[[1, 3], [0, 2]]], (1, 1)))
    return [[int(x) for x in r] for r in res.X] == [[1, 6], [0, 1]] and \
        [[int(x) for x in r] for r in res.generators[0]] == [[1, 0], [0, 2]]


def _dual():
    a = Fraction(3)
    f = UniPoly([-a, 1])
    ok = transfer.dual_poly(f) == UniPoly([-1 / a, 1])
    g = UniPoly([6, -5, 1])
    return ok and transfer.dual_poly(transfer.dual_poly(g)) == g


def _transfer_q1():
    a, b = Fraction(2), Fraction(7)
    T = transfer.transfer_poly(UniPoly([-a, 1]), UniPoly([-b, 1]), Fraction(1), 1)
    return T == UniPoly.from_roots([a, 1 / b])


def _e_alpha():
    F = GF(3)
    chi = pseries.PSeriesChar((F(2), F(4)), F, 7)
    return pseries.build_e_alpha(chi, F(4)).rank == 1


QUICK = [
    ("weyl.sizes", _weyl),
    ("bernstein.quadratic_relation", _quadratic_relation),
    ("bernstein.theta_commute", _theta_commute),
    ("localmodel.coset_count_n2", _coset_count),
    ("specproj.res_11", _res_11),
    ("blocklift.z9_example", _block_lift),
    ("transfer.dual", _dual),
    ("transfer.q1", _transfer_q1),
    ("pseries.e_alpha_rank", _e_alpha),
]


def _coset_law():
    for n in (2, 3):
        for ell in (3, 5):
            spec = localmodel.ParahoricSpec.iwahori(n, ell)
            for i in range(1, n):
                m = tuple([1] * i + [0] * (n - i))
                if len(localmodel.enumerate_cosets(m, spec)) != ell ** (i * (n - i)):
                    return False
    return True


def _bezout():
    for n in (2, 3):
        for mu in weyl.compositions(n):
            sd = specproj.build(mu, Fraction(3))
            total = sum(sd.E[1:], sd.E[0])
            if total != UniPoly([sd.res_mu]):
                return False
    return True


def _double_cosets():
    for n in range(1, 5):
        for Q in weyl.compositions(n):
            for P in weyl.compositions(n):
                if len(weyl.double_coset_reps(Q, P)) != len(weyl.partition_matrices(Q, P)):
                    return False
    return True


def _random_lifts(seed=0):
    rng = random.Random(seed)
    for _ in range(10):
        ring = ModRing(rng.choice([3, 5]), rng.randint(1, 3))
        prob = blocklift.random_problem(ring, (1, 2), rng)
        res = blocklift.split_lift(prob)
        if not all(blocklift.is_block_diagonal(g, 1) for g in res.generators):
            return False
    return True


def _steinberg_n2():
    from .algebra.rings import QuadField

    K = QuadField(3)
    chi = pseries.PSeriesChar((K(2), K(5)), K, 3, normalized=True, sqrt_q=K.sqrt)
    return pseries.steinberg_eigencheck(chi, (1, 1)).ok


FULL = [
    ("localmodel.coset_law", _coset_law),
    ("specproj.bezout", _bezout),
    ("weyl.double_cosets", _double_cosets),
    ("blocklift.random", _random_lifts),
    ("pseries.steinberg_n2", _steinberg_n2),
]


def run(level: str = "quick", seed: int = 0):
    checks = list(QUICK)
    if level == "full":
        checks += FULL
    elif level != "quick":
        from .errors import ShapeError

        raise ShapeError(f"unknown selftest level {level!r}")
    out = []
    for name, fn in checks:
        try:
            ok = bool(fn(seed) if fn is _random_lifts else fn())
            err = None
        except Exception as exc:  # report, do not abort the suite
            ok, err = False, f"{type(exc).__name__}: {exc}"
        rec = {"name": name, "ok": ok}
        if err:
            rec["error"] = err
        out.append(rec)
    return out
