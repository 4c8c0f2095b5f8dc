"""Resultant-based spectral projectors.

For a composition mu of n with blocks B_1..B_k the symbolic data are
P_i = prod_{a in B_i} (T - X_a), res_mu = prod_{i<j} res(P_i, P_j),
res_{q,mu} = prod_{i<j} res(P_i(qT), P_j), the Bezout cofactors Q_i and
E_i = Q_i prod_{j != i} P_j.  Specializing along P_i -> f_i (the map phi)
commutes with every ring operation used to build Q_i, so phi(E_i) is
computed from the specialized factors directly.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import weyl
from .algebra import linalg
from .algebra.laurent import LaurentPoly, SymPoly, blocks_of
from .algebra.unipoly import UniPoly, bezout_cofactors, resultant, resultant_any
from .errors import CoprimalityError, ShapeError, UnitError


@dataclass
class SpectralData:
    mu: tuple
    P: list
    res_mu: SymPoly
    res_q_mu: SymPoly
    Q: list
    E: list
    q: object


def block_polys(mu, one=None):
    comp = weyl.Composition.parse(mu)
    n = comp.n
    kw = {} if one is None else {"one": one}
    c1 = LaurentPoly.const(1, n, **kw)
    out = []
    for blk in blocks_of(comp.parts):
        P = UniPoly([c1], c1 - c1)
        for a in blk:
            P = P * UniPoly([-LaurentPoly.var(a, n, **kw), c1], c1 - c1)
        out.append(P)
    return out


def build(mu, q) -> SpectralData:
    comp = weyl.Composition.parse(mu)
    one = linalg.one_of(q)
    P = block_polys(comp, one)
    c1 = P[0].one
    res = c1
    resq = c1
    for i in range(len(P)):
        for j in range(i + 1, len(P)):
            res = res * resultant(P[i], P[j])
            resq = resq * resultant_any(P[i].scale_var(q), P[j])
    Q = bezout_cofactors(P, res)
    E = []
    for i in range(len(P)):
        e = Q[i]
        for j in range(len(P)):
            if j != i:
                e = e * P[j]
        E.append(e)
    return SpectralData(comp.parts, P, SymPoly(res, comp.parts), SymPoly(resq, comp.parts), Q, E, q)


def specialize(sd: SpectralData, roots):
    """Substitute X_a -> roots[a] in the E_i and res (roots in the scalar ring)."""
    E = [e.map_coeffs(lambda c: c.substitute(roots), zero=roots[0] - roots[0]) for e in sd.E]
    return E, sd.res_mu.substitute(roots)


def phi_data(factors):
    """(phi(E_i), phi(res_mu)) from specialized block polynomials."""
    k = len(factors)
    if k == 1:
        one = factors[0].one
        return [UniPoly([one], factors[0].zero)], one
    res = factors[0].one
    for i in range(k):
        for j in range(i + 1, k):
            res = res * resultant(factors[i], factors[j])
    Q = bezout_cofactors(factors, res)
    E = []
    for i in range(k):
        e = Q[i]
        for j in range(k):
            if j != i:
                e = e * factors[j]
        E.append(e)
    return E, res


def _check_coprime(factors):
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            r = resultant(factors[i], factors[j])
            if not linalg.is_unit(r):
                raise CoprimalityError(f"factors {i} and {j} are not coprime (resultant {r})")


def projectors(A, factors):
    """pi_i = phi(E_i / res_mu)(A) for a coprime factorization of charpoly(A)."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise ShapeError("A must be square")
    factors = [f if isinstance(f, UniPoly) else UniPoly(f) for f in factors]
    if any(not f.monic for f in factors):
        raise ShapeError("factors must be monic")
    prod = UniPoly([factors[0].one], factors[0].zero)
    for f in factors:
        prod = prod * f
    if prod != UniPoly(linalg.charpoly(A)):
        raise ShapeError("product of factors is not the characteristic polynomial")
    _check_coprime(factors)
    E, res = phi_data(factors)
    rinv = linalg.inv(res)
    return [linalg.mat_scale(rinv, e.eval_matrix(A)) for e in E]


def generalized_eigenspace(A, f: UniPoly):
    """ker f(A)^n over a field (brute-force oracle)."""
    n = len(A)
    return linalg.nullspace(linalg.mat_pow(f.eval_matrix(A), n))


def diag_tau(sizes, tau, block: int | None = None):
    """r(tau): 1 on all blocks except ``block`` (default last), tau there."""
    n = sum(sizes)
    one = linalg.one_of(tau)
    k = len(sizes)
    block = k - 1 if block is None else block
    start = sum(sizes[:block])
    D = linalg.identity(n, one)
    for i in range(start, start + sizes[block]):
        D[i][i] = tau
    return D


def inertia_relation_value(factors, F, tau, exponent: int = 1, tau_block: int | None = None):
    """res^N (sum_{i<k} E_i(F) + tau E_k(F) - res r(tau)) as a matrix."""
    n = len(F)
    sizes = [f.degree for f in factors]
    if sum(sizes) != n or any(len(r) != n for r in F):
        raise ShapeError("frobenius matrix does not match the factor degrees")
    E, res = phi_data(factors)
    one = linalg.one_of(tau)
    acc = linalg.zeros(n, n, one - one)
    for i, e in enumerate(E):
        M = e.eval_matrix(F)
        if i == len(E) - 1:
            M = linalg.mat_scale(tau, M)
        acc = linalg.mat_add(acc, M)
    acc = linalg.mat_sub(acc, linalg.mat_scale(res, diag_tau(sizes, tau, tau_block)))
    return linalg.mat_scale(res**exponent, acc)


def inertia_relation_check(factors, F, tau, exponent: int = 1, tau_block: int | None = None) -> bool:
    """True iff the relation vanishes exactly."""
    return linalg.is_zero_matrix(inertia_relation_value(factors, F, tau, exponent, tau_block))


def res_q_vanishes_bruteforce(mu, roots, q) -> bool:
    """Some a in an earlier block and b in a later block with X_a = q X_b."""
    comp = weyl.Composition.parse(mu)
    blocks = blocks_of(comp.parts)
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            for a in blocks[i]:
                for b in blocks[j]:
                    if roots[a] == q * roots[b]:
                        return True
    return False


__all__ = [
    "SpectralData", "build", "specialize", "phi_data", "projectors", "generalized_eigenspace",
    "inertia_relation_check", "inertia_relation_value", "diag_tau", "res_q_vanishes_bruteforce",
    "UnitError",
]
