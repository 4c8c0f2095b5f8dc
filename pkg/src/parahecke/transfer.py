"""Characteristic-polynomial duality and transfer maps.

P^vee(X) = P(0)^-1 X^n P(1/X) has the reciprocal roots.  The transfer of
a pair (P_v, P_vc) of degree-n polynomials is

    P_v(X) * q^(n(2n-1)) * P_vc^vee(q^(1-2n) X),

monic of degree 2n with roots roots(P_v) + {q^(2n-1)/beta}.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import linalg
from .algebra.unipoly import UniPoly
from .errors import FactorError, ShapeError, UnitError


@dataclass(frozen=True)
class CharPolyData:
    poly: UniPoly
    place: str = "v"
    q: object = None

    def __post_init__(self):
        p = self.poly if isinstance(self.poly, UniPoly) else UniPoly(list(self.poly))
        object.__setattr__(self, "poly", p)
        if not p.monic:
            raise ShapeError("characteristic polynomial data must be monic")
        if self.place not in ("v", "vc"):
            raise ShapeError("place must be 'v' or 'vc'")

    @property
    def degree(self) -> int:
        return self.poly.degree


def _poly(P) -> UniPoly:
    if isinstance(P, CharPolyData):
        return P.poly
    if isinstance(P, UniPoly):
        return P
    return UniPoly(list(P))


def dual_poly(P):
    """P(0)^-1 X^n P(1/X); returns the same kind of object it was given."""
    f = _poly(P)
    c0 = f.coeffs[0]
    if not linalg.is_unit(c0):
        raise UnitError(f"P(0) = {c0} is not a unit")
    inv = linalg.inv(c0)
    out = UniPoly([inv * c for c in reversed(f.coeffs)], f.zero)
    if isinstance(P, CharPolyData):
        return CharPolyData(out, P.place, P.q)
    return out


def transfer_poly(P_v, P_vc, q, n: int) -> UniPoly:
    fv, fc = _poly(P_v), _poly(P_vc)
    if fv.degree != n or fc.degree != n:
        raise ShapeError(f"both polynomials must have degree {n}")
    if not linalg.is_unit(q):
        raise UnitError("q must be a unit")
    tail = transfer_tail(fc, q, n)
    return fv * tail


def transfer_tail(P_vc, q, n: int) -> UniPoly:
    """q^(n(2n-1)) P_vc^vee(q^(1-2n) X)."""
    d = dual_poly(_poly(P_vc))
    qi = linalg.inv(q)
    scaled = d.scale_var(qi ** (2 * n - 1))
    c = q ** (n * (2 * n - 1))
    return UniPoly([c * a for a in scaled.coeffs], scaled.zero)


def perp_poly(P_vc, q, n: int) -> UniPoly:
    """Monic polynomial with roots q^(2n-1)/beta, by coefficient reversal."""
    f = _poly(P_vc)
    c0 = f.coeffs[0]
    if not linalg.is_unit(c0):
        raise UnitError(f"P(0) = {c0} is not a unit")
    inv = linalg.inv(c0)
    Q = q ** (2 * n - 1)
    m = f.degree
    # X^m f(Q/X) = sum_i c_i Q^i X^(m-i)
    coeffs = [inv * f.coeffs[m - j] * Q ** (m - j) for j in range(m + 1)]
    return UniPoly(coeffs, f.zero)


def svf_factor(P_2n, alpha, d: int, P_vc, q):
    """Split P_2n as ((X - alpha)^d, P_v / (X - alpha)^d, transfer tail)."""
    P = _poly(P_2n)
    fc = _poly(P_vc)
    n = fc.degree
    if P.degree != 2 * n:
        raise ShapeError("P_2n must have twice the degree of P_vc")
    if d < 1 or d > n:
        raise FactorError(f"multiplicity d={d} must lie in 1..{n}")
    tail = transfer_tail(fc, q, n)
    P_v, r = P.divmod_monic(tail)
    if r:
        raise FactorError("P_2n is not divisible by the transfer tail")
    one = P.one
    lin = UniPoly([-alpha * one, one], P.zero)
    head = UniPoly([one], P.zero)
    for _ in range(d):
        head = head * lin
    rest, r = P_v.divmod_monic(head)
    if r:
        raise FactorError(f"(X - {alpha})^{d} does not divide the v-part")
    return head, rest, tail


@dataclass(frozen=True)
class PerpPair:
    label: str
    P_v: UniPoly
    P_vc: UniPoly
    D0: UniPoly


def claimed_d0(P_v, P_vc, q, n: int) -> UniPoly:
    """Char poly of rho + rho^perp at Frob_v, from the root description."""
    return _poly(P_v) * perp_poly(P_vc, q, n)


def perp_identity_check(family, q, n: int) -> bool:
    """Every pair satisfies transfer_poly(P_v, P_vc) == D0."""
    for pair in family:
        if transfer_poly(pair.P_v, pair.P_vc, q, n) != _poly(pair.D0):
            return False
    return True
