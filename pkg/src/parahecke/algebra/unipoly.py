"""Univariate polynomials in T over scalars or over Laurent polynomials.

Also hosts the Sylvester resultant and the Bezout cofactor solver.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import ConventionError, InternalError, ShapeError, UnitError
from . import linalg


class UniPoly:
    """sum_i coeffs[i] T^i with the leading coefficient nonzero (or the zero poly)."""

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs, zero=None):
        coeffs = list(coeffs)
        if zero is None:
            zero = linalg.zero_of(coeffs[0]) if coeffs else Fraction(0)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = coeffs
        self.zero = zero

    @classmethod
    def from_roots(cls, roots, one=Fraction(1)):
        p = cls([one])
        for r in roots:
            p = p * cls([-r, one])
        return p

    @property
    def one(self):
        return linalg.one_of(self.zero) if not hasattr(self.zero, "one_like") else self.zero.one_like()

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.zero

    @property
    def monic(self) -> bool:
        return bool(self.coeffs) and self.lead == 1

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.zero

    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.zero)

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly([self.coeff(i) + o.coeff(i) for i in range(n)], self.zero)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.zero)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.zero)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.zero)
        out = [self.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.zero)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly([self.one], self.zero)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return self == self._lift(other)

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*T^{i}" for i, c in enumerate(self.coeffs) if c)

    def divmod_monic(self, d: "UniPoly"):
        """Division by a polynomial with unit leading coefficient."""
        if not d.coeffs:
            raise UnitError("division by zero polynomial")
        li = linalg.inv(d.lead) if not hasattr(d.lead, "nvars") else None
        if li is None:
            if d.lead != 1:
                raise ConventionError("polynomial divisor must be monic")
            li = d.lead.one_like()
        r = list(self.coeffs)
        q = [self.zero] * max(0, len(r) - d.degree)
        for k in range(len(r) - 1, d.degree - 1, -1):
            c = r[k] * li
            if not c:
                continue
            q[k - d.degree] = c
            for i, dc in enumerate(d.coeffs):
                r[k - d.degree + i] = r[k - d.degree + i] - c * dc
        return UniPoly(q, self.zero), UniPoly(r[: d.degree], self.zero)

    def scale_var(self, q):
        """P(qT)."""
        out, pw = [], None
        for i, c in enumerate(self.coeffs):
            pw = q**i if i else None
            out.append(c * pw if i else c)
        return UniPoly(out, self.zero)

    def __call__(self, x):
        acc = self.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, A):
        return linalg.poly_eval_matrix(self.coeffs, A)

    def map_coeffs(self, f, zero=None):
        return UniPoly([f(c) for c in self.coeffs], f(self.zero) if zero is None else zero)

    def derivative(self):
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:], self.zero)


def sylvester(f: UniPoly, g: UniPoly):
    """Sylvester matrix with rows of f-coefficients first (high degree left)."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        raise ShapeError("Sylvester matrix of the zero polynomial")
    size = m + n
    z = f.zero
    rows = []
    fh = list(reversed(f.coeffs))
    gh = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([z] * i + fh + [z] * (size - m - 1 - i))
    for i in range(m):
        rows.append([z] * i + gh + [z] * (size - n - 1 - i))
    return rows


def resultant_any(f: UniPoly, g: UniPoly):
    """det of the Sylvester matrix; no monic requirement."""
    if f.degree == 0 and g.degree == 0:
        return f.one
    if f.degree == 0:
        return f.lead ** g.degree
    if g.degree == 0:
        return g.lead ** f.degree
    return linalg.det(sylvester(f, g))


def resultant(f: UniPoly, g: UniPoly):
    """prod (a_i - b_j) over roots of monic f and g."""
    if not (f.monic and g.monic):
        raise ConventionError("resultant is only defined here for monic inputs")
    return resultant_any(f, g)


def bezout_cofactors(P_list, target=None):
    """Q_i with deg Q_i < deg P_i and sum_i Q_i prod_{j != i} P_j = target.

    The coefficient system is square with determinant +-res; the solution is
    read off the adjugate, then checked exactly.  ``target`` defaults to the
    product of pairwise resultants.
    """
    k = len(P_list)
    degs = [p.degree for p in P_list]
    n = sum(degs)
    zero = P_list[0].zero
    one = P_list[0].one
    if k == 1:
        res = one
        Q = [UniPoly([one], zero)]
    else:
        res = one
        for a in range(k):
            for b in range(a + 1, k):
                res = res * resultant(P_list[a], P_list[b])
        cof = []
        for i in range(k):
            c = UniPoly([one], zero)
            for j in range(k):
                if j != i:
                    c = c * P_list[j]
            cof.append(c)
        # columns: (i, t) -> T^t * cof_i ; rows: coefficient of T^r
        cols = [(i, t) for i in range(k) for t in range(degs[i])]
        M = [[cof[i].coeff(r - t) if r >= t else zero for (i, t) in cols] for r in range(n)]
        d = linalg.det(M)
        if d == res:
            sign = one
        elif d == -res:
            sign = -one
        else:
            raise InternalError("coefficient system determinant is not +-res")
        # x = res * M^{-1} e_0 = sign * adj(M) e_0 ; adj(M)[c][0] = (-1)^c det(minor(0, c))
        x = []
        for c in range(n):
            minor = [row[:c] + row[c + 1:] for row in M[1:]]
            m = linalg.det(minor) if minor else one
            x.append(sign * m if c % 2 == 0 else -(sign * m))
        Q, pos = [], 0
        for i in range(k):
            Q.append(UniPoly(x[pos: pos + degs[i]], zero))
            pos += degs[i]
    if target is None:
        target = res
    elif target != res:
        if k == 1:
            Q = [q * target for q in Q]
        else:
            raise InternalError("bezout target must be the resultant product")
    check = UniPoly([], zero)
    for i in range(k):
        term = Q[i]
        for j in range(k):
            if j != i:
                term = term * P_list[j]
        check = check + term
    if check != UniPoly([target], zero):
        raise InternalError("Bezout identity failed exact verification")
    return Q
