"""Multivariate Laurent polynomials and block-symmetric polynomials."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from ..errors import ConventionError, ShapeError, UnitError
from . import linalg

MAX_EXP = 64


def _check_exp(e):
    for x in e:
        if abs(x) > MAX_EXP:
            raise ShapeError(f"exponent {x} exceeds the bound |e| <= {MAX_EXP}")
    return e


class LaurentPoly:
    """Finite sum of c * X^e, e in Z^n; zero coefficients are never stored.

    ``one`` is the unit of the coefficient ring (Fraction(1) for QQ).
    """

    __slots__ = ("terms", "nvars", "one")

    def __init__(self, terms, nvars: int, one=Fraction(1)):
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ShapeError(f"exponent {e} has wrong arity for {nvars} variables")
            if c:
                clean[_check_exp(e)] = c
        self.terms = clean
        self.nvars = nvars
        self.one = one

    # constructors
    @classmethod
    def const(cls, c, nvars, one=Fraction(1)):
        return cls({(0,) * nvars: c * one}, nvars, one)

    @classmethod
    def var(cls, i, nvars, one=Fraction(1), power=1):
        e = [0] * nvars
        e[i] = power
        return cls({tuple(e): one}, nvars, one)

    @classmethod
    def elementary(cls, k, idx, nvars, one=Fraction(1)):
        """e_k in the variables with 0-based indices idx."""
        terms = {}
        for sub in combinations(idx, k):
            e = [0] * nvars
            for i in sub:
                e[i] = 1
            terms[tuple(e)] = one
        return cls(terms, nvars, one)

    def one_like(self):
        return LaurentPoly.const(1, self.nvars, self.one)

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ShapeError("variable count mismatch")
            return other
        return LaurentPoly.const(other, self.nvars, self.one)

    # arithmetic
    def __add__(self, other):
        o = self._lift(other)
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t[e] + c if e in t else c
        return LaurentPoly(t, self.nvars, self.one)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.nvars, self.one)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({e: c * other for e, c in self.terms.items()}, self.nvars, self.one)
        o = self._lift(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t[e] + c1 * c2 if e in t else c1 * c2
        return LaurentPoly(t, self.nvars, self.one)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise UnitError("only monomials are invertible Laurent polynomials")
            (e, c), = self.terms.items()
            return LaurentPoly({tuple(-x for x in e): linalg.inv(c)}, self.nvars, self.one) ** (-k)
        out = self.one_like()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or hasattr(other, "ring"):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, self.one - self.one)

    def __repr__(self):
        return self.to_str()

    def to_str(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"X{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            mon = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            c = self.terms[e]
            parts.append(f"({c})*{mon}" if mon else f"({c})")
        return " + ".join(parts)

    # structure
    def permute(self, perm):
        """Apply X_i -> X_{perm[i]} (perm 0-based list)."""
        t = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            t[tuple(ne)] = c
        return LaurentPoly(t, self.nvars, self.one)

    def swap(self, i, j):
        perm = list(range(self.nvars))
        perm[i], perm[j] = j, i
        return self.permute(perm)

    def leading(self):
        """Lex-leading (exponent, coefficient)."""
        e = max(self.terms)
        return e, self.terms[e]

    def divide_exact(self, d: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self / d by lex leading-term division, or UnitError."""
        if not d:
            raise UnitError("division by zero polynomial")
        de, dc = d.leading()
        dci = linalg.inv(dc)
        r, q = self, LaurentPoly({}, self.nvars, self.one)
        steps = 0
        while r:
            re, rc = r.leading()
            e = tuple(a - b for a, b in zip(re, de))
            m = LaurentPoly({e: rc * dci}, self.nvars, self.one)
            q = q + m
            r = r - m * d
            steps += 1
            if steps > 100000:
                raise UnitError("division did not terminate; quotient is not exact")
            if r and max(r.terms) >= re:
                raise UnitError("polynomial division is not exact")
        return q

    def substitute(self, values):
        """Evaluate at scalars or at square matrices (list of length nvars)."""
        if len(values) != self.nvars:
            raise ShapeError("substitute needs one value per variable")
        is_mat = [isinstance(v, list) for v in values]
        if any(is_mat):
            return self._subst_matrix(values)
        acc = None
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k < 0:
                    if not linalg.is_unit(v):
                        raise UnitError(f"negative power of non-unit {v}")
                    term = term * linalg.inv(v) ** (-k)
                elif k:
                    term = term * v**k
            acc = term if acc is None else acc + term
        return acc if acc is not None else self.one - self.one

    def _subst_matrix(self, values):
        n = None
        for v in values:
            if isinstance(v, list):
                n = len(v)
        one = linalg.one_of(next(v for v in values if isinstance(v, list))[0][0])
        mats = [v if isinstance(v, list) else linalg.mat_scale(v, linalg.identity(n, one)) for v in values]
        acc = linalg.zeros(n, n, one - one)
        for e, c in self.terms.items():
            term = linalg.mat_scale(c, linalg.identity(n, one))
            for M, k in zip(mats, e):
                if k:
                    term = linalg.mat_mul(term, linalg.mat_pow(M, k))
            acc = linalg.mat_add(acc, term)
        return acc

    def map_coeffs(self, f, one=None):
        return LaurentPoly({e: f(c) for e, c in self.terms.items()}, self.nvars,
                           f(self.one) if one is None else one)

    def to_json(self, to_str=None):
        to_str = to_str or (lambda c: str(c))
        return [[list(e), to_str(c)] for e, c in sorted(self.terms.items())]


def blocks_of(mu):
    """0-based variable index lists for a composition."""
    out, s = [], 0
    for m in mu:
        out.append(list(range(s, s + m)))
        s += m
    return out


class SymPoly(LaurentPoly):
    """A Laurent polynomial fixed by the block permutation group S_mu."""

    __slots__ = ("mu",)

    def __init__(self, poly: LaurentPoly, mu):
        super().__init__(poly.terms, poly.nvars, poly.one)
        self.mu = tuple(mu)
        if sum(self.mu) != self.nvars:
            raise ShapeError(f"composition {self.mu} does not match {self.nvars} variables")
        base = LaurentPoly(self.terms, self.nvars, self.one)
        for b in blocks_of(self.mu):
            for a, c in zip(b, b[1:]):
                if base.swap(a, c) != base:
                    raise ConventionError(
                        f"polynomial is not invariant under swapping X{a + 1} and X{c + 1}"
                    )
