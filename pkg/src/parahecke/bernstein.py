"""Iwahori-Hecke algebra of GL_n in Bernstein and Iwahori-Matsumoto bases.

Conventions
-----------
* Iw is integral and upper triangular modulo the uniformizer.
* ``theta(lam)`` is the unnormalized Bernstein element: for dominant
  (non-increasing) ``lam`` it is the double coset [Iw t_lam Iw] with
  t_lam = diag(w^lam_1, ..., w^lam_n); in general it is a ratio of two
  dominant ones.  So X^j = theta(e_j) = T_j T_{j-1}^{-1}.
* T_s^2 = (q-1) T_s + q.
* With these choices the cross relation carries q-powers; writing
  alpha = e_i - e_{i+1}, s = s_i and k = lam_i - lam_{i+1}:

      k > 0:  T_s th_lam = q^k th_{s lam} T_s + (q-1) sum_{m<k} q^m th_{lam - m alpha}
      k < 0:  T_s th_lam = q^k th_{s lam} T_s - (q-1) sum_{1<=m<=-k} q^-m th_{lam + m alpha}

  The normalized elements q^{-<lam,rho>} th_lam satisfy the q-free relation
  (see :func:`theta_normalized`).

Elements of the extended affine Weyl group are pairs (lam, w) standing for
the monomial matrix t_lam P_w.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from . import weyl
from .algebra import linalg
from .errors import ShapeError, UnitError

# ---------------------------------------------------------------------------
# extended affine Weyl group


@lru_cache(maxsize=None)
def aff_mul(x, y):
    lam, w = x
    nu, u = y
    wnu = tuple(nu[w.index(i + 1)] for i in range(len(w)))
    return (tuple(a + b for a, b in zip(lam, wnu)), weyl.compose(w, u))


@lru_cache(maxsize=None)
def aff_inv(x):
    lam, w = x
    wi = weyl.inverse(w)
    # (lam, w)^{-1} = (-wi.lam, wi)
    return (tuple(-lam[w[j] - 1] for j in range(len(w))), wi)


def aff_identity(n):
    return ((0,) * n, weyl.identity(n))


@lru_cache(maxsize=None)
def aff_length(x) -> int:
    """log_q of the number of Iw-cosets in Iw x Iw."""
    lam, w = x
    n = len(w)
    wi = weyl.inverse(w)
    total = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            f = 1 if i > j else 0
            fp = lam[i] - lam[j] + (1 if wi[i] > wi[j] else 0)
            total += max(0, fp - f)
    return total


@lru_cache(maxsize=None)
def aff_simple(i: int, n: int):
    """s_1..s_{n-1} finite, s_0 the affine reflection."""
    if i == 0:
        lam = [0] * n
        lam[0], lam[-1] = -1, 1
        w = list(range(1, n + 1))
        w[0], w[-1] = n, 1
        return (tuple(lam), tuple(w))
    return ((0,) * n, weyl.simple(i, n))


def aff_pi(n: int):
    lam = [0] * n
    lam[-1] = 1
    c = tuple([n] + list(range(1, n)))
    return (tuple(lam), c)


def aff_pi_power(m: int, n: int):
    x = aff_identity(n)
    g = aff_pi(n) if m >= 0 else aff_inv(aff_pi(n))
    for _ in range(abs(m)):
        x = aff_mul(x, g)
    return x


@lru_cache(maxsize=None)
def aff_reduced(x):
    """(word, m) with x = s_{word[0]} ... s_{word[-1]} Pi^m and lengths adding."""
    n = len(x[1])
    word = []
    cur = x
    while True:
        l = aff_length(cur)
        if l == 0:
            break
        for i in range(n):
            nxt = aff_mul(aff_simple(i, n), cur)
            if aff_length(nxt) < l:
                word.append(i)
                cur = nxt
                break
        else:  # pragma: no cover - length function would be inconsistent
            raise ShapeError(f"no descent found for {x}")
    # cur has length 0, so it is a power of Pi; det exponent = sum lam
    m = sum(cur[0])
    if aff_pi_power(m, n) != cur:  # pragma: no cover
        raise ShapeError(f"length-zero element {cur} is not a power of Pi")
    return word, m


def rho_pairing2(lam) -> int:
    """2<lam, rho> with rho_i = (n+1-2i)/2."""
    n = len(lam)
    return sum(l * (n + 1 - 2 * i) for i, l in enumerate(lam, 1))


def dominant_shift(lams):
    """A dominant d with lam + d dominant for every lam given."""
    n = len(lams[0])
    spread = max((max(l) - min(l) for l in lams), default=0) + 1
    return tuple(spread * (n - 1 - i) for i in range(n))


# ---------------------------------------------------------------------------
# algebra


class HeckeAlgebra:
    """H_q(GL_n) over the scalar ring containing ``q`` (q must be a unit)."""

    def __init__(self, n: int, q):
        if n < 1:
            raise ShapeError("n must be positive")
        if isinstance(q, int):
            q = Fraction(q)
        if not linalg.is_unit(q):
            raise UnitError(f"q = {q} is not a unit")
        self.n = n
        self.q = q
        self.one = linalg.one_of(q)
        self.zero = self.one - self.one
        self.qinv = linalg.inv(q)
        self._tth = {}
        self._im2b = {}

    def __eq__(self, other):
        return isinstance(other, HeckeAlgebra) and self.n == other.n and self.q == other.q

    def __hash__(self):
        return hash(self.n)

    def qpow(self, k: int):
        return self.q**k if k >= 0 else self.qinv ** (-k)

    # constructors
    def elem(self, terms):
        return HeckeElem(self, terms)

    def unit(self):
        return self.basis((0,) * self.n, weyl.identity(self.n))

    def basis(self, lam, w=None, coeff=None):
        w = weyl.identity(self.n) if w is None else tuple(w)
        lam = tuple(lam)
        if len(lam) != self.n or len(w) != self.n:
            raise ShapeError("basis element has wrong size")
        return HeckeElem(self, {(lam, w): self.one if coeff is None else coeff})

    def theta(self, lam):
        return self.basis(lam)

    def T(self, w):
        return self.basis((0,) * self.n, w)

    def Ts(self, i):
        return self.T(weyl.simple(i, self.n))

    def scalar(self, c):
        return self.unit() * c

    # finite Hecke algebra
    def _Ts_Tw(self, i, w):
        s = weyl.simple(i, self.n)
        sw = weyl.compose(s, w)
        if weyl.length(sw) > weyl.length(w):
            return {sw: self.one}
        return {w: self.q - self.one, sw: self.q}

    # cross relation
    def _Ts_theta(self, i, lam):
        """T_{s_i} theta_lam as {(nu, w): c} with w in {1, s_i}."""
        n = self.n
        s = weyl.simple(i, n)
        e = weyl.identity(n)
        k = lam[i - 1] - lam[i]
        slam = list(lam)
        slam[i - 1], slam[i] = slam[i], slam[i - 1]
        slam = tuple(slam)
        out = {}
        if k == 0:
            return {(lam, s): self.one}
        out[(slam, s)] = self.qpow(k)
        qm1 = self.q - self.one

        def shifted(m):
            v = list(lam)
            v[i - 1] -= m
            v[i] += m
            return tuple(v)

        if k > 0:
            for m in range(k):
                key = (shifted(m), e)
                out[key] = out.get(key, self.zero) + qm1 * self.qpow(m)
        else:
            for m in range(1, -k + 1):
                key = (shifted(-m), e)
                out[key] = out.get(key, self.zero) - qm1 * self.qpow(-m)
        return out

    def _T_theta(self, w, lam):
        """T_w theta_lam in the Bernstein basis (memoized)."""
        key = (w, lam)
        if key in self._tth:
            return self._tth[key]
        n = self.n
        if w == weyl.identity(n):
            res = {(lam, w): self.one}
        else:
            wi = weyl.inverse(w)
            i = next(i for i in range(1, n) if wi[i - 1] > wi[i])
            rest = weyl.compose(weyl.simple(i, n), w)
            res = {}
            for (nu, u), c in self._T_theta(rest, lam).items():
                for (nu2, v), c2 in self._Ts_theta(i, nu).items():
                    # theta_nu2 T_v T_u with v in {1, s_i}
                    if v == weyl.identity(n):
                        prods = {u: self.one}
                    else:
                        prods = self._Ts_Tw(i, u)
                    for u2, c3 in prods.items():
                        k2 = (nu2, u2)
                        res[k2] = res.get(k2, self.zero) + c * c2 * c3
            res = {k: v for k, v in res.items() if v}
        self._tth[key] = res
        return res

    def _finite_mul(self, w, v):
        """T_w T_v in the finite Hecke algebra."""
        cur = {v: self.one}
        for i in reversed(weyl.reduced_word(w)):
            nxt = {}
            for u, c in cur.items():
                for u2, c2 in self._Ts_Tw(i, u).items():
                    nxt[u2] = nxt.get(u2, self.zero) + c * c2
            cur = {k: x for k, x in nxt.items() if x}
        return cur

    def mul(self, a: "HeckeElem", b: "HeckeElem") -> "HeckeElem":
        if a.alg != self or b.alg != self:
            raise ShapeError("operands belong to different Hecke algebras")
        out = {}
        for (lam, w), c in a.terms.items():
            for (mu, v), d in b.terms.items():
                for (nu, u), e in self._T_theta(w, mu).items():
                    lam2 = tuple(x + y for x, y in zip(lam, nu))
                    for u2, f in self._finite_mul(u, v).items():
                        key = (lam2, u2)
                        out[key] = out.get(key, self.zero) + c * d * e * f
        return HeckeElem(self, out)

    # inverses
    def Ts_inv(self, i):
        return self.Ts(i) * self.qinv + self.unit() * (self.qinv - self.one)

    def T_inv(self, w):
        out = self.unit()
        for i in weyl.reduced_word(w):  # T_w = T_{i1}...T_{ik}
            out = self.Ts_inv(i) * out
        return out

    # normalized theta, q-weighted orbit sums
    def theta_normalized(self, lam, sqrt_q):
        """q^{-<lam,rho>} theta_lam; ``sqrt_q`` squares to q."""
        if sqrt_q * sqrt_q != self.q:
            raise UnitError("sqrt_q does not square to q")
        e2 = -rho_pairing2(lam)
        c = sqrt_q**e2 if e2 >= 0 else linalg.inv(sqrt_q) ** (-e2)
        return self.theta(lam) * c

    def orbit_sum(self, lam, mu):
        """sum over nu in S_mu.lam of q^{<lam - nu, rho>} theta_nu."""
        comp = weyl.Composition.parse(mu)
        if comp.n != self.n:
            raise ShapeError("composition does not match n")
        orbit = {tuple(lam[w[j] - 1] for j in range(self.n)) for w in weyl.parabolic(comp.parts)}
        out = {}
        e = weyl.identity(self.n)
        for nu in orbit:
            k = -sum((a - b) * i for i, (a, b) in enumerate(zip(lam, nu), 1))
            out[(nu, e)] = self.qpow(k)
        return HeckeElem(self, out)

    def orbit_sum_plain(self, lam, mu):
        comp = weyl.Composition.parse(mu)
        orbit = {tuple(lam[w[j] - 1] for j in range(self.n)) for w in weyl.parabolic(comp.parts)}
        e = weyl.identity(self.n)
        return HeckeElem(self, {(nu, e): self.one for nu in orbit})

    # Iwahori-Matsumoto basis
    def _T_pi(self, sign):
        n = self.n
        c = aff_pi(n)[1]
        ci = weyl.inverse(c)
        e1 = tuple([1] + [0] * (n - 1))
        if sign > 0:  # T_Pi = T_{c^-1}^{-1} theta_{e1}
            return self.T_inv(ci) * self.theta(e1)
        return self.theta(tuple(-x for x in e1)) * self.T(ci)

    def _T_simple_aff(self, i):
        if i > 0:
            return self.Ts(i)
        n = self.n
        pi = aff_pi(n)
        s = aff_mul(aff_mul(aff_inv(pi), aff_simple(0, n)), pi)
        j = next(k for k in range(1, n) if s == aff_simple(k, n))
        return self._T_pi(1) * self.Ts(j) * self._T_pi(-1)

    def im(self, x):
        """T_x for x = (lam, w) in the extended affine Weyl group, Bernstein basis."""
        x = (tuple(x[0]), tuple(x[1]))
        if x in self._im2b:
            return self._im2b[x]
        word, m = aff_reduced(x)
        out = self.unit()
        pi = self._T_pi(1 if m > 0 else -1)
        for _ in range(abs(m)):
            out = out * pi
        for i in reversed(word):
            out = self._T_simple_aff(i) * out
        self._im2b[x] = out
        return out

    def im_mul_generator(self, i, terms, pi=False):
        """Left multiply an IM combination by T_{s_i} (or T_Pi^{+-1})."""
        n = self.n
        out = {}
        for x, c in terms.items():
            if pi:
                g = aff_pi(n) if pi > 0 else aff_inv(aff_pi(n))
                y = aff_mul(g, x)
                out[y] = out.get(y, self.zero) + c
                continue
            sx = aff_mul(aff_simple(i, n), x)
            if aff_length(sx) > aff_length(x):
                out[sx] = out.get(sx, self.zero) + c
            else:
                out[x] = out.get(x, self.zero) + c * (self.q - self.one)
                out[sx] = out.get(sx, self.zero) + c * self.q
        return {k: v for k, v in out.items() if v}

    def im_mul(self, a: dict, b: dict) -> dict:
        """Product of IM combinations {x: c}, computed purely in the IM basis."""
        out = {}
        for x, c in a.items():
            word, m = aff_reduced(x)
            cur = dict(b)
            for _ in range(abs(m)):
                cur = self.im_mul_generator(None, cur, pi=1 if m > 0 else -1)
            for i in reversed(word):
                cur = self.im_mul_generator(i, cur)
            for y, d in cur.items():
                out[y] = out.get(y, self.zero) + c * d
        return {k: v for k, v in out.items() if v}

    def to_im(self, h: "HeckeElem") -> dict:
        """Expand a Bernstein-basis element in the IM basis {x: c}."""
        n = self.n
        out = {}
        lams = [lam for (lam, _w) in h.terms]
        if not lams:
            return {}
        d = dominant_shift(lams)
        Td_inv = self._im_inverse(((tuple(d)), weyl.identity(n)))
        for (lam, w), c in h.terms.items():
            top = ({(tuple(a + b for a, b in zip(lam, d)), weyl.identity(n)): self.one})
            th = self.im_mul(top, Td_inv)
            term = self.im_mul(th, {(((0,) * n), w): self.one})
            for x, v in term.items():
                out[x] = out.get(x, self.zero) + c * v
        return {k: v for k, v in out.items() if v}

    def _im_inverse(self, x) -> dict:
        """T_x^{-1} in the IM basis."""
        n = self.n
        word, m = aff_reduced(x)
        # T_x = T_{w1}..T_{wk} T_Pi^m, inverse = T_Pi^{-m} T_{wk}^{-1}..T_{w1}^{-1}
        cur = {aff_identity(n): self.one}
        for i in word:  # left-multiply successively: builds T_{wk}^-1 ... T_{w1}^-1
            ts = self.im_mul_generator(i, cur)
            cur = {k: ts.get(k, self.zero) * self.qinv + cur.get(k, self.zero) * (self.qinv - self.one)
                   for k in set(ts) | set(cur)}
            cur = {k: v for k, v in cur.items() if v}
        for _ in range(abs(m)):
            cur = self.im_mul_generator(None, cur, pi=-1 if m > 0 else 1)
        return cur

    def from_im(self, terms: dict) -> "HeckeElem":
        out = HeckeElem(self, {})
        for x, c in terms.items():
            out = out + self.im(x) * c
        return out


class HeckeElem:
    """Finite combination of theta_lam T_w; immutable."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: HeckeAlgebra, terms):
        self.alg = alg
        self.terms = {(tuple(k[0]), tuple(k[1])): v for k, v in dict(terms).items() if v}

    def _lift(self, other):
        if isinstance(other, HeckeElem):
            if other.alg != self.alg:
                raise ShapeError("operands belong to different Hecke algebras")
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        o = self._lift(other)
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t[k] + v if k in t else v
        return HeckeElem(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElem(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, HeckeElem):
            return self.alg.mul(self, other)
        return HeckeElem(self.alg, {k: v * other for k, v in self.terms.items()})

    def __rmul__(self, other):
        return HeckeElem(self.alg, {k: other * v for k, v in self.terms.items()})

    def __pow__(self, k: int):
        out = self.alg.unit()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, HeckeElem):
            return self.alg == other.alg and self.terms == other.terms
        return self == self._lift(other)

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*th{list(l)}*T{list(w)}" for (l, w), c in sorted(self.terms.items()))

    def to_json(self, to_str=str):
        return [
            {"lambda": list(l), "w": list(w), "coeff": to_str(c)}
            for (l, w), c in sorted(self.terms.items())
        ]


# ---------------------------------------------------------------------------
# parahoric idempotents and V operators


def poincare(mu, q):
    """[p_mu : Iw] = sum_{w in S_mu} q^{l(w)}."""
    comp = weyl.Composition.parse(mu)
    one = linalg.one_of(q)
    total = one - one
    for w in weyl.parabolic(comp.parts):
        total = total + q ** weyl.length(w) if weyl.length(w) else total + one
    return total


class ParahoricIdem:
    def __init__(self, mu, e: HeckeElem, index):
        self.mu = weyl.Composition.parse(mu)
        self.e = e
        self.index = index


def parahoric_sum(alg: HeckeAlgebra, mu) -> HeckeElem:
    comp = weyl.Composition.parse(mu)
    out = HeckeElem(alg, {})
    for w in weyl.parabolic(comp.parts):
        out = out + alg.T(w)
    return out


def parahoric_idem(alg: HeckeAlgebra, mu) -> ParahoricIdem:
    comp = weyl.Composition.parse(mu)
    if comp.n != alg.n:
        raise ShapeError(f"composition {comp.parts} does not match n={alg.n}")
    index = poincare(comp, alg.q)
    if not linalg.is_unit(index):
        raise UnitError(f"[p:Iw] = {index} is not a unit; the parahoric idempotent does not exist")
    e = parahoric_sum(alg, comp) * linalg.inv(index)
    return ParahoricIdem(comp, e, index)


def block_lambda(mu, i: int, j: int):
    """Exponent vector with 1 on the first i positions of block j (1-based)."""
    comp = weyl.Composition.parse(mu)
    if not 1 <= j <= comp.k or not 1 <= i <= comp.parts[j - 1]:
        raise ShapeError(f"(i, j) = ({i}, {j}) out of range for {comp.parts}")
    lam = [0] * comp.n
    start = comp.boundaries()[j - 1]
    for t in range(i):
        lam[start + t] = 1
    return tuple(lam)


def vij_element(alg: HeckeAlgebra, mu, i: int, j: int, normalization: str = "raw", sqrt_q=None):
    """e_P * orbit_sum(lambda(i, j)) * e_P, optionally times q^c.

    ``normalization='raw'`` uses c = 0; ``'table'`` takes c from the
    versioned constants table, which needs ``sqrt_q`` when 2c is odd.
    """
    comp = weyl.Composition.parse(mu)
    lam = block_lambda(comp, i, j)
    e = parahoric_idem(alg, comp).e
    z = alg.orbit_sum(lam, comp)
    v = e * z * e
    if normalization == "raw":
        return v
    if normalization != "table":
        raise ShapeError(f"unknown normalization {normalization!r}")
    from .constants import vij_twice_exponent

    t = vij_twice_exponent(comp.parts, i, j)
    if t % 2 == 0:
        return v * alg.qpow(t // 2)
    if sqrt_q is None or sqrt_q * sqrt_q != alg.q:
        raise UnitError("this normalization needs a square root of q")
    return v * (sqrt_q**t if t > 0 else linalg.inv(sqrt_q) ** (-t))


def all_perms(n):
    return list(permutations(range(1, n + 1)))
