"""Exact scalar rings.

Four coefficient families are supported: the rationals (elements are plain
``fractions.Fraction``), prime fields F_p and the truncated rings Z/p^k
(``ModRing``), truncated power series F_p[t]/(t^k) (``TruncRing``), and the
quadratic fields Q(sqrt d) (``QuadField``) used for half-integral powers of q.

A ring object coerces ints, Fractions and canonical strings into its
elements; elements support ``+ - * / **`` with ints mixed in, and division
raises ``UnitError`` on non-units.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

from ..errors import ConventionError, UnitError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(m: int) -> tuple[int, int]:
    """Return (p, k) with m == p**k, or raise."""
    for p in range(2, m + 1):
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                break
            return p, k
    raise ConventionError(f"{m} is not a prime power")


class Ring:
    name = "ring"
    is_field = False
    characteristic = 0

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def to_str(self, x) -> str:
        return str(x)

    def parse(self, s: str):
        return self(Fraction(s))

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def _key(self):
        return ()

    def __repr__(self):
        return self.name


class RationalField(Ring):
    name = "QQ"
    is_field = True

    def __call__(self, x):
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def is_unit(self, x) -> bool:
        return x != 0

    def inv(self, x):
        if x == 0:
            raise UnitError("division by zero in QQ")
        return 1 / Fraction(x)

    def to_str(self, x) -> str:
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


QQ = RationalField()


class _Elem:
    __slots__ = ("ring",)

    def _coerce(self, other):
        if isinstance(other, _Elem):
            if other.ring != self.ring:
                raise ConventionError(f"mixed rings {self.ring} and {other.ring}")
            return other
        return self.ring(other)

    def __radd__(self, other):
        return self + other

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * self.ring.inv(self._coerce(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.ring.inv(self)

    def __pow__(self, e: int):
        if e < 0:
            return self.ring.inv(self) ** (-e)
        result, base = self.ring.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


class ModElem(_Elem):
    __slots__ = ("v",)

    def __init__(self, v: int, ring: "ModRing"):
        self.v = v % ring.modulus
        self.ring = ring

    def __add__(self, other):
        o = self._coerce(other)
        return ModElem(self.v + o.v, self.ring)

    def __sub__(self, other):
        o = self._coerce(other)
        return ModElem(self.v - o.v, self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        return ModElem(self.v * o.v, self.ring)

    def __neg__(self):
        return ModElem(-self.v, self.ring)

    def __eq__(self, other):
        if isinstance(other, ModElem):
            return self.ring == other.ring and self.v == other.v
        if isinstance(other, (int, Fraction)):
            try:
                return self.v == self.ring(other).v
            except UnitError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.ring.modulus))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} mod {self.ring.modulus}"


class ModRing(Ring):
    """Z/p^k; for k == 1 this is the prime field F_p."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p) or k < 1:
            raise ConventionError(f"Z/{p}^{k} needs p prime and k >= 1")
        self.p, self.k = p, k
        self.modulus = p**k
        self.is_field = k == 1
        self.characteristic = self.modulus
        self.name = f"GF({p})" if k == 1 else f"Z/{p}^{k}"

    def _key(self):
        return (self.p, self.k)

    def __call__(self, x):
        if isinstance(x, ModElem):
            if x.ring != self:
                raise ConventionError(f"mixed rings {x.ring} and {self}")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise UnitError(f"{x} has no image in {self.name}")
            return ModElem(x.numerator * pow(x.denominator, -1, self.modulus), self)
        if isinstance(x, int):
            return ModElem(x, self)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def is_unit(self, x) -> bool:
        return self(x).v % self.p != 0

    def inv(self, x):
        x = self(x)
        if x.v % self.p == 0:
            raise UnitError(f"{x.v} is not a unit in {self.name}")
        return ModElem(pow(x.v, -1, self.modulus), self)

    def to_str(self, x) -> str:
        return str(self(x).v)

    def elements(self):
        return [ModElem(i, self) for i in range(self.modulus)]

    # local-ring structure
    @property
    def uniformizer(self):
        """Generator of the principal maximal ideal."""
        return ModElem(self.p, self)

    @property
    def residue_field(self) -> "ModRing":
        return ModRing(self.p)

    def valuation(self, x) -> int:
        v, e = self(x).v, 0
        if v == 0:
            return self.k
        while v % self.p == 0:
            v //= self.p
            e += 1
        return e

    def digit(self, x, level: int) -> int:
        """Coefficient of p^level in the base-p expansion of x."""
        return (self(x).v // self.p**level) % self.p

    def lift(self, d: int, level: int):
        return ModElem(d * self.p**level, self)


class TruncElem(_Elem):
    __slots__ = ("c",)

    def __init__(self, coeffs, ring: "TruncRing"):
        c = [int(a) % ring.p for a in coeffs][: ring.k]
        c += [0] * (ring.k - len(c))
        self.c = tuple(c)
        self.ring = ring

    def __add__(self, other):
        o = self._coerce(other)
        return TruncElem([a + b for a, b in zip(self.c, o.c)], self.ring)

    def __sub__(self, other):
        o = self._coerce(other)
        return TruncElem([a - b for a, b in zip(self.c, o.c)], self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        k = self.ring.k
        out = [0] * k
        for i, a in enumerate(self.c):
            if a:
                for j in range(k - i):
                    out[i + j] += a * o.c[j]
        return TruncElem(out, self.ring)

    def __neg__(self):
        return TruncElem([-a for a in self.c], self.ring)

    def __eq__(self, other):
        if isinstance(other, TruncElem):
            return self.ring == other.ring and self.c == other.c
        if isinstance(other, int):
            return self.c == self.ring(other).c
        return NotImplemented

    def __hash__(self):
        return hash((self.c, self.ring.p))

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        terms = [f"{a}*t^{i}" if i else str(a) for i, a in enumerate(self.c) if a]
        return "(" + (" + ".join(terms) or "0") + f") in {self.ring.name}"


class TruncRing(Ring):
    """F_p[t]/(t^k)."""

    def __init__(self, p: int, k: int):
        if not is_prime(p) or k < 1:
            raise ConventionError(f"F_{p}[t]/(t^{k}) needs p prime and k >= 1")
        self.p, self.k = p, k
        self.characteristic = p
        self.is_field = k == 1
        self.name = f"F{p}[t]/t^{k}"

    def _key(self):
        return (self.p, self.k)

    def __call__(self, x):
        if isinstance(x, TruncElem):
            if x.ring != self:
                raise ConventionError(f"mixed rings {x.ring} and {self}")
            return x
        if isinstance(x, (list, tuple)):
            return TruncElem(x, self)
        if isinstance(x, str):
            return TruncElem([int(a) for a in x.split(",")], self)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise UnitError(f"{x} has no image in {self.name}")
            return TruncElem([x.numerator * pow(x.denominator, -1, self.p)], self)
        if isinstance(x, int):
            return TruncElem([x], self)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def is_unit(self, x) -> bool:
        return self(x).c[0] != 0

    def inv(self, x):
        x = self(x)
        if x.c[0] == 0:
            raise UnitError(f"{x} is not a unit")
        p, k = self.p, self.k
        a0 = pow(x.c[0], -1, p)
        out = [a0] + [0] * (k - 1)
        for n in range(1, k):
            s = sum(x.c[i] * out[n - i] for i in range(1, n + 1))
            out[n] = (-s * a0) % p
        return TruncElem(out, self)

    def to_str(self, x) -> str:
        return ",".join(str(a) for a in self(x).c)

    def parse(self, s: str):
        return self(s)

    @property
    def uniformizer(self):
        return TruncElem([0, 1], self)

    @property
    def residue_field(self) -> ModRing:
        return ModRing(self.p)

    def valuation(self, x) -> int:
        for i, a in enumerate(self(x).c):
            if a:
                return i
        return self.k

    def digit(self, x, level: int) -> int:
        return self(x).c[level]

    def lift(self, d: int, level: int):
        c = [0] * self.k
        c[level] = d
        return TruncElem(c, self)


@total_ordering
class QuadElem(_Elem):
    """a + b*sqrt(d) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a, b, ring: "QuadField"):
        self.a, self.b = Fraction(a), Fraction(b)
        self.ring = ring

    def __add__(self, other):
        o = self._coerce(other)
        return QuadElem(self.a + o.a, self.b + o.b, self.ring)

    def __sub__(self, other):
        o = self._coerce(other)
        return QuadElem(self.a - o.a, self.b - o.b, self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        d = self.ring.d
        return QuadElem(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, self.ring)

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.ring)

    def conj(self):
        return QuadElem(self.a, -self.b, self.ring)

    def norm(self) -> Fraction:
        return self.a * self.a - self.ring.d * self.b * self.b

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.ring == other.ring and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __lt__(self, other):
        o = self._coerce(other)
        return (self.a, self.b) < (o.a, o.b)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.ring.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return self.ring.to_str(self)


class QuadField(Ring):
    """Q(sqrt d) for a non-square integer d."""

    is_field = True

    def __init__(self, d: int):
        r = int(abs(d) ** 0.5)
        if any(s * s == d for s in (r - 1, r, r + 1) if s >= 0):
            raise ConventionError(f"{d} is a square; Q(sqrt {d}) is not a field extension")
        self.d = d
        self.name = f"QQ(sqrt{d})"

    def _key(self):
        return (self.d,)

    def __call__(self, x):
        if isinstance(x, QuadElem):
            if x.ring != self:
                raise ConventionError(f"mixed rings {x.ring} and {self}")
            return x
        if isinstance(x, tuple):
            return QuadElem(x[0], x[1], self)
        if isinstance(x, str):
            a, _, b = x.partition("+sqrt:")
            return QuadElem(Fraction(a), Fraction(b or 0), self)
        if isinstance(x, (int, Fraction)):
            return QuadElem(x, 0, self)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    @property
    def sqrt(self):
        return QuadElem(0, 1, self)

    def is_unit(self, x) -> bool:
        return bool(self(x))

    def inv(self, x):
        x = self(x)
        nm = x.norm()
        if nm == 0:
            raise UnitError("division by zero in quadratic field")
        return QuadElem(x.a / nm, -x.b / nm, self)

    def to_str(self, x) -> str:
        x = self(x)
        return f"{QQ.to_str(x.a)}+sqrt:{QQ.to_str(x.b)}"


class FFElem(_Elem):
    """Element of F_p[x]/(f) stored as a coefficient tuple (low to high)."""

    __slots__ = ("c",)

    def __init__(self, coeffs, ring: "FiniteField"):
        c = [int(a) % ring.p for a in coeffs]
        f = ring.modulus
        k = ring.k
        # reduce modulo the monic modulus f (len k + 1)
        for d in range(len(c) - 1, k - 1, -1):
            a = c[d]
            if a:
                for i in range(k + 1):
                    c[d - k + i] = (c[d - k + i] - a * f[i]) % ring.p
        c = (c + [0] * k)[:k]
        self.c = tuple(c)
        self.ring = ring

    def __add__(self, other):
        o = self._coerce(other)
        return FFElem([a + b for a, b in zip(self.c, o.c)], self.ring)

    def __sub__(self, other):
        o = self._coerce(other)
        return FFElem([a - b for a, b in zip(self.c, o.c)], self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        out = [0] * (2 * self.ring.k - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return FFElem(out, self.ring)

    def __neg__(self):
        return FFElem([-a for a in self.c], self.ring)

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.ring == other.ring and self.c == other.c
        if isinstance(other, (int, Fraction)):
            try:
                return self.c == self.ring(other).c
            except UnitError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.c, self.ring.p))

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return self.ring.to_str(self)


class FiniteField(Ring):
    """GF(p^k) = F_p[x]/(f) with f the lexicographically first monic irreducible."""

    is_field = True

    def __init__(self, p: int, k: int):
        if not is_prime(p) or k < 1:
            raise ConventionError(f"GF({p}^{k}) needs p prime and k >= 1")
        self.p, self.k = p, k
        self.characteristic = p
        self.order = p**k
        self.modulus = self._irreducible()
        self.name = f"GF({p}^{k})"

    def _key(self):
        return (self.p, self.k)

    def _irreducible(self):
        p, k = self.p, self.k
        if k == 1:
            return (0, 1)
        from itertools import product as _prod

        for tail in _prod(range(p), repeat=k):
            f = list(tail) + [1]
            if tail[0] == 0:
                continue
            if not _has_factor(f, p):
                return tuple(f)
        raise ConventionError("no irreducible polynomial found")  # pragma: no cover

    def __call__(self, x):
        if isinstance(x, FFElem):
            if x.ring != self:
                raise ConventionError(f"mixed rings {x.ring} and {self}")
            return x
        if isinstance(x, (list, tuple)):
            return FFElem(x, self)
        if isinstance(x, str):
            return FFElem([int(a) for a in x.split(",")], self)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise UnitError(f"{x} has no image in {self.name}")
            return FFElem([x.numerator * pow(x.denominator, -1, self.p)], self)
        if isinstance(x, int):
            return FFElem([x], self)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    @property
    def gen(self):
        return FFElem([0, 1], self)

    def is_unit(self, x) -> bool:
        return bool(self(x))

    def inv(self, x):
        x = self(x)
        if not x:
            raise UnitError("division by zero in finite field")
        return x ** (self.order - 2)

    def elements(self):
        from itertools import product as _prod

        return [FFElem(list(c), self) for c in _prod(range(self.p), repeat=self.k)]

    def units(self):
        return [x for x in self.elements() if x]

    def to_str(self, x) -> str:
        return ",".join(str(a) for a in self(x).c)

    def parse(self, s: str):
        return self(s)


def _has_factor(f, p):
    """True if the polynomial f (low to high, monic) has a factor of degree <= deg/2."""
    from itertools import product as _prod

    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for tail in _prod(range(p), repeat=d):
            g = list(tail) + [1]
            r = list(f)
            for top in range(len(r) - 1, d - 1, -1):
                a = r[top] % p
                if a:
                    for i in range(d + 1):
                        r[top - d + i] = (r[top - d + i] - a * g[i]) % p
            if not any(x % p for x in r[:d]):
                return True
    return False


def GF(p: int) -> ModRing:
    return ModRing(p, 1)


def ring_from_spec(spec: str) -> Ring:
    """Parse ``QQ``, ``GF(p)``, ``Z/p^k``, ``Fp[t]/t^k`` or ``QQ(sqrtd)``."""
    s = spec.replace(" ", "")
    if s == "QQ":
        return QQ
    if s.startswith("GF(") and s.endswith(")") and "^" not in s:
        return GF(int(s[3:-1]))
    if s.startswith("Z/"):
        body = s[2:]
        if "^" in body:
            p, k = body.split("^")
            return ModRing(int(p), int(k))
        return ModRing(*prime_power(int(body)))
    if s.startswith("F") and "[t]/t^" in s:
        p, k = s[1:].split("[t]/t^")
        return TruncRing(int(p), int(k))
    if s.startswith("GF(") and "^" in s and s.endswith(")"):
        p, k = s[3:-1].split("^")
        return FiniteField(int(p), int(k))
    if s.startswith("QQ(sqrt") and s.endswith(")"):
        return QuadField(int(s[7:-1]))
    raise ConventionError(f"unknown ring {spec!r}")
