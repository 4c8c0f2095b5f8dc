"""GL_n over a local field, modeled by rational matrices with exact
ell-adic valuations (uniformizer = ell, residue field F_ell).

Subgroups are described by a composition mu: ``level='parahoric'`` is p_mu
(block upper triangular mod ell; mu = (1,...,1) is the Iwahori), and
``level='parahoric_1'`` additionally asks the last diagonal block's
determinant to be trivial in the p-part of F_ell^x.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import weyl
from .algebra import linalg
from .algebra.rings import is_prime
from .errors import ConventionError, ShapeError

INF = 10**9


def val(x, ell: int) -> int:
    """ell-adic valuation of a rational; INF for 0."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    a, b = x.numerator, x.denominator
    while a % ell == 0:
        a //= ell
        v += 1
    while b % ell == 0:
        b //= ell
        v -= 1
    return v


def unit_part_mod(x, ell: int, k: int = 1) -> int:
    """x / ell^v(x) reduced modulo ell^k."""
    x = Fraction(x)
    v = val(x, ell)
    u = x / Fraction(ell) ** v
    m = ell**k
    return u.numerator * pow(u.denominator, -1, m) % m


def reduce_mod(x, e: int, ell: int) -> Fraction:
    """Canonical representative of x modulo ell^e O, with digits in 0..ell-1."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    s = max(0, -val(x, ell))
    if e + s <= 0:
        return Fraction(0)
    m = ell ** (e + s)
    y = x * ell**s
    r = y.numerator * pow(y.denominator, -1, m) % m
    return Fraction(r, ell**s)


def p_part(m: int, p: int) -> int:
    a = 1
    while m % p == 0:
        m //= p
        a *= p
    return a


def primitive_root(ell: int) -> int:
    """Smallest primitive root modulo ell^2 (hence modulo every ell^k)."""
    phi = ell * (ell - 1)
    fac = [d for d in range(2, phi + 1) if phi % d == 0 and is_prime(d)]
    for g in range(2, ell * ell):
        if g % ell and all(pow(g, phi // d, ell * ell) != 1 for d in fac):
            return g
    raise ConventionError(f"no primitive root mod {ell}^2")


@dataclass(frozen=True)
class ParahoricSpec:
    mu: weyl.Composition
    ell: int
    level: str = "parahoric"
    p: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "mu", weyl.Composition.parse(self.mu))
        if not is_prime(self.ell):
            raise ConventionError(f"ell = {self.ell} must be prime")
        if self.level not in ("parahoric", "parahoric_1"):
            raise ConventionError(f"unknown level {self.level!r}")
        if self.level == "parahoric_1":
            if self.p is None or not is_prime(self.p):
                raise ConventionError("parahoric_1 needs a prime p")
            if (self.ell - 1) % self.p:
                raise ConventionError(f"parahoric_1 needs ell = 1 mod p (ell={self.ell}, p={self.p})")

    @classmethod
    def iwahori(cls, n: int, ell: int) -> "ParahoricSpec":
        return cls(weyl.Composition((1,) * n), ell)

    @property
    def n(self) -> int:
        return self.mu.n

    def block(self, i: int) -> int:
        """0-based block of the 0-based index i."""
        return self._blocks[i]

    @property
    def _blocks(self):
        out = []
        for b, part in enumerate(self.mu.parts):
            out += [b] * part
        return out

    def c(self, i: int, j: int) -> int:
        """Minimal valuation of entry (i, j) in p_mu (0-based)."""
        return 1 if self._blocks[i] > self._blocks[j] else 0

    @property
    def p_index(self) -> int:
        """[p_mu : p_mu,1] = p-part of ell - 1."""
        return p_part(self.ell - 1, self.p) if self.level == "parahoric_1" else 1


def as_matrix(g):
    return [[Fraction(x) for x in row] for row in g]


def diag_pi(exps, ell):
    n = len(exps)
    return [[Fraction(ell) ** exps[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def monomial(x, ell):
    """Matrix t_lam P_w of the extended affine Weyl element x = (lam, w)."""
    lam, w = x
    M = weyl.perm_matrix(w, Fraction(1), Fraction(0))
    return [[Fraction(ell) ** lam[i] * M[i][j] for j in range(len(w))] for i in range(len(w))]


def membership(g, spec: ParahoricSpec) -> bool:
    n = spec.n
    if len(g) != n:
        return False
    ell = spec.ell
    for i in range(n):
        for j in range(n):
            if val(g[i][j], ell) < spec.c(i, j):
                return False
    d = linalg.det(as_matrix(g))
    if val(d, ell) != 0:
        return False
    if spec.level == "parahoric_1":
        last = spec.mu.boundaries()[-2]
        blk = [[g[i][j] for j in range(last, n)] for i in range(last, n)]
        db = linalg.det(as_matrix(blk))
        if val(db, ell) != 0:
            return False
        r = unit_part_mod(db, ell)
        pa = p_part(ell - 1, spec.p)
        if pow(r, (ell - 1) // pa, ell) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Bruhat-Iwahori decomposition g = b w k


def bruhat_iwahori(g, ell: int):
    """(b, w, k): b upper triangular, w a permutation, k in Iw with g = b P_w k.

    Rows are processed bottom-up; in each row the pivot is the leftmost
    remaining column of minimal valuation, and the other remaining columns
    are cleared by column operations inside Iw.
    """
    g = as_matrix(g)
    n = len(g)
    M = [row[:] for row in g]
    E = linalg.identity(n)  # M = g E, E in Iw
    remaining = list(range(n))
    w = [0] * n
    for r in range(n - 1, -1, -1):
        vals = [(val(M[r][c], ell), c) for c in remaining]
        v, c = min(vals)
        if v >= INF:
            raise ShapeError("matrix is singular")
        for c2 in remaining:
            if c2 != c and M[r][c2]:
                f = M[r][c2] / M[r][c]
                for i in range(n):
                    M[i][c2] -= f * M[i][c]
                    E[i][c2] -= f * E[i][c]
        remaining.remove(c)
        w[c] = r + 1
    w = tuple(w)
    b = [[Fraction(0)] * n for _ in range(n)]
    for c in range(n):
        for i in range(n):
            b[i][w[c] - 1] = M[i][c]
    k = linalg.inverse(E)
    return b, w, k


# ---------------------------------------------------------------------------
# canonical forms for cosets g K


def canonical_coset(g, spec: ParahoricSpec):
    """Hermite-type normal form of g p_mu, as a tuple of tuples.

    For parahoric_1 the form is that of g p_mu; use :func:`coset_key`.
    """
    ell = spec.ell
    M = [list(row) for row in as_matrix(g)]
    n = len(M)
    blocks = spec._blocks
    remaining = list(range(n))
    used = []  # (column, pivot row, pivot valuation)
    for r in range(n - 1, -1, -1):
        v, b, _ = min((val(M[r][c], ell), blocks[c], c) for c in remaining)
        if v >= INF:
            raise ShapeError("matrix is singular")
        cands = [c for c in remaining if val(M[r][c], ell) == v and blocks[c] == b]
        c = cands[0]
        target = max(x for x in remaining if blocks[x] == b)
        if target != c:
            for row in M:
                row[c], row[target] = row[target], row[c]
            c = target
        piv = M[r][c]
        for c2 in remaining:
            if c2 != c and M[r][c2]:
                f = M[r][c2] / piv
                for i in range(n):
                    M[i][c2] -= f * M[i][c]
        # scale pivot column to ell^v
        s = Fraction(ell) ** v / piv
        for i in range(n):
            M[i][c] *= s
        remaining.remove(c)
        # reduce earlier pivot columns' entries in row r
        for (c2, _r2, _v2) in used:
            x = M[r][c2]
            e = v if blocks[c] <= blocks[c2] else v + 1
            red = reduce_mod(x, e, ell)
            f = (x - red) / Fraction(ell) ** v
            if f:
                for i in range(n):
                    M[i][c2] -= f * M[i][c]
        used.append((c, r, v))
    return tuple(tuple(row) for row in M)


def coset_key(g, spec: ParahoricSpec):
    return canonical_coset(g, ParahoricSpec(spec.mu, spec.ell))


def _generators(spec: ParahoricSpec):
    n, ell = spec.n, spec.ell
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                E = linalg.identity(n)
                E[i][j] = Fraction(ell) ** spec.c(i, j)
                gens.append(E)
    r = primitive_root(ell)
    last = spec.mu.boundaries()[-2]
    for i in range(n):
        D = linalg.identity(n)
        if spec.level == "parahoric_1" and i >= last:
            D[i][i] = Fraction(pow(r, spec.p_index, ell * ell))
        else:
            D[i][i] = Fraction(r)
        gens.append(D)
    if spec.level == "parahoric_1":
        for i in range(last, n - 1):
            D = linalg.identity(n)
            D[i][i] = Fraction(r)
            D[i + 1][i + 1] = Fraction(1, r)
            gens.append(D)
    if ell == 2:  # pragma: no cover - odd residue characteristic is the tested range
        for i in range(n):
            D = linalg.identity(n)
            D[i][i] = Fraction(-1)
            gens.append(D)
    return gens


def _orbit(g, spec: ParahoricSpec):
    """Distinct cosets in K g K / K by BFS under generators of K."""
    gens = _generators(spec)
    if spec.level == "parahoric":
        key = lambda h: canonical_coset(h, spec)
        start = key(g)
        seen = {start: start}
        queue = deque([start])
        while queue:
            h = queue.popleft()
            for s in gens:
                k2 = key(linalg.mat_mul(s, [list(r) for r in h]))
                if k2 not in seen:
                    seen[k2] = k2
                    queue.append(k2)
        return sorted(seen.values())
    # parahoric_1: p-level keys, then split by pairwise membership in p_1
    base = ParahoricSpec(spec.mu, spec.ell)
    reps = []
    buckets = {}
    start = [list(r) for r in as_matrix(g)]
    queue = deque([start])
    while queue:
        h = queue.popleft()
        key = canonical_coset(h, base)
        bucket = buckets.setdefault(key, [])
        if any(membership(linalg.mat_mul(linalg.inverse(x), h), spec) for x in bucket):
            continue
        bucket.append(h)
        reps.append(h)
        for s in gens:
            queue.append(linalg.mat_mul(s, h))
    return sorted(tuple(tuple(r) for r in h) for h in reps)


def is_dominant(exps) -> bool:
    return all(a >= b for a, b in zip(exps, exps[1:]))


def enumerate_cosets(m_exps, spec: ParahoricSpec, require_dominant: bool = True):
    """Representatives of K m K / K for m = diag(ell^m_exps), K = spec.

    Representatives are canonical forms (p-level) sorted; for parahoric_1 the
    list holds one matrix per p_1-coset.
    """
    m_exps = tuple(int(a) for a in m_exps)
    if len(m_exps) != spec.n:
        raise ShapeError("m has the wrong size")
    if require_dominant and not is_dominant(m_exps):
        raise ShapeError(f"m = diag(w^{list(m_exps)}) is not dominant")
    reps = _orbit(diag_pi(m_exps, spec.ell), spec)
    return [[list(r) for r in h] for h in reps]


def pattern_group_order(allowed, ell: int) -> int:
    """|{g in GL_n(F_ell): g_ij = 0 unless allowed[i][j]}| for a transitive pattern."""
    n = len(allowed)
    cls = []
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        c = [j for j in range(n) if allowed[i][j] and allowed[j][i]]
        seen |= set(c)
        cls.append(c)
    order = 1
    for c in cls:
        k = len(c)
        for t in range(k):
            order *= ell**k - ell**t
    between = sum(1 for i in range(n) for j in range(n) if allowed[i][j] and not allowed[j][i])
    return order * ell**between


def index_formula(m_exps, spec: ParahoricSpec) -> int:
    """[K : K cap m K m^-1] from the valuation patterns of both groups."""
    n, ell = spec.n, spec.ell
    fK = [[spec.c(i, j) for j in range(n)] for i in range(n)]
    fH = [[fK[i][j] + max(0, m_exps[i] - m_exps[j]) for j in range(n)] for i in range(n)]
    oK = pattern_group_order([[fK[i][j] == 0 for j in range(n)] for i in range(n)], ell)
    oH = pattern_group_order([[fH[i][j] == 0 for j in range(n)] for i in range(n)], ell)
    extra = sum(max(1, fH[i][j]) - max(1, fK[i][j]) for i in range(n) for j in range(n) if i != j)
    num = oK * ell**extra
    if num % oH:
        raise ShapeError("index formula is not integral")
    return num // oH


def brute_pattern_order(allowed, ell: int) -> int:
    """Exhaustive count over F_ell (small n only)."""
    n = len(allowed)
    pos = [(i, j) for i in range(n) for j in range(n) if allowed[i][j]]
    count = 0
    for vals in product(range(ell), repeat=len(pos)):
        M = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), x in zip(pos, vals):
            M[i][j] = Fraction(x)
        if linalg.det(M) % ell:
            count += 1
    return count


# ---------------------------------------------------------------------------
# double cosets and convolution


def iwahori_double_coset(g, ell: int):
    """The x = (lam, w) with g in Iw x Iw."""
    M = [list(r) for r in as_matrix(g)]
    n = len(M)
    rows, cols = list(range(n)), list(range(n))
    lam = [0] * n
    w = [0] * n
    while rows:
        v0 = min(val(M[r][c], ell) for r in rows for c in cols)
        if v0 >= INF:
            raise ShapeError("matrix is singular")
        r = max(r for r in rows for c in cols if val(M[r][c], ell) == v0)
        c = min(c for c in cols if val(M[r][c], ell) == v0)
        piv = M[r][c]
        for i in rows:
            if i != r and M[i][c]:
                f = M[i][c] / piv
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        for j in cols:
            if j != c and M[r][j]:
                f = M[r][j] / piv
                for i in range(n):
                    M[i][j] -= f * M[i][c]
        rows.remove(r)
        cols.remove(c)
        lam[r] = v0
        w[c] = r + 1
    return (tuple(lam), tuple(w))


def parahoric_double_coset(g, spec: ParahoricSpec):
    """Canonical label of p g p: least W_mu x W_mu translate of the Iwahori label."""
    from .bernstein import aff_mul

    x = iwahori_double_coset(g, spec.ell)
    n = spec.n
    Wm = [((0,) * n, u) for u in weyl.parabolic(spec.mu.parts)]
    return min(aff_mul(aff_mul(u, x), v) for u in Wm for v in Wm)


def double_coset_key(g, spec: ParahoricSpec):
    if all(p == 1 for p in spec.mu.parts):
        return iwahori_double_coset(g, spec.ell)
    return parahoric_double_coset(g, spec)


def double_coset_reps(x, spec: ParahoricSpec):
    """Right-coset representatives of K x K / K for a monomial x = (lam, w)."""
    if spec.level != "parahoric":
        raise ConventionError("double-coset enumeration is implemented at parahoric level")
    return [[list(r) for r in h] for h in _orbit(monomial(x, spec.ell), spec)]


def convolve_indicators(A, B, spec: ParahoricSpec):
    """Structure constants of [K a K] * [K b K] from coset representative lists.

    Returns {double-coset label: coefficient}; coefficients are Fractions and
    are integers whenever A and B are full double cosets.
    """
    counts = {}
    reps_of = {}
    for a in A:
        for b in B:
            ab = linalg.mat_mul(a, b)
            key = double_coset_key(ab, spec)
            counts[key] = counts.get(key, 0) + 1
            reps_of.setdefault(key, ab)
    out = {}
    for key, cnt in counts.items():
        if all(p == 1 for p in spec.mu.parts):
            size = spec.ell ** _aff_len(key)
        else:
            size = len(_orbit(reps_of[key], spec))
        out[key] = Fraction(cnt, size)
    return out


def _aff_len(x):
    from .bernstein import aff_length

    return aff_length(x)


def random_iwahori(n: int, ell: int, rng, spread: int = 3, spec: ParahoricSpec | None = None):
    """Random element of p_mu (default Iwahori) with small entries."""
    spec = spec or ParahoricSpec.iwahori(n, ell)
    while True:
        g = [[Fraction(rng.randint(-spread, spread) * ell ** spec.c(i, j)) for j in range(n)] for i in range(n)]
        if membership(g, spec):
            return g


def to_json_matrix(M):
    return [[f"{Fraction(x).numerator}/{Fraction(x).denominator}" for x in row] for row in M]
