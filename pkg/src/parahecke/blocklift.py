"""Splitting residually block-diagonal representations over Z/p^k or
F_p[t]/(t^k), and the Burnside span dimension.

At level lev the generators g = [[A, B], [C, D]] have B, C in m^lev.
Conjugating by X = [[1, Y], [Z, 1]] with Y, Z in m^lev changes the
off-diagonal blocks to B + YD - AY and C + ZA - DZ modulo m^(2 lev), so
one linear system over the residue field per block kills them modulo
m^(lev+1).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import linalg
from .algebra.rings import GF, ModRing, Ring, TruncRing
from .algebra.unipoly import UniPoly, resultant
from .errors import ConventionError, CoprimalityError, NoSplitError, ShapeError


@dataclass
class BlockLiftProblem:
    ring: Ring
    generators: list
    sizes: tuple

    def __post_init__(self):
        if not isinstance(self.ring, (ModRing, TruncRing)):
            raise ConventionError("block lifting needs Z/p^k or F_p[t]/(t^k)")
        if self.ring.p == 2:
            raise ConventionError("residue characteristic 2 is excluded")
        self.sizes = tuple(self.sizes)
        if len(self.sizes) != 2 or min(self.sizes) < 1:
            raise ShapeError("exactly two positive block sizes are required")
        n = sum(self.sizes)
        self.generators = [[[self.ring(x) for x in row] for row in g] for g in self.generators]
        if not self.generators:
            raise ShapeError("at least one generator is required")
        for g in self.generators:
            if len(g) != n or any(len(r) != n for r in g):
                raise ShapeError(f"generators must be {n}x{n}")
            if not self.ring.is_unit(linalg.det(g)):
                raise ShapeError("generators must be invertible")
        n1 = self.sizes[0]
        for g in self.generators:
            for i in range(n):
                for j in range(n):
                    if (i < n1) != (j < n1) and self.ring.valuation(g[i][j]) < 1:
                        raise ShapeError("generators are not block-diagonal modulo the maximal ideal")
        if not any(_coprime_blocks(self.ring, g, n1) for g in self.generators):
            raise CoprimalityError("no generator has coprime residual block characteristic polynomials")

    @property
    def n(self) -> int:
        return sum(self.sizes)


@dataclass
class LiftResult:
    X: list
    generators: list
    audit: list = field(default_factory=list)


def residue_matrix(ring, M, level=0):
    F = GF(ring.p)
    return [[F(ring.digit(x, level)) for x in row] for row in M]


def _blocks(M, n1):
    A = [r[:n1] for r in M[:n1]]
    B = [r[n1:] for r in M[:n1]]
    C = [r[:n1] for r in M[n1:]]
    D = [r[n1:] for r in M[n1:]]
    return A, B, C, D


def _coprime_blocks(ring, g, n1) -> bool:
    A, _, _, D = _blocks(residue_matrix(ring, g), n1)
    fa, fd = UniPoly(linalg.charpoly(A)), UniPoly(linalg.charpoly(D))
    return bool(resultant(fa, fd))


def _sylvester_system(Abar_list, Dbar_list, Bbar_list, rows, cols, F):
    """Stack Y D - A Y = -B over all generators; unknown Y is rows x cols."""
    eqs, rhs = [], []
    for A, D, B in zip(Abar_list, Dbar_list, Bbar_list):
        for i in range(rows):
            for j in range(cols):
                coeff = [F(0)] * (rows * cols)
                # (Y D)_{ij} = sum_t Y_{it} D_{tj};  (A Y)_{ij} = sum_t A_{it} Y_{tj}
                for t in range(cols):
                    coeff[i * cols + t] = coeff[i * cols + t] + D[t][j]
                for t in range(rows):
                    coeff[t * cols + j] = coeff[t * cols + j] - A[i][t]
                eqs.append(coeff)
                rhs.append(-B[i][j])
    sol = linalg.solve(eqs, rhs)
    if sol is None:
        raise NoSplitError("the level-by-level splitting system is inconsistent")
    return [[sol[i * cols + j] for j in range(cols)] for i in range(rows)]


def split_lift(prob: BlockLiftProblem) -> LiftResult:
    ring, n1, n = prob.ring, prob.sizes[0], prob.n
    n2 = n - n1
    F = GF(ring.p)
    gens = [[row[:] for row in g] for g in prob.generators]
    X = linalg.identity(n, ring.one)
    audit = []
    for lev in range(1, ring.k):
        res = [residue_matrix(ring, g) for g in gens]
        As = [_blocks(r, n1)[0] for r in res]
        Ds = [_blocks(r, n1)[3] for r in res]
        Bs = [[[F(ring.digit(x, lev)) for x in row] for row in _blocks(g, n1)[1]] for g in gens]
        Cs = [[[F(ring.digit(x, lev)) for x in row] for row in _blocks(g, n1)[2]] for g in gens]
        Ybar = _sylvester_system(As, Ds, Bs, n1, n2, F)
        # Z A - D Z + C = 0 is the same shape with the roles of A and D swapped
        Zbar = _sylvester_system(Ds, As, Cs, n2, n1, F)
        Xl = linalg.identity(n, ring.one)
        for i in range(n1):
            for j in range(n2):
                Xl[i][n1 + j] = ring.lift(int(Ybar[i][j]), lev)
        for i in range(n2):
            for j in range(n1):
                Xl[n1 + i][j] = ring.lift(int(Zbar[i][j]), lev)
        Xi = linalg.inverse(Xl)
        gens = [linalg.mat_mul(linalg.mat_mul(Xl, g), Xi) for g in gens]
        X = linalg.mat_mul(Xl, X)
        audit.append({"level": lev, "Y": [[int(y) for y in r] for r in Ybar], "Z": [[int(z) for z in r] for r in Zbar]})
    for g in gens:
        if not is_block_diagonal(g, n1):
            raise NoSplitError("generators are not block-diagonal after lifting")  # pragma: no cover
    return LiftResult(X, gens, audit)


def is_block_diagonal(M, n1) -> bool:
    n = len(M)
    return all(not M[i][j] for i in range(n) for j in range(n) if (i < n1) != (j < n1))


def is_identity_mod_m(ring, X) -> bool:
    n = len(X)
    return all(ring.digit(X[i][j], 0) == (1 if i == j else 0) for i in range(n) for j in range(n))


# ---------------------------------------------------------------------------
# random problems


def _rand_matrix(ring, rows, cols, rng):
    return [[ring(rng.randrange(ring.p**ring.k)) if isinstance(ring, ModRing)
             else ring([rng.randrange(ring.p) for _ in range(ring.k)]) for _ in range(cols)] for _ in range(rows)]


def _rand_invertible(ring, n, rng):
    while True:
        M = _rand_matrix(ring, n, n, rng)
        if ring.is_unit(linalg.det(M)):
            return M


def _rand_in_m(ring, rows, cols, rng):
    M = _rand_matrix(ring, rows, cols, rng)
    pi = ring.uniformizer
    return [[pi * x for x in r] for r in M]


def random_problem(ring, sizes, rng: random.Random, n_gens: int = 2, mode: str = "conjugated"):
    """A solvable problem.

    ``mode='single'``: one generator, residually block diagonal with coprime
    blocks and random off-diagonal blocks in m.  ``mode='conjugated'``:
    block-diagonal generators (the first with coprime residual blocks)
    conjugated by a random X0 = 1 mod m.
    """
    n1, n2 = sizes
    n = n1 + n2
    while True:
        A = _rand_invertible(ring, n1, rng)
        D = _rand_invertible(ring, n2, rng)
        g = linalg.block_diag(A, D)
        if _coprime_blocks(ring, g, n1):
            break
    if mode == "single":
        B = _rand_in_m(ring, n1, n2, rng)
        C = _rand_in_m(ring, n2, n1, rng)
        for i in range(n1):
            for j in range(n2):
                g[i][n1 + j] = B[i][j]
                g[n1 + j][i] = C[j][i]
        return BlockLiftProblem(ring, [g], sizes)
    gens = [g] + [linalg.block_diag(_rand_invertible(ring, n1, rng), _rand_invertible(ring, n2, rng))
                  for _ in range(n_gens - 1)]
    X0 = linalg.mat_add(linalg.identity(n, ring.one), _rand_in_m(ring, n, n, rng))
    X0i = linalg.inverse(X0)
    return BlockLiftProblem(ring, [linalg.mat_mul(linalg.mat_mul(X0, h), X0i) for h in gens], sizes)


def tame_relation_holds(phi, tau, q: int) -> bool:
    """phi tau phi^-1 == tau^q."""
    return linalg.mat_mul(linalg.mat_mul(phi, tau), linalg.inverse(phi)) == linalg.mat_pow(tau, q)


def tame_family(phi, tau, q: int, depth: int):
    """Words of length <= depth in (phi, tau), after checking phi tau phi^-1 = tau^q."""
    if not tame_relation_holds(phi, tau, q):
        raise ShapeError("generators do not satisfy phi tau phi^-1 = tau^q")
    return words([phi, tau], depth)


def words(gens, depth: int):
    """All products of at most ``depth`` generators (deduplicated, insertion order)."""
    n = len(gens[0])
    one = linalg.one_of(gens[0][0][0])
    out = [linalg.identity(n, one)]
    seen = {_key(out[0])}
    frontier = list(out)
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for g in gens:
                h = linalg.mat_mul(w, g)
                k = _key(h)
                if k not in seen:
                    seen.add(k)
                    out.append(h)
                    nxt.append(h)
        frontier = nxt
    return out


def _key(M):
    return tuple(tuple(x for x in r) for r in M)


# ---------------------------------------------------------------------------
# Burnside span


def group_closure(gen_pairs, limit: int = 100000):
    """Closure of generator pairs (rho1(s), rho2(s)) under multiplication."""
    n1 = len(gen_pairs[0][0])
    n2 = len(gen_pairs[0][1])
    one = linalg.one_of(gen_pairs[0][0][0][0])
    e = (linalg.identity(n1, one), linalg.identity(n2, one))
    seen = {(_key(e[0]), _key(e[1]))}
    elems = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gen_pairs:
                h = (linalg.mat_mul(a[0], s[0]), linalg.mat_mul(a[1], s[1]))
                k = (_key(h[0]), _key(h[1]))
                if k not in seen:
                    seen.add(k)
                    elems.append(h)
                    nxt.append(h)
                    if len(elems) > limit:
                        raise ShapeError("group closure exceeded the size limit")
        frontier = nxt
    return elems


def burnside_span_dim(images1, images2) -> int:
    """dim span{(rho1(g), rho2(g))} for parallel lists of images."""
    if len(images1) != len(images2):
        raise ShapeError("image lists must index the same group elements")
    vecs = [[x for r in a for x in r] + [x for r in b for x in r] for a, b in zip(images1, images2)]
    return linalg.rank(vecs)
