"""Symmetric-group combinatorics: compositions, parabolic subgroups and
minimal-length double-coset representatives.

Permutations are tuples in 1-based one-line notation, w = (w(1), ..., w(n)),
acting on basis vectors by P_w e_j = e_{w(j)}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from .errors import ShapeError


@dataclass(frozen=True)
class Composition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise ShapeError(f"composition parts must be positive: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, s) -> "Composition":
        if isinstance(s, Composition):
            return s
        if isinstance(s, str):
            return cls(tuple(int(x) for x in s.split(",") if x.strip()))
        return cls(tuple(s))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def boundaries(self):
        """s_{mu,0}=0, s_{mu,1}, ..., s_{mu,k}=n."""
        out = [0]
        for p in self.parts:
            out.append(out[-1] + p)
        return out

    def blocks(self):
        """1-based index ranges of each block."""
        b = self.boundaries()
        return [list(range(b[i] + 1, b[i + 1] + 1)) for i in range(self.k)]

    def block_of(self, i: int) -> int:
        """0-based block index of the 1-based position i."""
        for j, blk in enumerate(self.blocks()):
            if i in blk:
                return j
        raise ShapeError(f"position {i} outside 1..{self.n}")

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


def compositions(n: int):
    """All compositions of n, in lexicographic order."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def identity(n: int):
    return tuple(range(1, n + 1))


def compose(a, b):
    """(a o b)(i) = a(b(i))."""
    return tuple(a[x - 1] for x in b)


def inverse(w):
    out = [0] * len(w)
    for i, x in enumerate(w, 1):
        out[x - 1] = i
    return tuple(out)


def length(w) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def simple(i: int, n: int):
    """The transposition (i, i+1), 1 <= i < n."""
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def longest(n: int):
    return tuple(range(n, 0, -1))


def is_permutation(w) -> bool:
    return sorted(w) == list(range(1, len(w) + 1))


def perm_matrix(w, one=1, zero=0):
    n = len(w)
    M = [[zero] * n for _ in range(n)]
    for j, x in enumerate(w):
        M[x - 1][j] = one
    return M


def reduced_word(w):
    """Indices i with w = s_{i1} s_{i2} ... (left to right), via left descents."""
    word = []
    w = tuple(w)
    n = len(w)
    while True:
        wi = inverse(w)
        for i in range(1, n):
            if wi[i - 1] > wi[i]:
                word.append(i)
                w = compose(simple(i, n), w)
                break
        else:
            return word


@lru_cache(maxsize=None)
def parabolic(parts: tuple):
    """All elements of the block permutation group S_mu."""
    comp = Composition(parts)
    factors = [list(permutations(blk)) for blk in comp.blocks()]
    out = []
    for choice in product(*factors):
        w = []
        for seg in choice:
            w.extend(seg)
        out.append(tuple(w))
    return sorted(out)


def double_cosets(Q, P):
    """Partition of S_n into W_Q \\ S_n / W_P orbits, as sorted lists."""
    Q, P = Composition.parse(Q), Composition.parse(P)
    if Q.n != P.n:
        raise ShapeError(f"compositions of different n: {Q.n} vs {P.n}")
    WQ, WP = parabolic(Q.parts), parabolic(P.parts)
    seen = set()
    orbits = []
    for w in permutations(range(1, Q.n + 1)):
        if w in seen:
            continue
        orb = {compose(compose(u, w), v) for u in WQ for v in WP}
        seen |= orb
        orbits.append(sorted(orb))
    return orbits


def double_coset_reps(Q, P):
    """Minimal-length representative of each W_Q w W_P, sorted lexicographically."""
    reps = []
    for orb in double_cosets(Q, P):
        reps.append(min(orb, key=lambda w: (length(w), w)))
    return sorted(reps)


def rep_to_matrix(w, Q, P):
    """M[i][j] = |Q-block i  intersect  w(P-block j)|."""
    Q, P = Composition.parse(Q), Composition.parse(P)
    if len(w) != Q.n or Q.n != P.n:
        raise ShapeError("permutation and compositions disagree on n")
    qb = [set(b) for b in Q.blocks()]
    return [[len(qi & {w[j - 1] for j in pb}) for pb in P.blocks()] for qi in qb]


def matrix_to_rep(M, Q, P):
    """Unique minimal-length w with rep_to_matrix(w, Q, P) == M."""
    Q, P = Composition.parse(Q), Composition.parse(P)
    if len(M) != Q.k or any(len(r) != P.k for r in M):
        raise ShapeError("matrix shape does not match the compositions")
    if any(x < 0 for r in M for x in r):
        raise ShapeError("matrix entries must be non-negative")
    if [sum(r) for r in M] != list(Q.parts) or [sum(c) for c in zip(*M)] != list(P.parts):
        raise ShapeError("row/column sums do not match the compositions")
    assigned = [[] for _ in range(P.k)]
    for i, blk in enumerate(Q.blocks()):
        vals = iter(blk)
        for j in range(P.k):
            for _ in range(M[i][j]):
                assigned[j].append(next(vals))
    w = []
    for j, pb in enumerate(P.blocks()):
        w.extend(sorted(assigned[j]))
    return tuple(w)


def partition_matrices(Q, P):
    """All non-negative integer matrices with row sums Q and column sums P."""
    Q, P = Composition.parse(Q), Composition.parse(P)
    rows = list(Q.parts)
    cols = list(P.parts)
    out = []

    def rec(i, remaining, acc):
        if i == len(rows) - 1:
            if sum(remaining) == rows[i]:
                out.append(acc + [list(remaining)])
            return
        for row in _row_choices(rows[i], remaining):
            rec(i + 1, [c - r for c, r in zip(remaining, row)], acc + [row])

    rec(0, cols, [])
    return out


def _row_choices(total, caps):
    if not caps:
        if total == 0:
            yield []
        return
    for x in range(min(total, caps[0]) + 1):
        for rest in _row_choices(total - x, caps[1:]):
            yield [x] + rest
