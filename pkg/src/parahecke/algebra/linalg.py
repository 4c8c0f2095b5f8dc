"""Dense exact linear algebra on list-of-lists matrices.

Entries may be Fractions, ring elements from :mod:`rings`, or polynomials;
the functions only use ``+ - *`` plus unit inversion where stated.
Determinants and characteristic polynomials are division free (Berkowitz),
so they work over any commutative ring.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import ShapeError, UnitError
from .rings import Ring


def one_of(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(1)
    r = getattr(x, "ring", None)
    if isinstance(r, Ring):
        return r.one
    return x.one_like()


def zero_of(x):
    return x - x


def is_unit(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x != 0
    r = getattr(x, "ring", None)
    if isinstance(r, Ring):
        return r.is_unit(x)
    raise TypeError(f"no unit test for {type(x).__name__}")


def inv(x):
    if isinstance(x, (int, Fraction)):
        if x == 0:
            raise UnitError("division by zero")
        return 1 / Fraction(x)
    return x.ring.inv(x)


def shape(A):
    return len(A), (len(A[0]) if A else 0)


def _square(A):
    n, m = shape(A)
    if n != m:
        raise ShapeError(f"expected a square matrix, got {n}x{m}")
    return n


def identity(n, one=Fraction(1)):
    z = one - one
    return [[one if i == j else z for j in range(n)] for i in range(n)]


def zeros(n, m, zero=Fraction(0)):
    return [[zero] * m for _ in range(n)]


def mat_map(f, A):
    return [[f(x) for x in row] for row in A]


def mat_add(A, B):
    if shape(A) != shape(B):
        raise ShapeError("mat_add shape mismatch")
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    if shape(A) != shape(B):
        raise ShapeError("mat_sub shape mismatch")
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[c * a for a in row] for row in A]


def mat_mul(A, B):
    n, k = shape(A)
    k2, m = shape(B)
    if k != k2:
        raise ShapeError(f"cannot multiply {n}x{k} by {k2}x{m}")
    Bt = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            s = row[0] * col[0]
            for a, b in zip(row[1:], col[1:]):
                s = s + a * b
            out_row.append(s)
        out.append(out_row)
    return out


def mat_vec(A, v):
    return [sum((a * x for a, x in zip(row[1:], v[1:])), row[0] * v[0]) for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def mat_pow(A, e: int):
    n = _square(A)
    result = identity(n, one_of(A[0][0]))
    base = A
    if e < 0:
        base, e = inverse(A), -e
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def is_zero_matrix(A) -> bool:
    return all(not x for row in A for x in row)


def block_diag(*blocks):
    one = None
    for b in blocks:
        if b:
            one = one_of(b[0][0])
            break
    z = zero_of(one)
    n = sum(len(b) for b in blocks)
    out = zeros(n, n, z)
    o = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[o + i][o + j] = x
        o += len(b)
    return out


def inverse(A):
    """Gauss-Jordan inverse; pivots must be units (works over local rings)."""
    n = _square(A)
    one = one_of(A[0][0])
    M = [list(row) + [one if i == j else one - one for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if is_unit(M[r][c])), None)
        if piv is None:
            raise UnitError("matrix is not invertible over its coefficient ring")
        M[c], M[piv] = M[piv], M[c]
        ic = inv(M[c][c])
        M[c] = [ic * x for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def rref(A):
    """Reduced row echelon form over a field; returns (R, pivot_columns)."""
    M = [list(r) for r in A]
    n, m = shape(M)
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        ic = inv(M[r][c])
        M[r] = [ic * x for x in M[r]]
        for i in range(n):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return M, pivots


def rank(A) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def nullspace(A):
    """Basis of {x : A x = 0} over a field, as a list of column vectors."""
    n, m = shape(A)
    R, piv = rref(A)
    one = one_of(A[0][0])
    zero = one - one
    basis = []
    for f in (c for c in range(m) if c not in piv):
        v = [zero] * m
        v[f] = one
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


def column_space(A):
    """Basis of the column span, as the pivot columns' RREF of the transpose."""
    R, piv = rref(transpose(A))
    return [row for row in R[: len(piv)]]


def same_span(U, V) -> bool:
    """U, V: lists of vectors. Spans equal over a field."""
    if not U or not V:
        return (not U or rank(U) == 0) and (not V or rank(V) == 0)
    return rank(U) == rank(V) == rank(U + V)


def solve(A, b):
    """One solution of A x = b over a field, or None if inconsistent."""
    n, m = shape(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    if m in piv:
        return None
    zero = zero_of(b[0]) if b else Fraction(0)
    x = [zero] * m
    for i, c in enumerate(piv):
        x[c] = R[i][m]
    return x


def charpoly(A):
    """Coefficients [c_0, ..., c_n] (low to high) of det(T - A), Berkowitz."""
    n = _square(A)
    if n == 0:
        return [Fraction(1)]
    one = one_of(A[0][0])
    zero = one - one
    # poly stored high to low during the recursion
    poly = [one, -A[0][0]]
    for k in range(1, n):
        R = A[k][:k]
        C = [A[i][k] for i in range(k)]
        a = A[k][k]
        M = [row[:k] for row in A[:k]]
        # Toeplitz first column: 1, -a, -R C, -R M C, ...
        col = [one, -a]
        v = C
        for _ in range(k):
            s = zero
            for r, x in zip(R, v):
                s = s + r * x
            col.append(-s)
            v = mat_vec(M, v)
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(min(i, k) + 1):
                if i - j < len(col):
                    s = s + col[i - j] * poly[j]
            new.append(s)
        poly = new
    return list(reversed(poly))


def det(A):
    n = _square(A)
    if n == 0:
        return Fraction(1)
    c0 = charpoly(A)[0]
    return c0 if n % 2 == 0 else -c0


def poly_eval_matrix(coeffs, A):
    """Horner evaluation of sum coeffs[i] T^i at the square matrix A."""
    n = _square(A)
    one = one_of(A[0][0])
    result = zeros(n, n, one - one)
    I = identity(n, one)
    for c in reversed(coeffs):
        result = mat_add(mat_mul(result, A), mat_scale(c, I))
    return result


def kernel_power_span(A, k: int):
    """Basis of ker(A^k) over a field."""
    return nullspace(mat_pow(A, k))


def vec_to_str(v, to_str=str):
    return [to_str(x) for x in v]
