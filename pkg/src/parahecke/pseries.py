"""Unramified principal series I(chi) through Iwahori and parahoric invariants.

I(chi) is induced from the upper Borel B.  A vector of I(chi)^Iw is stored in
the basis {phi_w}, phi_w supported on B w Iw with phi_w(w) = 1, and a
double coset [K x K] = U x_i K acts by (X f)(g) = sum_i f(g x_i); this is a
left action, so the matrix of a product is the product of matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from . import bernstein, localmodel, weyl
from .algebra import linalg
from .algebra.rings import QQ, Ring
from .algebra.unipoly import UniPoly
from .errors import ConvergenceError, ShapeError, UnitError


@dataclass(frozen=True)
class PSeriesChar:
    """chi_i(w) values in ``ring``; q = ell.  ``sqrt_q`` is needed when normalized."""

    values: tuple
    ring: Ring
    ell: int
    normalized: bool = False
    sqrt_q: object = None

    def __post_init__(self):
        vals = tuple(self.ring(v) if not _is_elem_of(v, self.ring) else v for v in self.values)
        object.__setattr__(self, "values", vals)
        for v in vals:
            if not self.ring.is_unit(v):
                raise UnitError(f"character value {v} is not a unit")
        if self.normalized:
            if self.sqrt_q is None:
                raise UnitError("normalized induction needs a designated square root of q")
            if self.sqrt_q * self.sqrt_q != self.q:
                raise UnitError("sqrt_q does not square to q")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def q(self):
        return self.ring(self.ell)

    @property
    def one(self):
        return self.ring.one


def _is_elem_of(v, ring):
    if ring is QQ:
        return isinstance(v, Fraction)
    return getattr(v, "ring", None) == ring


class PSeriesModel:
    """Matrices of Hecke operators on I(chi)^Iw (dimension n!)."""

    def __init__(self, chi: PSeriesChar):
        self.chi = chi
        self.n = chi.n
        self.basis = sorted(bernstein.all_perms(self.n))
        self.index = {w: i for i, w in enumerate(self.basis)}
        self.iw = localmodel.ParahoricSpec.iwahori(self.n, chi.ell)
        self._gen = {}
        self._im = {}
        self.alg = bernstein.HeckeAlgebra(self.n, chi.q)

    # values
    def phi_at(self, g):
        """(w, c) with phi_u(g) = c if u == w else 0."""
        b, w, _k = localmodel.bruhat_iwahori(g, self.chi.ell)
        ell, chi = self.chi.ell, self.chi
        c = chi.one
        expo = 0
        for i in range(self.n):
            v = localmodel.val(b[i][i], ell)
            c = c * chi.values[i] ** v
            expo -= v * (self.n + 1 - 2 * (i + 1))
        if chi.normalized:
            c = c * (chi.sqrt_q**expo if expo >= 0 else linalg.inv(chi.sqrt_q) ** (-expo))
        return w, c

    def evaluate(self, v, g):
        w, c = self.phi_at(g)
        return c * v[self.index[w]]

    def zero_matrix(self):
        z = self.chi.one - self.chi.one
        return [[z] * len(self.basis) for _ in self.basis]

    def matrix_from_reps(self, reps):
        """Matrix of sum_i f(g x_i) in the phi_w basis."""
        M = self.zero_matrix()
        for wp in self.basis:
            P = weyl.perm_matrix(wp, Fraction(1), Fraction(0))
            r = self.index[wp]
            for x in reps:
                w2, c = self.phi_at(linalg.mat_mul(P, x))
                M[r][self.index[w2]] = M[r][self.index[w2]] + c
        return M

    # generators and IM basis
    def generator(self, i):
        """Matrix of T_{s_i} (i = 0..n-1) or of T_Pi^{+-1} (i = 'pi', 'pi_inv')."""
        if i in self._gen:
            return self._gen[i]
        n, ell = self.n, self.chi.ell
        if i == "pi":
            M = self.matrix_from_reps([localmodel.monomial(bernstein.aff_pi(n), ell)])
        elif i == "pi_inv":
            M = self.matrix_from_reps([localmodel.monomial(bernstein.aff_inv(bernstein.aff_pi(n)), ell)])
        else:
            x = bernstein.aff_simple(i, n)
            M = self.matrix_from_reps(localmodel.double_coset_reps(x, self.iw))
        self._gen[i] = M
        return M

    def im_matrix(self, x):
        """Matrix of T_x, composed from generator matrices along a reduced word."""
        x = (tuple(x[0]), tuple(x[1]))
        if x in self._im:
            return self._im[x]
        word, m = bernstein.aff_reduced(x)
        M = linalg.identity(len(self.basis), self.chi.one)
        for i in word:
            M = linalg.mat_mul(M, self.generator(i))
        g = self.generator("pi" if m > 0 else "pi_inv")
        for _ in range(abs(m)):
            M = linalg.mat_mul(M, g)
        self._im[x] = M
        return M

    def im_matrix_direct(self, x):
        """Matrix of T_x from the full coset enumeration of Iw x Iw."""
        return self.matrix_from_reps(localmodel.double_coset_reps(x, self.iw))

    def hecke_matrix(self, h: bernstein.HeckeElem):
        if h.alg.n != self.n or h.alg.q != self.chi.q:
            raise ShapeError("Hecke element does not match the model")
        M = self.zero_matrix()
        for x, c in h.alg.to_im(h).items():
            M = linalg.mat_add(M, linalg.mat_scale(c, self.im_matrix(x)))
        return M

    def theta_matrix(self, lam):
        d = bernstein.dominant_shift([tuple(lam)])
        top = self.im_matrix((tuple(a + b for a, b in zip(lam, d)), weyl.identity(self.n)))
        bot = self.im_matrix((tuple(d), weyl.identity(self.n)))
        return linalg.mat_mul(top, linalg.inverse(bot))

    # parahoric invariants
    def parahoric_basis(self, mu):
        """Representatives of W / W_mu and the indicator vectors phi_[w]."""
        comp = weyl.Composition.parse(mu)
        Wm = weyl.parabolic(comp.parts)
        seen, reps, vecs = set(), [], []
        z, one = self.chi.one - self.chi.one, self.chi.one
        for w in self.basis:
            if w in seen:
                continue
            coset = {weyl.compose(w, u) for u in Wm}
            seen |= coset
            rep = min(coset, key=lambda u: (weyl.length(u), u))
            reps.append(rep)
            vecs.append([one if u in coset else z for u in self.basis])
        order = sorted(range(len(reps)), key=lambda k: reps[k])
        return [reps[k] for k in order], [vecs[k] for k in order]

    def restrict(self, M, mu):
        """Matrix of M on I(chi)^{p_mu}; checks that the subspace is stable."""
        reps, vecs = self.parahoric_basis(mu)
        B = linalg.transpose(vecs)
        MB = linalg.mat_mul(M, B)
        R = [[MB[self.index[r]][c] for c in range(len(reps))] for r in reps]
        if linalg.mat_mul(B, R) != MB:
            raise ShapeError("operator does not preserve the parahoric invariants")
        return R

    def parahoric_matrix_from_reps(self, reps_K, mu):
        """[K t K] acting on I(chi)^{p_mu} directly from its coset representatives."""
        wreps, vecs = self.parahoric_basis(mu)
        Mfull = self.matrix_from_reps(reps_K)
        B = linalg.transpose(vecs)
        MB = linalg.mat_mul(Mfull, B)
        return [[MB[self.index[r]][c] for c in range(len(wreps))] for r in wreps]


def evaluate(chi: PSeriesChar, v, g):
    return PSeriesModel(chi).evaluate(v, g)


def hecke_act(model: PSeriesModel, reps, v):
    """Apply the double coset with right-coset representatives ``reps`` to v."""
    return linalg.mat_vec(model.matrix_from_reps(reps), list(v))


# ---------------------------------------------------------------------------
# e_alpha


def _elem_sym(vals, j, one):
    total = one - one
    for sub in combinations(vals, j):
        t = one
        for x in sub:
            t = t * x
        total = total + t
    return total


@dataclass
class AlphaData:
    alpha: object
    mu: tuple
    P: list = field(default_factory=list)
    Q: list = field(default_factory=list)
    R: list = field(default_factory=list)
    k: list = field(default_factory=list)


def alpha_data(chi: PSeriesChar, alpha, mu) -> AlphaData:
    """P_j, Q_j, R_j for j = 1..n2.

    P_j has roots e_j(chi_S) over all n2-subsets S of {1..n}, R_j is the
    (X - C(n2, j) alpha^j)-primary part and Q_j the coprime cofactor.
    """
    comp = weyl.Composition.parse(mu)
    if comp.k != 2 or comp.n != chi.n:
        raise ShapeError("e_alpha needs a two-block composition of n")
    n1, n2 = comp.parts
    one = chi.one
    alpha = chi.ring(alpha) if not _is_elem_of(alpha, chi.ring) else alpha
    data = AlphaData(alpha, comp.parts)
    for j in range(1, n2 + 1):
        roots = [_elem_sym([chi.values[a] for a in S], j, one) for S in combinations(range(chi.n), n2)]
        P = UniPoly.from_roots(roots, one)
        r = alpha**j * comb(n2, j)
        kj = sum(1 for x in roots if x == r)
        R = UniPoly.from_roots([r] * kj, one)
        Qp, rem = P.divmod_monic(R)
        if rem:
            raise ShapeError("R_j does not divide P_j")  # pragma: no cover
        data.P.append(P)
        data.Q.append(Qp)
        data.R.append(R)
        data.k.append(kj)
    return data


def W_prime(chi: PSeriesChar, alpha, mu):
    """Permutations sending {n1+1..n} onto the positions of alpha in chi."""
    comp = weyl.Composition.parse(mu)
    n1 = comp.parts[0]
    alpha = chi.ring(alpha) if not _is_elem_of(alpha, chi.ring) else alpha
    pos = {i + 1 for i, v in enumerate(chi.values) if v == alpha}
    return [w for w in sorted(bernstein.all_perms(chi.n)) if set(w[n1:]) == pos]


def v_j2_reps(mu, j, spec):
    comp = weyl.Composition.parse(mu)
    n1, n2 = comp.parts
    exps = [0] * n1 + [1] * j + [0] * (n2 - j)
    return localmodel.enumerate_cosets(exps, spec, require_dominant=False)


def fitting_idempotent(E):
    """Projector onto the stable image of E along its stable kernel (over a field)."""
    n = len(E)
    Ed = linalg.mat_pow(E, n)
    img = linalg.column_space(Ed)
    ker = linalg.nullspace(Ed)
    one = linalg.one_of(E[0][0])
    z = one - one
    if len(img) + len(ker) != n:
        raise ConvergenceError("stable image and kernel do not split the space")  # pragma: no cover
    if not img:
        return linalg.zeros(n, n, z)
    C = linalg.transpose(img + ker)
    D = [[one if (i == j and i < len(img)) else z for j in range(n)] for i in range(n)]
    return linalg.mat_mul(linalg.mat_mul(C, D), linalg.inverse(C))


def factorial_power_limit(E, max_m: int = 200):
    """E^{m!} for the first m at which it is idempotent; returns (matrix, m)."""
    A = E
    for m in range(2, max_m + 1):
        if linalg.mat_mul(A, A) == A:
            return A, m - 1
        A = linalg.mat_pow(A, m)
    raise ConvergenceError(f"E^(m!) did not stabilize for m <= {max_m}")


@dataclass
class EAlphaResult:
    matrix: list
    rank: int
    basis: list
    W_prime: list
    data: AlphaData
    iterations: int | None
    level: str


def build_e_alpha(chi: PSeriesChar, alpha, mu=None, level: str = "iwahori", p: int | None = None):
    """e_alpha on I(chi)^Iw (``level='iwahori'``) or on I(chi)^{p_mu}.

    The V^{j,2} are the double cosets of diag(1^n1, w^j, 1^(n2-j)) at the
    chosen level.  In positive characteristic the limit E^{m!} is taken
    literally; in characteristic 0 the Fitting idempotent of E is returned.
    """
    n = chi.n
    comp = weyl.Composition.parse(mu if mu is not None else (n - 1, 1))
    data = alpha_data(chi, alpha, comp)
    model = PSeriesModel(chi)
    if level == "iwahori":
        spec = localmodel.ParahoricSpec.iwahori(n, chi.ell)
    elif level in ("parahoric", "parahoric_1"):
        # I(chi)^{p_1} = I(chi)^p for unramified chi; operators are taken at p level
        spec = localmodel.ParahoricSpec(comp, chi.ell)
    else:
        raise ShapeError(f"unknown level {level!r}")
    dim = len(model.basis) if level == "iwahori" else len(model.parahoric_basis(comp)[0])
    E = linalg.identity(dim, chi.one)
    for j in range(1, comp.parts[1] + 1):
        reps = v_j2_reps(comp, j, spec)
        if level == "iwahori":
            V = model.matrix_from_reps(reps)
        else:
            V = model.parahoric_matrix_from_reps(reps, comp)
        E = linalg.mat_mul(E, data.Q[j - 1].eval_matrix(V))
    if chi.ring.characteristic:
        e, iters = factorial_power_limit(E)
    else:
        e, iters = fitting_idempotent(E), None
    if linalg.mat_mul(e, e) != e:
        raise ConvergenceError("e_alpha is not idempotent")  # pragma: no cover
    basis = linalg.column_space(e)
    return EAlphaResult(e, len(basis), basis, W_prime(chi, data.alpha, comp), data, iters, level)


def image_is_coordinate_span(e, coords) -> bool:
    """Column space of e equals the span of the unit vectors at ``coords``."""
    n = len(e)
    one = linalg.one_of(e[0][0])
    z = one - one
    units = [[one if i == c else z for i in range(n)] for c in coords]
    img = linalg.column_space(e)
    return linalg.same_span(img, units) if units else not img


def c_iso_degree0(chi: PSeriesChar, alpha, mu=None):
    """Rank check that I^{G(O)} -> e_alpha I^{p} is bijective.

    Returns (rank of e_alpha on the spherical line, dim e_alpha I^p).
    """
    n = chi.n
    comp = weyl.Composition.parse(mu if mu is not None else (n - 1, 1))
    res = build_e_alpha(chi, alpha, comp, level="parahoric")
    model = PSeriesModel(chi)
    reps, _ = model.parahoric_basis(comp)
    sph = [chi.one] * len(reps)  # sum of all phi_w restricted to p-coordinates
    image = linalg.mat_vec(res.matrix, sph)
    r = 1 if any(image) else 0
    return r, res.rank


# ---------------------------------------------------------------------------
# Steinberg eigenvalues


def labeled_partitions(n, mu):
    """Ordered set partitions (S_1..S_k) of {1..n} with |S_j| = mu_j."""
    comp = weyl.Composition.parse(mu)
    out = []

    def rec(remaining, parts, acc):
        if not parts:
            out.append(tuple(acc))
            return
        for S in combinations(sorted(remaining), parts[0]):
            rec(remaining - set(S), parts[1:], acc + [S])

    rec(set(range(1, n + 1)), list(comp.parts), [])
    return out


def _qhalf(chi: PSeriesChar, twice: int):
    """q^{twice/2}."""
    if twice % 2 == 0:
        q = chi.q
        return q ** (twice // 2) if twice >= 0 else linalg.inv(q) ** (-twice // 2)
    if chi.sqrt_q is None:
        raise UnitError("half-integral q-power needs sqrt_q")
    s = chi.sqrt_q
    return s**twice if twice >= 0 else linalg.inv(s) ** (-twice)


@dataclass
class SteinbergReport:
    mu: tuple
    exponents: dict  # (i, j) -> 2c
    ok: bool
    mismatches: list
    dims: dict


def vij_matrix(model: PSeriesModel, mu, i, j, normalization: str = "raw"):
    h = bernstein.vij_element(model.alg, mu, i, j, normalization, model.chi.sqrt_q)
    return model.restrict(model.hecke_matrix(h), mu)


def steinberg_eigencheck(chi: PSeriesChar, mu, exponent_range: int = 12,
                         normalization: str = "raw") -> SteinbergReport:
    """Compare joint V^{i,j} spectra on I(chi)^{p_mu} with e_i(S_j) tuples.

    For each (i, j) the exponent 2c with charpoly(V^{i,j}) =
    prod_L (X - q^c e_i(chi_{S_j(L)})) is searched in [-range, range];
    then joint generalized eigenspace dimensions are compared per tuple.
    With ``normalization='table'`` the operators carry the tabulated q-power
    and only c = 0 is accepted.
    """
    comp = weyl.Composition.parse(mu)
    n = chi.n
    model = PSeriesModel(chi)
    parts = labeled_partitions(n, comp)
    one = chi.one
    mats, exps, mismatches = {}, {}, []
    for j in range(1, comp.k + 1):
        for i in range(1, comp.parts[j - 1] + 1):
            V = vij_matrix(model, comp, i, j, normalization)
            mats[(i, j)] = V
            cp = UniPoly(linalg.charpoly(V))
            base = [_elem_sym([chi.values[a - 1] for a in L[j - 1]], i, one) for L in parts]
            found = None
            candidates = [0] if normalization == "table" else range(-exponent_range, exponent_range + 1)
            if chi.sqrt_q is None:
                candidates = [t for t in candidates if t % 2 == 0]
            for t in sorted(candidates, key=abs):
                f = _qhalf(chi, t)
                if UniPoly.from_roots([f * b for b in base], one) == cp:
                    found = t
                    break
            if found is None:
                mismatches.append(((i, j), "no q-power matches the characteristic polynomial"))
            exps[(i, j)] = found
    dims = {}
    if not mismatches:
        d = len(parts)
        tuples = {}
        for L in parts:
            key = tuple(
                _qhalf(chi, exps[(i, j)]) * _elem_sym([chi.values[a - 1] for a in L[j - 1]], i, one)
                for (i, j) in sorted(mats)
            )
            tuples[key] = tuples.get(key, 0) + 1
        total = 0
        for key, mult in tuples.items():
            stack = []
            for (ij, t) in zip(sorted(mats), key):
                A = linalg.mat_sub(mats[ij], linalg.mat_scale(t, linalg.identity(d, one)))
                stack += linalg.mat_pow(A, d)
            nul = d - linalg.rank(stack)
            dims[key] = nul
            total += nul
            if nul != mult:
                mismatches.append((key, f"joint eigenspace dim {nul} != multiplicity {mult}"))
        if total != d:
            mismatches.append(("total", f"{total} != {d}"))
    return SteinbergReport(comp.parts, exps, not mismatches, mismatches, {str(k): v for k, v in dims.items()})
