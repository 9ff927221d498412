"""Core constructions indexed by a group specification.

A GroupSpec names one quantum Cayley-Klein orthogonal group: the size N,
the permutation sigma distributing the contraction parameters, and the
value assigned to each parameter j_1 .. j_{N-1}.  From it this module
builds the rho vector, range products, the J monomial, the generating
matrix, the basis-change matrix D, the metric matrices and the Cartesian
R-matrix.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .scalars import (Coeff, C_ZERO, C_ONE, C_I, CKValue, ExpScalar,
                      pm_one, pm_mul, pm_union)
from .tensoralg import Matrix, NCPoly


class GroupSpec:
    """(N, sigma, parameter assignment); sigma is a tuple over 1..N."""

    __slots__ = ("N", "sigma", "assignment")

    def __init__(self, N, sigma, assignment):
        sigma = tuple(sigma)
        assignment = tuple(assignment)
        if sorted(sigma) != list(range(1, N + 1)):
            raise ValueError("sigma must be a permutation of 1..%d" % N)
        if len(assignment) != N - 1:
            raise ValueError("assignment must have length N-1")
        if not all(isinstance(a, CKValue) for a in assignment):
            raise ValueError("assignment entries must be CKValue")
        self.N = N
        self.sigma = sigma
        self.assignment = assignment

    @property
    def n(self):
        return self.N // 2

    @property
    def nparams(self):
        return self.N - 1

    @property
    def nil_set(self):
        return frozenset(k + 1 for k, a in enumerate(self.assignment)
                         if a is CKValue.NIL)

    def __eq__(self, other):
        if not isinstance(other, GroupSpec):
            return NotImplemented
        return (self.N, self.sigma, self.assignment) == \
            (other.N, other.sigma, other.assignment)

    def __hash__(self):
        return hash((self.N, self.sigma, self.assignment))

    def __repr__(self):
        return "GroupSpec(N=%d, sigma=%s, j=%s)" % (
            self.N, list(self.sigma), [a.value for a in self.assignment])

    # -- JSON round trip ----------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.N, "sigma": list(self.sigma),
                "j": [a.value for a in self.assignment]}

    @classmethod
    def from_json(cls, data) -> "GroupSpec":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            N = int(data["n"])
            sigma = [int(s) for s in data["sigma"]]
            assignment = [CKValue(v) for v in data["j"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError("bad group spec: %s" % exc)
        return cls(N, sigma, assignment)

    @classmethod
    def formal(cls, N, sigma=None) -> "GroupSpec":
        sigma = sigma or range(1, N + 1)
        return cls(N, sigma, [CKValue.FORMAL] * (N - 1))

    def with_assignment(self, assignment) -> "GroupSpec":
        return GroupSpec(self.N, self.sigma, assignment)


def spec_with_nil(N, sigma, S) -> GroupSpec:
    """Spec with the 1-based indices in S nilpotent, the rest formal."""
    a = [CKValue.NIL if (k + 1) in S else CKValue.FORMAL
         for k in range(N - 1)]
    return GroupSpec(N, sigma, a)


def primed(k: int, N: int) -> int:
    return N + 1 - k


def rho(N) -> list:
    """Half-integer weight vector, antisymmetric about the middle."""
    n = N // 2
    if N % 2:
        return [Fraction(2 * (n - k) - 1, 2) for k in range(n)] + \
            [Fraction(0)] + \
            [Fraction(-(2 * k + 1), 2) for k in range(n)]
    return [Fraction(n - 1 - k) for k in range(n)] + \
        [Fraction(-1 - k) + 1 for k in range(n)]


def two_rho(N) -> list:
    """2*rho as exact integers (t-exponents)."""
    out = []
    for r in rho(N):
        v = 2 * r
        assert v.denominator == 1
        out.append(int(v))
    return out


def range_product(k: int, p: int, N: int) -> tuple:
    """Product of j_l over the interval between positions k and p."""
    lo, hi = min(k, p), max(k, p)
    return tuple(1 if lo <= l <= hi - 1 else 0 for l in range(1, N))


def J_of(spec: GroupSpec) -> tuple:
    """Squarefree union of the range products (sigma_k, sigma_k')."""
    J = pm_one(spec.nparams)
    for k in range(1, spec.n + 1):
        J = pm_union(J, range_product(spec.sigma[k - 1],
                                      spec.sigma[primed(k, spec.N) - 1],
                                      spec.N))
    return J


def generating_matrix(spec: GroupSpec) -> Matrix:
    """Entry (i,k) = (sigma_i, sigma_k) * u_{sigma_i sigma_k}."""
    np = spec.nparams
    zero = NCPoly.zero(np)
    m = Matrix.filled(spec.N, spec.N, zero)
    for i in range(spec.N):
        for k in range(spec.N):
            a, b = spec.sigma[i], spec.sigma[k]
            coeff = ExpScalar.from_pm(np, range_product(a, b, spec.N))
            m.entries[i][k] = NCPoly.gen(np, a, b, coeff)
    return m


def d_matrix(N):
    """Basis-change matrix (D, D^{-1}) satisfying D^t C0 D = I.

    D^{-1} has the block form (1/sqrt2) [[I, 0, K], [0, sqrt2, 0],
    [iK, 0, -iI]] for odd N, with K the n x n antidiagonal; even N drops
    the middle row and column.  D is the closed-form inverse.
    """
    n = N // 2
    odd = N % 2
    half_r2 = Coeff(0, 0, Fraction(1, 2))        # 1/sqrt2
    half_r2_i = Coeff(0, 0, 0, Fraction(1, 2))   # i/sqrt2
    Dinv = Matrix.filled(N, N, C_ZERO)
    D = Matrix.filled(N, N, C_ZERO)
    for k in range(n):
        ak = n - 1 - k                       # antidiagonal partner in a block
        lo = lambda j: n + odd + j           # index into the lower block
        Dinv.entries[k][k] = half_r2
        Dinv.entries[k][lo(ak)] = half_r2
        Dinv.entries[lo(k)][ak] = half_r2_i
        Dinv.entries[lo(k)][lo(k)] = -half_r2_i
        D.entries[k][k] = half_r2
        D.entries[k][lo(ak)] = -half_r2_i
        D.entries[lo(k)][ak] = half_r2
        D.entries[lo(k)][lo(k)] = half_r2_i
    if odd:
        Dinv.entries[n][n] = C_ONE
        D.entries[n][n] = C_ONE
    return D, Dinv


def _lift(mat: Matrix, nparams: int) -> Matrix:
    """Coeff matrix -> ExpScalar matrix."""
    zero = ExpScalar.zero(nparams)
    return mat.map(lambda c: ExpScalar.const(nparams, c), zero)


def c0_matrix(N, nparams=None) -> Matrix:
    np = N - 1 if nparams is None else nparams
    zero = ExpScalar.zero(np)
    m = Matrix.filled(N, N, zero)
    for i in range(N):
        m.entries[i][primed(i + 1, N) - 1] = ExpScalar.one(np)
    return m


def c_matrices(spec: GroupSpec):
    """(C0, C_v, C-tilde, C-tilde inverse), entries ExpScalar.

    C_v has entries t^{2 rho_{i'}} on the antidiagonal; the tilde versions
    are the D-conjugated metric and its exact inverse.
    """
    N, np = spec.N, spec.nparams
    tr = two_rho(N)
    zero = ExpScalar.zero(np)
    C0 = c0_matrix(N, np)
    Cv = Matrix.filled(N, N, zero)
    Cv_inv = Matrix.filled(N, N, zero)
    for i in range(N):
        ip = primed(i + 1, N) - 1
        Cv.entries[i][ip] = ExpScalar.t_pow(np, tr[ip])
        Cv_inv.entries[i][ip] = ExpScalar.t_pow(np, -tr[i])
    D, Dinv = d_matrix(N)
    Dl, Dinvl = _lift(D, np), _lift(Dinv, np)
    Ct = Dinvl * Cv * Dinvl.transpose()
    Ct_inv = Dl.transpose() * Cv_inv * Dl
    return C0, Cv, Ct, Ct_inv


# ---------------------------------------------------------------------------
# Cartesian R-matrix.

def _e_unit_index(kp, mr, N):
    """Row/col of e_{kp} (x) e_{mr} in the N^2 x N^2 layout."""
    (k, p), (m, r) = kp, mr
    return ((k - 1) * N + (m - 1), (p - 1) * N + (r - 1))


def r_tilde(spec: GroupSpec) -> Matrix:
    """Cartesian R-matrix as an N^2 x N^2 ExpScalar matrix.

    Assembled term by term as the identity plus correction sums over
    matrix units; every correction coefficient vanishes at t = 1.  Odd N
    has the two middle-index sums; even N omits them and lets the
    quarter-lambda sums range over all index pairs k > p.
    """
    N, np = spec.N, spec.nparams
    if N < 3:
        raise ValueError("R-matrix needs N >= 3")
    n = N // 2
    odd = N % 2
    tr = two_rho(N)

    lam = ExpScalar(np, {(2, 0, pm_one(np)): C_ONE,
                         (-2, 0, pm_one(np)): -C_ONE})
    half = Coeff(Fraction(1, 2))
    quarter = Coeff(Fraction(1, 4))
    # (1/2)(q-1)(1-q^{-1}) = (t^2 - 2 + t^-2)/2
    c0 = ExpScalar(np, {(2, 0, pm_one(np)): half,
                        (0, 0, pm_one(np)): -C_ONE,
                        (-2, 0, pm_one(np)): half})

    R = Matrix.identity(N * N, ExpScalar.one(np), ExpScalar.zero(np))

    def add(coeff: ExpScalar, kp, mr):
        i, j = _e_unit_index(kp, mr, N)
        R.entries[i][j] = R.entries[i][j] + coeff

    lam_half = lam.scale(half)
    for k in range(1, N + 1):
        kp = primed(k, N)
        if k == kp:
            continue
        add(c0, (k, k), (k, k))
        add(c0, (k, k), (kp, kp))
        add(lam_half, (kp, k), (k, kp))
        add(-lam_half, (kp, k), (kp, k))

    if odd:
        mid = n + 1
        for k in range(1, n + 1):
            kp = primed(k, N)
            for sign, a, b in (
                    (C_ONE, (kp, mid), (mid, kp)),
                    (-C_I, (kp, mid), (mid, k)),
                    (C_I, (k, mid), (mid, kp)),
                    (C_ONE, (k, mid), (mid, k)),
                    (C_ONE, (mid, k), (k, mid)),
                    (C_I, (mid, k), (kp, mid)),
                    (-C_I, (mid, kp), (k, mid)),
                    (C_ONE, (mid, kp), (kp, mid))):
                add(lam_half.scale(sign), a, b)
            qmr = ExpScalar.t_pow(np, -tr[k - 1])
            coeff = -(lam_half * qmr)
            for sign, a, b in (
                    (-C_I, (kp, mid), (k, mid)),
                    (C_ONE, (kp, mid), (kp, mid)),
                    (C_ONE, (k, mid), (k, mid)),
                    (C_I, (k, mid), (kp, mid)),
                    (C_I, (mid, k), (mid, kp)),
                    (C_ONE, (mid, k), (mid, k)),
                    (C_ONE, (mid, kp), (mid, kp)),
                    (-C_I, (mid, kp), (mid, k))):
                add(coeff.scale(sign), a, b)

    lam_q = lam.scale(quarter)
    mid = n + 1 if odd else None
    for k in range(1, N + 1):
        if k == mid:
            continue
        for p in range(1, k):
            if p == mid:
                continue
            kp, pp = primed(k, N), primed(p, N)
            for sign, a, b in (
                    (C_ONE, (k, p), (p, k)),
                    (C_ONE, (k, p), (pp, kp)),
                    (C_I, (k, p), (pp, k)),
                    (-C_I, (k, p), (p, kp)),
                    (C_ONE, (kp, pp), (p, k)),
                    (C_ONE, (kp, pp), (pp, kp)),
                    (C_I, (kp, pp), (pp, k)),
                    (-C_I, (kp, pp), (p, kp)),
                    (C_I, (kp, p), (p, k)),
                    (C_I, (kp, p), (pp, kp)),
                    (-C_ONE, (kp, p), (pp, k)),
                    (C_ONE, (kp, p), (p, kp)),
                    (-C_I, (k, pp), (p, k)),
                    (-C_I, (k, pp), (pp, kp)),
                    (C_ONE, (k, pp), (pp, k)),
                    (-C_ONE, (k, pp), (p, kp))):
                add(lam_q.scale(sign), a, b)
            coeff = -(lam_q * ExpScalar.t_pow(np, tr[k - 1] - tr[p - 1]))
            for sign, a, b in (
                    (C_ONE, (k, p), (kp, pp)),
                    (C_ONE, (k, p), (k, p)),
                    (C_I, (k, p), (k, pp)),
                    (-C_I, (k, p), (kp, p)),
                    (C_ONE, (kp, pp), (kp, pp)),
                    (C_ONE, (kp, pp), (k, p)),
                    (C_I, (kp, pp), (k, pp)),
                    (-C_I, (kp, pp), (kp, p)),
                    (C_I, (kp, p), (kp, pp)),
                    (C_I, (kp, p), (k, p)),
                    (-C_ONE, (kp, p), (k, pp)),
                    (C_ONE, (kp, p), (kp, p)),
                    (-C_I, (k, pp), (kp, pp)),
                    (-C_I, (k, pp), (k, p)),
                    (C_ONE, (k, pp), (k, pp)),
                    (-C_ONE, (k, pp), (kp, p))):
                add(coeff.scale(sign), a, b)
    return R
