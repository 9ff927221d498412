"""Hopf-algebra data of the quantum Cayley-Klein group.

Generates the defining commutation relations (RUU), both orthogonality
families, coproduct, counit, and the antipode, in two independent ways
where a closed form exists, so they can be cross-checked.

Relations are stored as polynomials understood as "= 0"; scalar
coefficients stay in the formal phase (t-monomials, parameter monomials),
never as fractions: anything the source formulas divide by a parameter
monomial is kept multiplied through.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import (Coeff, C_ZERO, C_ONE, C_I, ExpScalar, pm_one, pm_mul,
                      pm_divides, pm_div, NonDivisible)
from .tensoralg import Matrix, NCPoly, TensorPoly
from .ckcore import (GroupSpec, range_product, primed, two_rho, J_of,
                     generating_matrix, c_matrices, r_tilde)

C_HALF = Coeff(Fraction(1, 2))


class InternalError(Exception):
    """Bookkeeping invariant broke (indexing bug, not user input)."""


class RelationSet:
    """Ordered list of (tag, polynomial) pairs, each read as poly = 0."""

    def __init__(self, items):
        self.items = list(items)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def polys(self):
        return [p for _, p in self.items]

    def nonzero(self):
        return RelationSet((t, p) for t, p in self.items if p)

    def render_lines(self):
        return ["%s: %s" % (tag, p.render()) for tag, p in self.items]


def _lift_scalar_matrix(M: Matrix, np: int) -> Matrix:
    return M.map(NCPoly.from_scalar, NCPoly.zero(np))


def _nc_identity(N, np):
    return Matrix.identity(N, NCPoly.one(np), NCPoly.zero(np))


def ruu_relations(spec: GroupSpec) -> RelationSet:
    """Entries of R U1 U2 - U2 U1 R, tagged by row/column of the big matrix."""
    N, np = spec.N, spec.nparams
    U = generating_matrix(spec)
    R = _lift_scalar_matrix(r_tilde(spec), np)
    I = _nc_identity(N, np)
    from .tensoralg import kron
    U1 = kron(U, I)
    U2 = kron(I, U)
    diff = R * U1 * U2 - U2 * U1 * R
    items = []
    for i in range(N * N):
        for k in range(N * N):
            items.append(("RUU(%d,%d)" % (i + 1, k + 1), diff.entries[i][k]))
    return RelationSet(items)


def orthogonality_relations(spec: GroupSpec):
    """(entries of U Ct U^t - Ct, entries of U^t Cti U - Cti)."""
    N, np = spec.N, spec.nparams
    U = generating_matrix(spec)
    _, _, Ct, Cti = c_matrices(spec)
    Ctl = _lift_scalar_matrix(Ct, np)
    Ctil = _lift_scalar_matrix(Cti, np)
    first = U * Ctl * U.transpose() - Ctl
    second = U.transpose() * Ctil * U - Ctil
    items1 = [("ORT1(%d,%d)" % (i + 1, k + 1), first.entries[i][k])
              for i in range(N) for k in range(N)]
    items2 = [("ORT2(%d,%d)" % (i + 1, k + 1), second.entries[i][k])
              for i in range(N) for k in range(N)]
    return RelationSet(items1), RelationSet(items2)


def coproduct(spec: GroupSpec) -> Matrix:
    """Matrix of coproducts of the bare generators.

    Entry (i,k) is Delta(u_{sigma_i sigma_k}) = sum_r C_ikr
    u_{sigma_i sigma_r} (x) u_{sigma_r sigma_k}; the multiplier C_ikr is
    always a parameter monomial (the range products cancel), anything else
    is an internal error.
    """
    N, np = spec.N, spec.nparams
    out = Matrix.filled(N, N, TensorPoly.zero(np))
    for i in range(N):
        for k in range(N):
            si, sk = spec.sigma[i], spec.sigma[k]
            total = TensorPoly.zero(np)
            for r in range(N):
                sr = spec.sigma[r]
                num = pm_mul(range_product(si, sr, N),
                             range_product(sr, sk, N))
                den = range_product(si, sk, N)
                if not pm_divides(den, num):
                    raise InternalError("coproduct multiplier not polynomial"
                                        " at (%d,%d,%d)" % (si, sk, sr))
                coeff = ExpScalar.from_pm(np, pm_div(num, den))
                total = total + TensorPoly(np, 2, {
                    ((((si, sr),)), (((sr, sk),))): coeff})
            out.entries[i][k] = total
    return out


def counit(spec: GroupSpec) -> dict:
    """Map generator pair (a,b) -> 0/1 for generators present in the group."""
    eps = {}
    for i in range(spec.N):
        for k in range(spec.N):
            a, b = spec.sigma[i], spec.sigma[k]
            eps[(a, b)] = 1 if a == b else 0
    return eps


def antipode_matrix(spec: GroupSpec) -> Matrix:
    """S applied to the scaled generating matrix: Ct U^t Cti.

    Entry (i,k) equals (sigma_i, sigma_k) * S(u_{sigma_i sigma_k}); the
    scale keeps every coefficient polynomial in the formal phase.
    """
    np = spec.nparams
    U = generating_matrix(spec)
    _, _, Ct, Cti = c_matrices(spec)
    return _lift_scalar_matrix(Ct, np) * U.transpose() * \
        _lift_scalar_matrix(Cti, np)


def _cosh_sinh(np, m):
    """(cosh, sinh) of (Jv * rho) as t-monomials, t-exponent 2*rho = m."""
    if m == 0:
        return ExpScalar.one(np), ExpScalar.zero(np)
    ch = ExpScalar(np, {(m, 0, pm_one(np)): C_HALF,
                        (-m, 0, pm_one(np)): C_HALF})
    sh = ExpScalar(np, {(m, 0, pm_one(np)): C_HALF,
                        (-m, 0, pm_one(np)): -C_HALF})
    return ch, sh


def antipode_closed_form(spec: GroupSpec) -> Matrix:
    """Independent antipode from the positional closed form.

    For row position a and column position b (primes are positional,
    a' = N+1-a), the cleared entry is

      (s_a,s_b) S(u_{s_a s_b}) =
          u_{s_b s_a} (s_a,s_b) cosh_a cosh_b
        - u_{s_b' s_a'} (s_a',s_b') sinh_a sinh_b
        + i u_{s_b s_a'} (s_a',s_b) sinh_a cosh_b
        + i u_{s_b' s_a} (s_a,s_b') cosh_a sinh_b

    with cosh_a = cosh(Jv rho_a) etc.  The eight positional cases of the
    half-split formulation all specialize from this single expression, and
    the even case needs no extra branch (rho handles the missing middle).
    """
    N, np = spec.N, spec.nparams
    tr = two_rho(N)
    sig = spec.sigma
    out = Matrix.filled(N, N, NCPoly.zero(np))

    def rp(x, y):
        return range_product(sig[x - 1], sig[y - 1], N)

    def gen(x, y, coeff):
        return NCPoly.gen(np, sig[x - 1], sig[y - 1], coeff)

    for a in range(1, N + 1):
        ch_a, sh_a = _cosh_sinh(np, tr[a - 1])
        ap = primed(a, N)
        for b in range(1, N + 1):
            ch_b, sh_b = _cosh_sinh(np, tr[b - 1])
            bp = primed(b, N)
            entry = gen(b, a, ExpScalar.from_pm(np, rp(a, b)) * ch_a * ch_b)
            entry = entry - gen(bp, ap, ExpScalar.from_pm(np, rp(ap, bp))
                                * sh_a * sh_b)
            entry = entry + gen(b, ap, ExpScalar.from_pm(np, rp(ap, b))
                                .scale(C_I) * sh_a * ch_b)
            entry = entry + gen(bp, a, ExpScalar.from_pm(np, rp(a, bp))
                                .scale(C_I) * ch_a * sh_b)
            out.entries[a - 1][b - 1] = entry
    return out


def antipode_bare(spec: GroupSpec, matrix=None) -> dict:
    """Map (a,b) -> S(u_{ab}) where the range-product division is exact.

    Raises NonDivisible when an entry's antipode is not polynomial in the
    bare generator (possible in the formal phase for off-middle entries).
    """
    N, np = spec.N, spec.nparams
    S = matrix if matrix is not None else antipode_matrix(spec)
    out = {}
    for i in range(N):
        for k in range(N):
            a, b = spec.sigma[i], spec.sigma[k]
            d = range_product(a, b, N)
            out[(a, b)] = S.entries[i][k].map_coeff(
                lambda c: c.divide_param(d))
    return out


# ---------------------------------------------------------------------------
# Hopf axiom verification.

def check_coassociativity(spec: GroupSpec, delta=None):
    """(Delta x id) Delta = (id x Delta) Delta on every generator."""
    N, np = spec.N, spec.nparams
    sig = spec.sigma

    def cmul(i, k, r):
        num = pm_mul(range_product(sig[i], sig[r], N),
                     range_product(sig[r], sig[k], N))
        return ExpScalar.from_pm(np, pm_div(num,
                                            range_product(sig[i], sig[k], N)))

    failures = []
    for i in range(N):
        for k in range(N):
            lhs = TensorPoly.zero(np, 3)
            rhs = TensorPoly.zero(np, 3)
            for r in range(N):
                c = cmul(i, k, r)
                for s in range(N):
                    w = lambda x, y: (((sig[x], sig[y]),))
                    lhs = lhs + TensorPoly(np, 3, {
                        (w(i, s), w(s, r), w(r, k)): c * cmul(i, r, s)})
                    rhs = rhs + TensorPoly(np, 3, {
                        (w(i, r), w(r, s), w(s, k)): c * cmul(r, k, s)})
            if lhs != rhs:
                failures.append(("coassoc", i + 1, k + 1))
    return failures


def check_counit(spec: GroupSpec):
    """(eps x id) Delta = id = (id x eps) Delta on every generator."""
    N, np = spec.N, spec.nparams
    eps = counit(spec)
    delta = coproduct(spec)
    failures = []
    for i in range(N):
        for k in range(N):
            left = NCPoly.zero(np)
            right = NCPoly.zero(np)
            for (w1, w2), c in delta.entries[i][k].terms.items():
                e1 = 1
                for ab in w1:
                    e1 *= eps[ab]
                e2 = 1
                for ab in w2:
                    e2 *= eps[ab]
                if e1:
                    left = left + NCPoly(np, {w2: c})
                if e2:
                    right = right + NCPoly(np, {w1: c})
            expected = NCPoly.gen(np, spec.sigma[i], spec.sigma[k])
            if left != expected or right != expected:
                failures.append(("counit", i + 1, k + 1))
    return failures


def check_antipode_factorization(spec: GroupSpec):
    """S(U)U - I and U S(U) - I as exact combinations of orthogonality.

    Uses the identities S(U)U - I = Ct (U^t Cti U - Cti) and
    U S(U) - I = (U Ct U^t - Ct) Cti, comparing both sides entrywise.
    """
    N, np = spec.N, spec.nparams
    U = generating_matrix(spec)
    _, _, Ct, Cti = c_matrices(spec)
    Ctl = _lift_scalar_matrix(Ct, np)
    Ctil = _lift_scalar_matrix(Cti, np)
    S = Ctl * U.transpose() * Ctil
    I = _nc_identity(N, np)
    failures = []
    if S * U - I != Ctl * (U.transpose() * Ctil * U - Ctil):
        failures.append(("antipode-left",))
    if U * S - I != (U * Ctl * U.transpose() - Ctl) * Ctil:
        failures.append(("antipode-right",))
    return failures


def verify_hopf_axioms(spec: GroupSpec) -> list:
    """All axiom checks; returns the list of failures (empty = pass)."""
    return (check_coassociativity(spec) + check_counit(spec)
            + check_antipode_factorization(spec))


# ---------------------------------------------------------------------------
# Closed-form orthogonality families (verification targets only).
#
# These transcribe the per-entry expansions of the two orthogonality
# matrix equations for odd N, indexed by row/column position; the
# generated relations from orthogonality_relations must match them.

def _a3_context(spec):
    N, np = spec.N, spec.nparams
    n = N // 2
    sig = spec.sigma
    tr = two_rho(N)

    def rp(x, y):
        return ExpScalar.from_pm(np, range_product(sig[x - 1], sig[y - 1], N))

    def u(x, y):
        return ((sig[x - 1], sig[y - 1]),)

    def chsh(pos):
        return _cosh_sinh(np, tr[pos - 1])

    return N, np, n, rp, u, chsh


def a3_first_family(spec: GroupSpec) -> dict:
    """Entries of U Ct U^t - Ct by closed form, keyed by (row, col) position.

    Only odd N; tags name the nine row/column blocks (low,
    mid, high).  Two sinh
    layouts occur in the source expansions: layout A primes the first
    factor's column index, layout B primes the second factor's.
    """
    if spec.N % 2 == 0:
        raise ValueError("closed forms are stated for odd N")
    N, np, n, rp, u, chsh = _a3_context(spec)
    mid = n + 1
    out = {}
    one = ExpScalar.one(np)

    def pair(r, a, c, b, coeff):
        # u_{sig_r sig_a} u_{sig_c sig_b} with its range products
        return NCPoly(np, {u(r, a) + u(c, b): rp(r, a) * rp(c, b) * coeff})

    def body_a(row, col):
        total = pair(row, mid, col, mid, one)
        for s in range(1, n + 1):
            ch_s, sh_s = chsh(s)
            ch_hs, sh_hs = chsh(mid - s)      # rho_{n+1-s}
            total = total + pair(row, s, col, s, ch_s)
            total = total + pair(row, mid + s, col, mid + s, ch_hs)
            total = total + pair(row, mid - s, col, mid + s,
                                 sh_hs.scale(C_I))
            total = total - pair(row, primed(s, N), col, s,
                                 sh_s.scale(C_I))
        return total

    def body_b(row, col):
        total = pair(row, mid, col, mid, one)
        for s in range(1, n + 1):
            ch_s, sh_s = chsh(s)
            ch_hs, sh_hs = chsh(mid - s)
            total = total + pair(row, s, col, s, ch_s)
            total = total + pair(row, s, col, primed(s, N),
                                 sh_s.scale(C_I))
            total = total + pair(row, mid + s, col, mid + s, ch_hs)
            total = total - pair(row, mid + s, col, mid - s,
                                 sh_hs.scale(C_I))
        return total

    for k in range(1, n + 1):
        for p in range(1, n + 1):
            ch_k, sh_k = chsh(k)
            ch_hk, _ = chsh(mid - k)
            _, sh_p = chsh(p)
            rel = body_a(k, p)
            if k == p:
                rel = rel - NCPoly.from_scalar(ch_k)
            out[("low-low", k, p)] = rel
            rel = body_a(mid + k, mid + p)
            if k == p:
                rel = rel - NCPoly.from_scalar(ch_hk)
            out[("high-high", mid + k, mid + p)] = rel
            rel = body_a(k, mid + p)
            if p == mid - k:
                rel = rel - NCPoly.from_scalar(sh_k.scale(C_I))
            out[("low-high", k, mid + p)] = rel
            rel = body_a(mid + k, p)
            if p == mid - k:
                rel = rel + NCPoly.from_scalar(sh_p.scale(C_I))
            out[("high-low", mid + k, p)] = rel

    out[("mid-mid", mid, mid)] = body_b(mid, mid) - NCPoly.one(np)
    for k in range(1, n + 1):
        out[("low-mid", k, mid)] = body_b(k, mid)
        out[("mid-low", mid, k)] = body_a(mid, k)
        out[("mid-high", mid, mid + k)] = body_a(mid, mid + k)
        out[("high-mid", mid + k, mid)] = body_b(mid + k, mid)
    return out


def a3_second_family(spec: GroupSpec, corrected=False) -> dict:
    """Entries of U^t Cti U - Cti by closed form, keyed by position.

    The verbatim mid-low family repeats the cosh term's row indices in its
    second sinh term, which cannot match any entry of the matrix product
    (the transcription is kept verbatim so the discrepancy is visible);
    ``corrected=True`` swaps that single row index to its reflection,
    after which every family agrees with the generated relations.
    """
    if spec.N % 2 == 0:
        raise ValueError("closed forms are stated for odd N")
    N, np, n, rp, u, chsh = _a3_context(spec)
    mid = n + 1
    one = ExpScalar.one(np)
    out = {}

    def pair(r, a, c, b, coeff):
        return NCPoly(np, {u(r, a) + u(c, b): rp(r, a) * rp(c, b) * coeff})

    def body(cola, colb):
        total = pair(mid, cola, mid, colb, one)
        for s in range(1, n + 1):
            ch_s, sh_s = chsh(s)
            ch_hs, sh_hs = chsh(mid - s)
            total = total + pair(s, cola, s, colb, ch_s)
            total = total + pair(mid + s, cola, mid + s, colb, ch_hs)
            total = total + pair(primed(s, N), cola, s, colb,
                                 sh_s.scale(C_I))
            total = total - pair(mid - s, cola, mid + s, colb,
                                 sh_hs.scale(C_I))
        return total

    for k in range(1, n + 1):
        for p in range(1, n + 1):
            ch_k, sh_k = chsh(k)
            ch_hk, _ = chsh(mid - k)
            _, sh_p = chsh(p)
            rel = body(k, p)
            if k == p:
                rel = rel - NCPoly.from_scalar(ch_k)
            out[("low-low", k, p)] = rel
            rel = body(mid + k, mid + p)
            if k == p:
                rel = rel - NCPoly.from_scalar(ch_hk)
            out[("high-high", mid + k, mid + p)] = rel
            rel = body(k, mid + p)
            if p == mid - k:
                rel = rel + NCPoly.from_scalar(sh_k.scale(C_I))
            out[("low-high", k, mid + p)] = rel
            rel = body(mid + k, p)
            if p == mid - k:
                rel = rel - NCPoly.from_scalar(sh_p.scale(C_I))
            out[("high-low", mid + k, p)] = rel

    total = NCPoly(np, {u(mid, mid) + u(mid, mid): one})
    for k in range(1, n + 1):
        ch_k, sh_k = chsh(k)
        ch_hk, sh_hk = chsh(mid - k)
        total = total + pair(k, mid, k, mid, ch_k)
        total = total + pair(mid + k, mid, mid + k, mid, ch_hk)
        total = total + pair(mid + k, mid, mid - k, mid, sh_hk.scale(C_I))
        total = total - pair(k, mid, primed(k, N), mid, sh_k.scale(C_I))
    out[("mid-mid", mid, mid)] = total - NCPoly.one(np)

    for k in range(1, n + 1):
        total = pair(mid, k, mid, mid, one)
        for p in range(1, n + 1):
            ch_p, sh_p = chsh(p)
            ch_hp, sh_hp = chsh(mid - p)
            total = total + pair(p, k, p, mid, ch_p)
            total = total + pair(mid + p, k, mid + p, mid, ch_hp)
            inner = pair(p, k, primed(p, N), mid, sh_p) - \
                pair(mid + p, k, mid - p, mid, sh_hp)
            total = total - inner.map_coeff(lambda c: c.scale(C_I))
        out[("low-mid", k, mid)] = total

        total = pair(mid, mid, mid, k, one)
        for p in range(1, n + 1):
            ch_p, sh_p = chsh(p)
            ch_hp, sh_hp = chsh(mid - p)
            total = total + pair(p, mid, p, k, ch_p)
            total = total + pair(mid + p, mid, mid + p, k, ch_hp)
            second_row = mid - p if corrected else mid + p
            inner = pair(primed(p, N), mid, p, k, sh_p) - \
                pair(second_row, mid, mid + p, k, sh_hp)
            total = total + inner.map_coeff(lambda c: c.scale(C_I))
        out[("mid-low", mid, k)] = total

        total = pair(mid, mid, mid, mid + k, one)
        for p in range(1, n + 1):
            ch_p, sh_p = chsh(p)
            ch_hp, sh_hp = chsh(mid - p)
            total = total + pair(p, mid, p, mid + k, ch_p)
            total = total + pair(mid + p, mid, mid + p, mid + k, ch_hp)
            inner = pair(primed(p, N), mid, p, mid + k, sh_p) - \
                pair(mid - p, mid, mid + p, mid + k, sh_hp)
            total = total + inner.map_coeff(lambda c: c.scale(C_I))
        out[("mid-high", mid, mid + k)] = total

        total = pair(mid, mid + k, mid, mid, one)
        for p in range(1, n + 1):
            ch_p, sh_p = chsh(p)
            ch_hp, sh_hp = chsh(mid - p)
            total = total + pair(p, mid + k, p, mid, ch_p)
            total = total + pair(mid + p, mid + k, mid + p, mid, ch_hp)
            inner = pair(p, mid + k, primed(p, N), mid, sh_p) - \
                pair(mid + p, mid + k, mid - p, mid, sh_hp)
            total = total - inner.map_coeff(lambda c: c.scale(C_I))
        out[("high-mid", mid + k, mid)] = total
    return out
