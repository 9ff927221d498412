"""Exact coefficient tower for the Cayley-Klein engine.

Coefficients live in Q(i, sqrt2): Gaussian rationals extended by sqrt(2).
On top of that sit Laurent monomials in t (with t**2 = q, the deformation
parameter), polynomial powers of v, and formal parameter monomials
j_1 .. j_{N-1}.  A set of "nilpotent" parameter indices may be attached to
a scalar; any product term carrying a square of a nilpotent parameter is
dropped.
"""

from __future__ import annotations

from fractions import Fraction
from enum import Enum


class NonDivisible(Exception):
    """Raised when exact division by a parameter monomial fails."""


class ContextMismatch(Exception):
    """Raised when operands belong to different parameter contexts."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Coeff:
    """Element (a_re + a_im*i) + (b_re + b_im*i)*sqrt(2) with rational parts.

    Immutable; all arithmetic is exact and the representation is canonical
    (Fractions are always in lowest terms), so == is structural equality.
    """

    __slots__ = ("a_re", "a_im", "b_re", "b_im")

    def __init__(self, a_re=0, a_im=0, b_re=0, b_im=0):
        object.__setattr__(self, "a_re", _frac(a_re))
        object.__setattr__(self, "a_im", _frac(a_im))
        object.__setattr__(self, "b_re", _frac(b_re))
        object.__setattr__(self, "b_im", _frac(b_im))

    def __setattr__(self, *a):
        raise AttributeError("Coeff is immutable")

    def __bool__(self):
        return bool(self.a_re or self.a_im or self.b_re or self.b_im)

    def __eq__(self, other):
        if not isinstance(other, Coeff):
            return NotImplemented
        return (self.a_re == other.a_re and self.a_im == other.a_im
                and self.b_re == other.b_re and self.b_im == other.b_im)

    def __hash__(self):
        return hash((self.a_re, self.a_im, self.b_re, self.b_im))

    def __add__(self, other):
        return Coeff(self.a_re + other.a_re, self.a_im + other.a_im,
                     self.b_re + other.b_re, self.b_im + other.b_im)

    def __sub__(self, other):
        return Coeff(self.a_re - other.a_re, self.a_im - other.a_im,
                     self.b_re - other.b_re, self.b_im - other.b_im)

    def __neg__(self):
        return Coeff(-self.a_re, -self.a_im, -self.b_re, -self.b_im)

    def __mul__(self, other):
        # (a1 + b1 r)(a2 + b2 r) = (a1 a2 + 2 b1 b2) + (a1 b2 + b1 a2) r,
        # with Gaussian products in each slot.
        a1r, a1i, b1r, b1i = self.a_re, self.a_im, self.b_re, self.b_im
        a2r, a2i, b2r, b2i = other.a_re, other.a_im, other.b_re, other.b_im
        return Coeff(
            a1r * a2r - a1i * a2i + 2 * (b1r * b2r - b1i * b2i),
            a1r * a2i + a1i * a2r + 2 * (b1r * b2i + b1i * b2r),
            a1r * b2r - a1i * b2i + b1r * a2r - b1i * a2i,
            a1r * b2i + a1i * b2r + b1r * a2i + b1i * a2r,
        )

    def inv(self) -> "Coeff":
        if not self:
            raise ZeroDivisionError("inverse of zero Coeff")
        # Multiply by the sqrt2-conjugate to land in Q(i), then by the
        # complex conjugate to land in Q.
        conj = Coeff(self.a_re, self.a_im, -self.b_re, -self.b_im)
        g = self * conj                       # Gaussian rational, b parts 0
        assert not (g.b_re or g.b_im)
        n = g.a_re * g.a_re + g.a_im * g.a_im
        ginv = Coeff(g.a_re / n, -g.a_im / n)
        return conj * ginv

    def __truediv__(self, other):
        return self * other.inv()

    def __repr__(self):
        return "Coeff(%s)" % render_coeff(self)


C_ZERO = Coeff()
C_ONE = Coeff(1)
C_I = Coeff(0, 1)
C_SQRT2 = Coeff(0, 0, 1)
C_HALF = Coeff(Fraction(1, 2))


def _render_gauss(re: Fraction, im: Fraction) -> str:
    if im == 0:
        return str(re)
    if re == 0:
        return "%si" % ("" if im == 1 else "-" if im == -1 else im)
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    return "(%s%s%si)" % (re, sign, "" if mag == 1 else mag)


def render_coeff(c: Coeff) -> str:
    """Canonical rendering (a+bi) + (c+di)sqrt2."""
    if not c:
        return "0"
    parts = []
    if c.a_re or c.a_im:
        parts.append(_render_gauss(c.a_re, c.a_im))
    if c.b_re or c.b_im:
        g = _render_gauss(c.b_re, c.b_im)
        parts.append("sqrt2" if g == "1" else "-sqrt2" if g == "-1"
                     else g + "*sqrt2")
    return " + ".join(parts)


class CKValue(Enum):
    """Value assigned to one contraction parameter j_k."""
    UNIT = "unit"
    NIL = "nil"
    IM = "im"
    FORMAL = "formal"


# ---------------------------------------------------------------------------
# Parameter monomials: tuples of non-negative exponents, length N-1.

def pm_one(nparams: int) -> tuple:
    return (0,) * nparams


def pm_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def pm_union(a: tuple, b: tuple) -> tuple:
    """First-power product of every parameter present in either monomial."""
    return tuple(1 if (x or y) else 0 for x, y in zip(a, b))


def pm_restrict(a: tuple, indices) -> tuple:
    """Keep only the exponents at the given 1-based parameter indices."""
    return tuple(e if (k + 1) in indices else 0 for k, e in enumerate(a))


def pm_divides(d: tuple, a: tuple) -> bool:
    return all(x <= y for x, y in zip(d, a))


def pm_div(a: tuple, d: tuple) -> tuple:
    if not pm_divides(d, a):
        raise NonDivisible("%s does not divide %s" % (d, a))
    return tuple(y - x for x, y in zip(d, a))


def render_pm(beta: tuple) -> str:
    out = []
    for k, e in enumerate(beta, start=1):
        if e == 1:
            out.append("j%d" % k)
        elif e:
            out.append("j%d^%d" % (k, e))
    return "*".join(out) if out else "1"


# ---------------------------------------------------------------------------
# ExpScalar: finite sums  coeff * t^m * v^p * j^beta.

class ExpScalar:
    """Exact scalar: map (m, p, beta) -> Coeff with nilpotent truncation.

    ``nil`` is the set of 1-based parameter indices currently treated as
    nilpotent; any term with exponent >= 2 at one of them is dropped on
    construction, so arithmetic closes over the truncated ring.
    """

    __slots__ = ("nparams", "terms", "nil")

    def __init__(self, nparams: int, terms=None, nil=frozenset()):
        self.nparams = nparams
        self.nil = frozenset(nil)
        clean = {}
        if terms:
            for mono, c in terms.items():
                if not c:
                    continue
                if self.nil and any(mono[2][k - 1] >= 2 for k in self.nil):
                    continue
                clean[mono] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nparams, nil=frozenset()):
        return cls(nparams, {}, nil)

    @classmethod
    def const(cls, nparams, c: Coeff, nil=frozenset()):
        return cls(nparams, {(0, 0, pm_one(nparams)): c}, nil)

    @classmethod
    def one(cls, nparams, nil=frozenset()):
        return cls.const(nparams, C_ONE, nil)

    @classmethod
    def t_pow(cls, nparams, m, c=C_ONE):
        return cls(nparams, {(m, 0, pm_one(nparams)): c})

    @classmethod
    def v_pow(cls, nparams, p, c=C_ONE):
        return cls(nparams, {(0, p, pm_one(nparams)): c})

    @classmethod
    def param(cls, nparams, k, e=1):
        beta = tuple(e if i == k - 1 else 0 for i in range(nparams))
        return cls(nparams, {(0, 0, beta): C_ONE})

    @classmethod
    def from_pm(cls, nparams, beta, c=C_ONE):
        return cls(nparams, {(0, 0, tuple(beta)): c})

    # -- ring operations ----------------------------------------------------
    def _check(self, other):
        if self.nparams != other.nparams:
            raise ContextMismatch("nparams %d vs %d"
                                  % (self.nparams, other.nparams))

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, C_ZERO) + c
        return ExpScalar(self.nparams, terms, self.nil | other.nil)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExpScalar(self.nparams,
                         {m: -c for m, c in self.terms.items()}, self.nil)

    def __mul__(self, other):
        self._check(other)
        nil = self.nil | other.nil
        terms = {}
        for (m1, p1, b1), c1 in self.terms.items():
            for (m2, p2, b2), c2 in other.terms.items():
                mono = (m1 + m2, p1 + p2, pm_mul(b1, b2))
                if nil and any(mono[2][k - 1] >= 2 for k in nil):
                    continue
                c = c1 * c2
                if mono in terms:
                    terms[mono] = terms[mono] + c
                else:
                    terms[mono] = c
        return ExpScalar(self.nparams, terms, nil)

    def scale(self, c: Coeff):
        return ExpScalar(self.nparams,
                         {m: x * c for m, x in self.terms.items()}, self.nil)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ExpScalar):
            return NotImplemented
        return self.nparams == other.nparams and self.terms == other.terms

    def __hash__(self):
        return hash((self.nparams, frozenset(self.terms.items())))

    # -- structure queries --------------------------------------------------
    def is_constant(self) -> bool:
        return all(m == (0, 0, pm_one(self.nparams)) for m in self.terms)

    def as_coeff(self) -> Coeff:
        if not self.terms:
            return C_ZERO
        if not self.is_constant():
            raise ValueError("not a constant scalar")
        return next(iter(self.terms.values()))

    # -- contraction machinery ---------------------------------------------
    def linearize_t(self, J_beta: tuple, order: int = 1) -> "ExpScalar":
        """Expand t^m = exp(m j^J v / 2) through the given order in j^J v.

        Order 1 is exact once J is nilpotent of square zero; larger orders
        keep the higher powers of the nilpotent formally, which matters
        when a common divisor of that depth is pulled out afterwards.
        """
        out = ExpScalar.zero(self.nparams, self.nil)
        for (m, p, beta), c in self.terms.items():
            if m == 0:
                out = out + ExpScalar(self.nparams, {(0, p, beta): c},
                                      self.nil)
                continue
            terms = {}
            b = beta
            f = Fraction(1)
            for r in range(order + 1):
                if r:
                    b = pm_mul(b, J_beta)
                    f = f * Fraction(m, 2) / r
                mono = (0, p + r, b)
                cur = terms.get(mono)
                add = c * Coeff(f)
                terms[mono] = add if cur is None else cur + add
            out = out + ExpScalar(self.nparams, terms, self.nil)
        return out

    def substitute_params(self, assignment, J_beta=None, *,
                          keep_nil_formal=False) -> "ExpScalar":
        """Specialize parameters to their CK values.

        Unit parameters drop out, imaginary ones multiply the coefficient
        by i**exponent, nilpotent ones stay as formal symbols but enter the
        truncation set (unless ``keep_nil_formal``).  If J (restricted to
        the assignment) contains a nilpotent factor, t is linearized first.
        """
        if len(assignment) != self.nparams:
            raise ContextMismatch("assignment length mismatch")
        nil_idx = frozenset(k + 1 for k, a in enumerate(assignment)
                            if a is CKValue.NIL)
        x = self
        if J_beta is not None and any(J_beta[k - 1] for k in nil_idx):
            x = x.linearize_t(J_beta)
        terms = {}
        for (m, p, beta), c in x.terms.items():
            nb = list(beta)
            for k, a in enumerate(assignment):
                if a is CKValue.UNIT:
                    nb[k] = 0
                elif a is CKValue.IM:
                    c = c * _i_power(beta[k])
                    nb[k] = 0
            mono = (m, p, tuple(nb))
            terms[mono] = terms.get(mono, C_ZERO) + c
        nil = frozenset() if keep_nil_formal else nil_idx
        return ExpScalar(self.nparams, terms, self.nil | nil)

    def truncate(self, S) -> "ExpScalar":
        return ExpScalar(self.nparams, self.terms,
                         self.nil | frozenset(S))

    def principal_part(self, S) -> "ExpScalar":
        keep = {m: c for m, c in self.terms.items()
                if all(m[2][k - 1] == 0 for k in S)}
        return ExpScalar(self.nparams, keep, self.nil)

    def common_divisor(self, S) -> tuple:
        """Componentwise minimum of beta over the terms, on S only."""
        if not self.terms:
            return pm_one(self.nparams)
        Sset = set(S)
        mins = None
        for (_, _, beta) in self.terms:
            cur = tuple(e if (k + 1) in Sset else 0
                        for k, e in enumerate(beta))
            mins = cur if mins is None else tuple(map(min, mins, cur))
        return mins

    def divide_param(self, d: tuple) -> "ExpScalar":
        terms = {}
        for (m, p, beta), c in self.terms.items():
            terms[(m, p, pm_div(beta, d))] = c
        return ExpScalar(self.nparams, terms, self.nil)

    def multiply_param(self, d: tuple) -> "ExpScalar":
        terms = {}
        for (m, p, beta), c in self.terms.items():
            mono = (m, p, pm_mul(beta, d))
            terms[mono] = terms.get(mono, C_ZERO) + c
        return ExpScalar(self.nparams, terms, self.nil)

    # -- evaluation ---------------------------------------------------------
    def evaluate(self, t_val: Coeff, j_vals, v_val=None) -> Coeff:
        """Exact value with t and the parameters set to field elements."""
        if not t_val:
            raise ZeroDivisionError("degenerate point t = 0")
        t_inv = t_val.inv()
        total = C_ZERO
        for (m, p, beta), c in self.terms.items():
            if p and v_val is None:
                raise ValueError("term has a v power but no v value given")
            x = c
            base = t_val if m >= 0 else t_inv
            for _ in range(abs(m)):
                x = x * base
            for _ in range(p):
                x = x * v_val
            for k, e in enumerate(beta):
                for _ in range(e):
                    x = x * j_vals[k]
            total = total + x
        return total

    # -- rendering ----------------------------------------------------------
    def render(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (m, p, beta) in sorted(self.terms):
            c = self.terms[(m, p, beta)]
            factors = []
            if m:
                factors.append("t^%d" % m if m != 1 else "t")
            if p:
                factors.append("v^%d" % p if p != 1 else "v")
            if any(beta):
                factors.append(render_pm(beta))
            cs = render_coeff(c)
            if factors:
                if cs == "1":
                    bits.append("*".join(factors))
                elif cs == "-1":
                    bits.append("-" + "*".join(factors))
                else:
                    bits.append(cs + "*" + "*".join(factors))
            else:
                bits.append(cs)
        return " + ".join(bits)

    def __repr__(self):
        return "ExpScalar(%s)" % self.render()


def _i_power(e: int) -> Coeff:
    return (C_ONE, C_I, -C_ONE, -C_I)[e % 4]


# Spec-level operation aliases ------------------------------------------------

def scalar_add(x: ExpScalar, y: ExpScalar) -> ExpScalar:
    return x + y


def scalar_mul(x: ExpScalar, y: ExpScalar, S=frozenset()) -> ExpScalar:
    return (x.truncate(S) * y.truncate(S)) if S else x * y


def substitute_params(x, assignment, J_beta=None):
    return x.substitute_params(assignment, J_beta)


def principal_part(x: ExpScalar, S) -> ExpScalar:
    return x.principal_part(S)


def divide_param(x: ExpScalar, d: tuple) -> ExpScalar:
    return x.divide_param(d)


def common_param_divisor(x: ExpScalar, S) -> tuple:
    return x.common_divisor(S)
