"""Noncommutative polynomials, tensor powers, matrices and span queries.

Generators are written g(a, b) for the matrix entry symbol u_{ab}; a word
is a tuple of such pairs and the empty word is the algebra unit.
Coefficients are ExpScalar, so nilpotent truncation propagates through
every product automatically.
"""

from __future__ import annotations

from .scalars import (Coeff, C_ZERO, C_ONE, ExpScalar, ContextMismatch,
                      pm_one, render_pm)

Word = tuple  # tuple of (a, b) generator pairs


def word_key(w: Word):
    """Deterministic vectorization order: length first, then symbol pairs."""
    return (len(w), w)


def render_word(w: Word) -> str:
    return "*".join("u%d%d" % ab for ab in w) if w else "1"


class NCPoly:
    """Finite map word -> ExpScalar; multiplication concatenates words."""

    __slots__ = ("nparams", "terms")

    def __init__(self, nparams: int, terms=None):
        self.nparams = nparams
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, nparams):
        return cls(nparams, {})

    @classmethod
    def one(cls, nparams):
        return cls(nparams, {(): ExpScalar.one(nparams)})

    @classmethod
    def gen(cls, nparams, a, b, coeff=None):
        c = coeff if coeff is not None else ExpScalar.one(nparams)
        return cls(nparams, {((a, b),): c})

    @classmethod
    def from_scalar(cls, s: ExpScalar):
        return cls(s.nparams, {(): s})

    def _check(self, other):
        if self.nparams != other.nparams:
            raise ContextMismatch("nparams mismatch")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return NCPoly(self.nparams, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return NCPoly(self.nparams, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                terms[w] = terms[w] + c if w in terms else c
        return NCPoly(self.nparams, terms)

    def scale(self, s: ExpScalar):
        return NCPoly(self.nparams,
                      {w: c * s for w, c in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.nparams == other.nparams and self.terms == other.terms

    def __hash__(self):
        return hash((self.nparams, frozenset(self.terms.items())))

    def map_coeff(self, fn) -> "NCPoly":
        return NCPoly(self.nparams, {w: fn(c) for w, c in self.terms.items()})

    def generators(self):
        out = set()
        for w in self.terms:
            out.update(w)
        return out

    def substitute_generators(self, mapping) -> "NCPoly":
        """Algebra homomorphism; generators absent from the map are fixed."""
        out = NCPoly.zero(self.nparams)
        for w, c in self.terms.items():
            prod = NCPoly.from_scalar(c)
            for ab in w:
                img = mapping.get(ab)
                if img is None:
                    img = NCPoly.gen(self.nparams, *ab)
                prod = prod * img
            out = out + prod
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=word_key):
            c = self.terms[w]
            cs = c.render()
            ws = render_word(w)
            if not w:
                bits.append(cs)
            elif cs == "1":
                bits.append(ws)
            elif cs == "-1":
                bits.append("-" + ws)
            else:
                bits.append("(" + cs + ")*" + ws)
        return " + ".join(bits)

    def __repr__(self):
        return "NCPoly(%s)" % self.render()


def ncp_commutator(x: NCPoly, y: NCPoly) -> NCPoly:
    return x * y - y * x


class TensorPoly:
    """Element of a tensor power of the free algebra (default the square)."""

    __slots__ = ("nparams", "arity", "terms")

    def __init__(self, nparams: int, arity: int = 2, terms=None):
        self.nparams = nparams
        self.arity = arity
        self.terms = {ws: c for ws, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, nparams, arity=2):
        return cls(nparams, arity, {})

    @classmethod
    def tensor(cls, factors) -> "TensorPoly":
        """Outer product of NCPoly factors."""
        nparams = factors[0].nparams
        combos = {(): ExpScalar.one(nparams)}
        for f in factors:
            nxt = {}
            for ws, c in combos.items():
                for w, fc in f.terms.items():
                    key = tuple(ws) + (w,)
                    val = c * fc
                    nxt[key] = nxt[key] + val if key in nxt else val
            combos = nxt
        return cls(nparams, len(factors), combos)

    def _check(self, other):
        if self.nparams != other.nparams or self.arity != other.arity:
            raise ContextMismatch("tensor context mismatch")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for ws, c in other.terms.items():
            terms[ws] = terms[ws] + c if ws in terms else c
        return TensorPoly(self.nparams, self.arity, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorPoly(self.nparams, self.arity,
                          {ws: -c for ws, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        terms = {}
        for ws1, c1 in self.terms.items():
            for ws2, c2 in other.terms.items():
                ws = tuple(a + b for a, b in zip(ws1, ws2))
                c = c1 * c2
                terms[ws] = terms[ws] + c if ws in terms else c
        return TensorPoly(self.nparams, self.arity, terms)

    def scale(self, s: ExpScalar):
        return TensorPoly(self.nparams, self.arity,
                          {ws: c * s for ws, c in self.terms.items()})

    def map_coeff(self, fn):
        return TensorPoly(self.nparams, self.arity,
                          {ws: fn(c) for ws, c in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return (self.nparams == other.nparams and self.arity == other.arity
                and self.terms == other.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for ws in sorted(self.terms, key=lambda t: tuple(map(word_key, t))):
            c = self.terms[ws]
            cs = c.render()
            body = " (x) ".join(render_word(w) for w in ws)
            bits.append(body if cs == "1" else "(" + cs + ")*" + body)
        return " + ".join(bits)

    def __repr__(self):
        return "TensorPoly(%s)" % self.render()


# ---------------------------------------------------------------------------
# Dense matrices over any ring with +, *, unary -, and truthiness.

class Matrix:
    __slots__ = ("rows", "cols", "entries", "zero")

    def __init__(self, entries, zero):
        self.entries = [list(r) for r in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        self.zero = zero

    @classmethod
    def filled(cls, rows, cols, zero):
        return cls([[zero] * cols for _ in range(rows)], zero)

    @classmethod
    def identity(cls, n, one, zero):
        m = cls.filled(n, n, zero)
        for i in range(n):
            m.entries[i][i] = one
        return m

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __setitem__(self, ij, v):
        self.entries[ij[0]][ij[1]] = v

    def __add__(self, other):
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.entries, other.entries)],
                      self.zero)

    def __sub__(self, other):
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return Matrix([[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.entries, other.entries)],
                      self.zero)

    def __neg__(self):
        return self.map(lambda e: -e)

    def __mul__(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch %dx%d * %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        out = Matrix.filled(self.rows, other.cols, self.zero)
        for i in range(self.rows):
            row = self.entries[i]
            for k in range(self.cols):
                a = row[k]
                if not a:
                    continue
                orow = other.entries[k]
                for j in range(other.cols):
                    b = orow[j]
                    if not b:
                        continue
                    out.entries[i][j] = out.entries[i][j] + a * b
        return out

    def transpose(self):
        return Matrix([[self.entries[i][j] for i in range(self.rows)]
                       for j in range(self.cols)], self.zero)

    def map(self, fn, zero=None):
        return Matrix([[fn(e) for e in row] for row in self.entries],
                      fn(self.zero) if zero is None else zero)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            all(a == b for r1, r2 in zip(self.entries, other.entries)
                for a, b in zip(r1, r2))

    def __repr__(self):
        return "Matrix(%dx%d)" % (self.rows, self.cols)


def kron(A: Matrix, B: Matrix) -> Matrix:
    """Block-row-major Kronecker product."""
    out = Matrix.filled(A.rows * B.rows, A.cols * B.cols, A.zero)
    for i in range(A.rows):
        for j in range(A.cols):
            a = A.entries[i][j]
            if not a:
                continue
            for k in range(B.rows):
                for l in range(B.cols):
                    b = B.entries[k][l]
                    if b:
                        out.entries[i * B.rows + k][j * B.cols + l] = a * b
    return out


def permutation_matrix(sigma, one, zero) -> Matrix:
    """(V_sigma)_{ik} = delta_{sigma_i, k} for a bijection of 1..N."""
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("not a permutation of 1..%d: %r" % (n, sigma))
    m = Matrix.filled(n, n, zero)
    for i, s in enumerate(sigma):
        m.entries[i][s - 1] = one
    return m


def substitute_generators(p: NCPoly, mapping) -> NCPoly:
    return p.substitute_generators(mapping)


# ---------------------------------------------------------------------------
# Exact linear algebra over the coefficient field Q(i, sqrt2).

def rref_rows(rows):
    """In-place style reduced row echelon; returns (pivots, reduced rows)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for k in range(r, len(rows)):
            if rows[k][c]:
                piv = k
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots, rows[:r]


def in_row_span(candidates, target) -> bool:
    """Exact membership of target in the linear span of candidate vectors."""
    if not any(target):
        return True
    if not candidates:
        return False
    pivots, red = rref_rows(candidates)
    t = list(target)
    for p, row in zip(pivots, red):
        if t[p]:
            f = t[p]
            t = [a - f * b for a, b in zip(t, row)]
    return not any(t)


def vectorize_exact(polys):
    """Coordinates over the basis (word, scalar monomial), field Q(i,sqrt2).

    Suitable for contracted relations whose coefficients carry no formal
    unknowns that need specialization.
    """
    basis = sorted({(w, mono) for p in polys
                    for w, c in p.terms.items() for mono in c.terms},
                   key=lambda b: (word_key(b[0]), b[1]))
    index = {b: k for k, b in enumerate(basis)}
    vecs = []
    for p in polys:
        v = [C_ZERO] * len(basis)
        for w, c in p.terms.items():
            for mono, cf in c.terms.items():
                v[index[(w, mono)]] = cf
        vecs.append(v)
    return basis, vecs


def vectorize_at_point(polys, t_val: Coeff, j_vals, v_val=None):
    """Coordinates over the word basis with scalars evaluated at a point."""
    basis = sorted({w for p in polys for w in p.terms}, key=word_key)
    index = {w: k for k, w in enumerate(basis)}
    vecs = []
    for p in polys:
        v = [C_ZERO] * len(basis)
        for w, c in p.terms.items():
            v[index[w]] = c.evaluate(t_val, j_vals, v_val)
        vecs.append(v)
    return basis, vecs


def random_point(rng, nparams):
    """Exact rational evaluation point avoiding t = 0 and j = 0."""
    def frac():
        num = rng.randint(1, 10 ** 6)
        den = rng.randint(1, 10 ** 6)
        from fractions import Fraction
        return Coeff(Fraction(num, den))
    return frac(), [frac() for _ in range(nparams)]


def span_membership(candidates, target, points) -> bool:
    """True iff target lies in the span of the candidates at every point.

    Each point is (t_value, [j_values]); evaluation is exact, so a False
    at any single point is a proof of non-membership.
    """
    for t_val, j_vals in points:
        _, vecs = vectorize_at_point(list(candidates) + [target],
                                     t_val, j_vals)
        if not in_row_span(vecs[:-1], vecs[-1]):
            return False
    return True


def in_span_exact(candidates, target) -> bool:
    _, vecs = vectorize_exact(list(candidates) + [target])
    return in_row_span(vecs[:-1], vecs[-1])
