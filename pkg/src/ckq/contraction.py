"""Contraction of a quantum Cayley-Klein group over nilpotent parameters.

The pipeline for one relation: specialize the parameters (units drop,
imaginary ones fold into the coefficient, nilpotent ones stay formal),
expand t when J picks up a nilpotent factor, pull out the common
nilpotent divisor, and keep the principal part.  A
relation is Admissible when a principal part survives, Trivial when it
vanishes or degenerates (an overall nilpotent factor with nothing
principal underneath), and Inadmissible when, with no common factor to
normalize away, every term still carries a nilpotent multiplier, so the
relation equates incomparable nilpotent levels.
"""

from __future__ import annotations

from .scalars import (CKValue, ExpScalar, NonDivisible, pm_one,
                      pm_divides, pm_div)
from .tensoralg import NCPoly, TensorPoly, Matrix
from .ckcore import (GroupSpec, J_of, range_product, generating_matrix,
                     c_matrices)
from . import hopf


class AdmissibilityFailure(Exception):
    """A relation or antipode entry obstructed the contraction."""


class NonLinearConstraint(Exception):
    """No further linear elimination exists (normal terminal state)."""


class RelationVerdict:
    """Outcome of contracting one relation."""

    __slots__ = ("kind", "poly", "tag")

    ADMISSIBLE = "admissible"
    TRIVIAL = "trivial"
    INADMISSIBLE = "inadmissible"

    def __init__(self, kind, poly=None, tag=None):
        self.kind = kind
        self.poly = poly
        self.tag = tag

    def __repr__(self):
        return "RelationVerdict(%s, %s)" % (self.kind, self.tag)


def _nil_linearize(x: ExpScalar, spec: GroupSpec, J_beta,
                   order=1) -> ExpScalar:
    """Expand t when J (restricted to the assignment) turns nilpotent."""
    if any(J_beta[k - 1] for k in spec.nil_set):
        return x.linearize_t(J_beta, order)
    return x


def _specialize(x: ExpScalar, spec: GroupSpec, J_beta,
                order=1) -> ExpScalar:
    """Specialize with nilpotent exponents still formal (no truncation)."""
    x = _nil_linearize(x, spec, J_beta, order)
    return x.substitute_params(spec.assignment, keep_nil_formal=True)


def _contract_scalar(x: ExpScalar, spec: GroupSpec, J_beta) -> ExpScalar:
    return _specialize(x, spec, J_beta).truncate(spec.nil_set)


def _contract_attempt(r, spec, J_beta, tag, order):
    """One pass at a fixed t-expansion order; also reports the cumulative
    divided exponent, which bounds the order actually needed."""
    S = spec.nil_set
    zero_d = pm_one(spec.nparams)
    sub = r.map_coeff(lambda c: _specialize(c, spec, J_beta, order))
    sub = NCPoly(sub.nparams, sub.terms)
    if not sub:
        return (RelationVerdict(RelationVerdict.TRIVIAL, tag=tag),
                zero_d, True)
    # alternate dividing out the common nilpotent factor (which exposes
    # the relation's content before squares vanish) with truncation
    # (squared nilpotents are identically zero and may hide a deeper
    # common factor) until neither makes progress
    cum = list(zero_d)
    divided = False
    while True:
        d = None
        for c in sub.terms.values():
            cur = c.common_divisor(S)
            d = cur if d is None else tuple(map(min, d, cur))
        if any(d):
            sub = sub.map_coeff(lambda c: c.divide_param(d))
            divided = True
            cum = [a + b for a, b in zip(cum, d)]
        cut = sub.map_coeff(lambda c: c.truncate(S))
        cut = NCPoly(cut.nparams, cut.terms)
        if not cut:
            return (RelationVerdict(RelationVerdict.TRIVIAL, tag=tag),
                    tuple(cum), False)
        if cut == sub and not any(d):
            break
        sub = cut
    pp = sub.map_coeff(lambda c: c.principal_part(S))
    pp = NCPoly(pp.nparams, pp.terms)
    if pp:
        return (RelationVerdict(RelationVerdict.ADMISSIBLE, pp, tag),
                tuple(cum), False)
    if divided:
        # an overall nilpotent factor was removed; with nothing principal
        # left the relation degenerates in the contraction limit and
        # imposes no constraint
        return (RelationVerdict(RelationVerdict.TRIVIAL, tag=tag),
                tuple(cum), False)
    return (RelationVerdict(RelationVerdict.INADMISSIBLE, sub, tag),
            tuple(cum), False)


def contract_relation(r: NCPoly, spec: GroupSpec, J_beta=None, tag=None):
    if J_beta is None:
        J_beta = J_of(spec)
    # Expand t far enough that the divisions see the exact series: a
    # coefficient that is zero to first order (such as cosh of a nilpotent
    # times v, minus one) can still reach the principal level when a
    # divisor of matching depth is pulled out.  An expansion order at
    # least the cumulative divided exponent is enough, because every
    # omitted term then keeps a positive exponent throughout and never
    # enters the principal part; when a pass divides deeper than the
    # order it ran with, rerun at the larger order.
    order = 2
    while True:
        verdict, cum, empty = _contract_attempt(r, spec, J_beta, tag, order)
        if empty and order < 6:
            order += 2
            continue
        if max(cum) <= order or order >= 16:
            return verdict
        order = max(cum)


# ---------------------------------------------------------------------------
# Formal relation caches (the formal sets depend only on N and sigma).

_RUU_CACHE = {}
_ORTH_CACHE = {}
_ANTIPODE_CACHE = {}


def _formal(spec: GroupSpec) -> GroupSpec:
    return GroupSpec.formal(spec.N, spec.sigma)


def formal_ruu(spec: GroupSpec):
    key = (spec.N, spec.sigma)
    if key not in _RUU_CACHE:
        _RUU_CACHE[key] = hopf.ruu_relations(_formal(spec))
    return _RUU_CACHE[key]


def formal_orthogonality(spec: GroupSpec):
    key = (spec.N, spec.sigma)
    if key not in _ORTH_CACHE:
        _ORTH_CACHE[key] = hopf.orthogonality_relations(_formal(spec))
    return _ORTH_CACHE[key]


def formal_antipode(spec: GroupSpec):
    key = (spec.N, spec.sigma)
    if key not in _ANTIPODE_CACHE:
        _ANTIPODE_CACHE[key] = hopf.antipode_matrix(_formal(spec))
    return _ANTIPODE_CACHE[key]


# ---------------------------------------------------------------------------
# Contracted Hopf data.

def contracted_coproduct(spec: GroupSpec, J_beta=None) -> Matrix:
    """Coproduct with parameters specialized and squares truncated."""
    if J_beta is None:
        J_beta = J_of(spec)
    delta = hopf.coproduct(_formal(spec))
    S = spec.nil_set

    def fix(c):
        return _contract_scalar(c, spec, J_beta).principal_part(S)

    return delta.map(lambda tp: tp.map_coeff(fix),
                     TensorPoly.zero(spec.nparams))


def contracted_antipode(spec: GroupSpec, J_beta=None):
    """Map (a,b) -> contracted S(u_{ab}) for the bare generators.

    The matrix-level entry is linearized, divided by the entry's own range
    product, then specialized.  When the division only goes through after
    multiplying by J or J^2 the coefficient is still finite (the missing
    factor cancels against the J inside sinh(Jv rho)), but it has no
    Laurent-in-t form; such entries are listed in ``regular`` and left out
    of the result.  A division that fails even with J^2 means the antipode
    coefficient is genuinely ill defined for this (assignment, J)
    combination; those entries are the ``failures``.
    """
    if J_beta is None:
        J_beta = J_of(spec)
    N = spec.N
    S = spec.nil_set
    mat = formal_antipode(spec)
    out = {}
    regular = []
    failures = []
    for i in range(N):
        for k in range(N):
            a, b = spec.sigma[i], spec.sigma[k]
            d = range_product(a, b, N)
            entry = mat.entries[i][k]
            try:
                bare = entry.map_coeff(
                    lambda c: _nil_linearize(c, spec, J_beta)
                    .divide_param(d))
            except NonDivisible:
                for e in (1, 2):
                    try:
                        entry.map_coeff(
                            lambda c: _nil_linearize(c, spec, J_beta)
                            .multiply_param(tuple(x * e for x in J_beta))
                            .divide_param(d))
                        regular.append((a, b))
                        break
                    except NonDivisible:
                        continue
                else:
                    failures.append((a, b))
                continue
            bare = bare.map_coeff(
                lambda c: c.substitute_params(spec.assignment)
                .truncate(S).principal_part(S))
            out[(a, b)] = NCPoly(spec.nparams, bare.terms)
    return out, regular, failures


class ContractedGroup:
    """Full contraction of one spec: verdicts plus contracted Hopf data."""

    def __init__(self, spec, J_beta, ruu, orth1, orth2, coproduct,
                 antipode, antipode_regular, antipode_failures):
        self.spec = spec
        self.J = J_beta
        self.ruu = ruu
        self.orth1 = orth1
        self.orth2 = orth2
        self.coproduct = coproduct
        self.antipode = antipode
        self.antipode_regular = antipode_regular
        self.antipode_failures = antipode_failures
        self.eliminations = {}

    def verdicts(self):
        return self.ruu + self.orth1 + self.orth2

    def inadmissible(self):
        return [v for v in self.verdicts()
                if v.kind == RelationVerdict.INADMISSIBLE]

    def admissible_orth(self):
        return [v for v in self.orth1 + self.orth2
                if v.kind == RelationVerdict.ADMISSIBLE]

    def admissible_ruu(self):
        return [v for v in self.ruu
                if v.kind == RelationVerdict.ADMISSIBLE]

    def raise_if_obstructed(self):
        bad = self.inadmissible()
        if bad or self.antipode_failures:
            raise AdmissibilityFailure(
                "inadmissible: %s; antipode: %s"
                % ([v.tag for v in bad], self.antipode_failures))


def contract_group(spec: GroupSpec, force_J=None) -> ContractedGroup:
    """Contract every defining relation and the Hopf data of the spec.

    ``force_J`` overrides the J monomial (used as a negative control; the
    derived J never obstructs, a wrong one can).
    """
    if not spec.nil_set:
        raise ValueError("contraction needs a nonempty nilpotent set")
    J_beta = force_J if force_J is not None else J_of(spec)

    def run(relset):
        return [contract_relation(p, spec, J_beta, tag)
                for tag, p in relset]

    ruu = run(formal_ruu(spec))
    o1, o2 = formal_orthogonality(spec)
    antipode, regular, failures = contracted_antipode(spec, J_beta)
    return ContractedGroup(spec, J_beta, ruu, run(o1), run(o2),
                           contracted_coproduct(spec, J_beta),
                           antipode, regular, failures)


# ---------------------------------------------------------------------------
# Generator elimination (solving contracted orthogonality relations).

def _tensor_substitute(tp: TensorPoly, mapping) -> TensorPoly:
    np = tp.nparams
    out = TensorPoly.zero(np, tp.arity)
    for words, c in tp.terms.items():
        legs = [NCPoly(np, {w: ExpScalar.one(np)}).substitute_generators(
            mapping) for w in words]
        out = out + TensorPoly.tensor(legs).scale(c)
    return out


def _position(spec, gen):
    """(row, col) position of generator (a, b) in the generating matrix."""
    inv = {s: i for i, s in enumerate(spec.sigma)}
    return inv[gen[0]], inv[gen[1]]


def _find_square(polys, np):
    """Relation c*(g o g) - c = 0 fixes g = 1 (identity branch)."""
    for p in polys:
        if len(p.terms) != 2:
            continue
        words = sorted(p.terms, key=len)
        if len(words[0]) != 0 or len(words[1]) != 2:
            continue
        w = words[1]
        if w[0] != w[1]:
            continue
        c_const, c_sq = p.terms[words[0]], p.terms[w]
        if c_sq == -c_const:
            return w[0]
    return None


def _find_linear(polys, spec):
    """A below-diagonal generator occurring once, linearly, with constant
    invertible coefficient; returns (gen, replacement)."""
    np = spec.nparams
    candidates = []
    for p in polys:
        gens_linear = {}
        for w, c in p.terms.items():
            if len(w) == 1:
                gens_linear.setdefault(w[0], []).append(c)
        for g, coeffs in gens_linear.items():
            r, col = _position(spec, g)
            if r <= col:
                continue
            if len(coeffs) != 1 or not coeffs[0].is_constant():
                continue
            # g must not appear inside any other word of the relation
            others = [w for w in p.terms if w != (g,)]
            if any(g in w for w in others):
                continue
            rest = NCPoly(np, {w: c for w, c in p.terms.items()
                               if w != (g,)})
            inv = coeffs[0].as_coeff().inv()
            repl = (-rest).map_coeff(lambda c: c.scale(inv))
            candidates.append(((r, col), g, repl))
    if not candidates:
        return None
    candidates.sort(key=lambda t: (t[0], t[1]))
    _, g, repl = candidates[0]
    return g, repl


def eliminate_generators(cg: ContractedGroup) -> ContractedGroup:
    """Solve square and linear orthogonality constraints to a fixpoint.

    Square constraints fix diagonal generators to 1 (the branch connected
    to the counit point); linear ones express a below-diagonal generator
    through the others.  All contracted data is rewritten through the
    accumulated substitution.
    """
    spec = cg.spec
    np = spec.nparams
    polys = [v.poly for v in cg.admissible_orth()]
    mapping = {}

    def apply_all(extra):
        nonlocal polys, mapping
        for g in list(mapping):
            mapping[g] = mapping[g].substitute_generators(extra)
        mapping.update(extra)
        polys = [p.substitute_generators(extra) for p in polys]
        polys = [p for p in polys if p]

    while True:
        g = _find_square(polys, np)
        if g is not None:
            apply_all({g: NCPoly.one(np)})
            continue
        found = _find_linear(polys, spec)
        if found is not None:
            g, repl = found
            apply_all({g: repl})
            continue
        break

    out = ContractedGroup(
        spec, cg.J,
        [RelationVerdict(v.kind,
                         v.poly.substitute_generators(mapping)
                         if v.poly is not None else None, v.tag)
         for v in cg.ruu],
        [RelationVerdict(v.kind,
                         v.poly.substitute_generators(mapping)
                         if v.poly is not None else None, v.tag)
         for v in cg.orth1],
        [RelationVerdict(v.kind,
                         v.poly.substitute_generators(mapping)
                         if v.poly is not None else None, v.tag)
         for v in cg.orth2],
        cg.coproduct.map(lambda tp: _tensor_substitute(tp, mapping),
                         TensorPoly.zero(np)),
        {g: p.substitute_generators(mapping)
         for g, p in cg.antipode.items()},
        cg.antipode_regular, cg.antipode_failures)
    out.eliminations = mapping
    return out
