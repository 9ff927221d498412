"""Classification of contracted groups by nilpotent-distribution patterns.

Two contractions are equivalent when their generating-matrix patterns
pass into each other under simultaneous row/column permutations, or
under reflection in the secondary diagonal with an optional simultaneous
relabeling of the parameters k -> N-k, and when their J monomials agree
under the same relabeling.  The canonical key is the lexicographic
minimum of the serialized (pattern, J) pair over the whole group.
"""

from __future__ import annotations

import itertools

from .scalars import ExpScalar
from .tensoralg import Matrix, kron, permutation_matrix
from .ckcore import (GroupSpec, spec_with_nil, range_product, J_of,
                     c_matrices, d_matrix, r_tilde)

# legend shared with the source diagrams; larger subsets render as lists
_LEGEND = {
    (): ".",
    (1,): "o",
    (2,): "*",
    (1, 2): "x",
    (3,): "^",
    (1, 3): "s",
    (2, 3): "d",
    (1, 2, 3): "#",
}
_LEGEND_PRETTY = {
    (): "·",
    (1,): "∘",
    (2,): "•",
    (1, 2): "×",
    (3,): "△",
    (1, 3): "★",
    (2, 3): "⋄",
    (1, 2, 3): "⊗",
}


def render_monomial(S, pretty=True):
    key = tuple(sorted(S))
    table = _LEGEND_PRETTY if pretty else _LEGEND
    if key in table:
        return table[key]
    return ",".join("i%d" % k for k in key)


class PatternMatrix:
    """N x N symmetric matrix of squarefree nilpotent index sets."""

    __slots__ = ("N", "entries")

    def __init__(self, N, entries):
        self.N = N
        self.entries = tuple(tuple(frozenset(e) for e in row)
                             for row in entries)

    def serialize(self):
        return tuple(tuple(tuple(sorted(e)) for e in row)
                     for row in self.entries)

    def __eq__(self, other):
        return (isinstance(other, PatternMatrix)
                and self.serialize() == other.serialize())

    def __hash__(self):
        return hash(self.serialize())

    def render_rows(self, pretty=True):
        """Upper-triangle rows in the source's diagram style."""
        out = []
        for i in range(self.N):
            row = [render_monomial(self.entries[i][k], pretty)
                   for k in range(i, self.N)]
            out.append(" ".join(row))
        return out


def pattern_of(spec: GroupSpec) -> PatternMatrix:
    if not spec.nil_set:
        raise ValueError("pattern needs a nonempty nilpotent set")
    N = spec.N
    S = spec.nil_set
    rows = []
    for i in range(N):
        row = []
        for k in range(N):
            beta = range_product(spec.sigma[i], spec.sigma[k], N)
            row.append(frozenset(l for l in S if beta[l - 1]))
        rows.append(row)
    return PatternMatrix(N, rows)


def j_monomial(spec: GroupSpec) -> frozenset:
    """Nilpotent part of the derived J as an index set."""
    beta = J_of(spec)
    return frozenset(k for k in spec.nil_set if beta[k - 1])


def _relabel_set(s, N):
    return frozenset(N - k for k in s)


def transform_pattern(p: PatternMatrix, perm, reflect: bool,
                      relabel: bool, J=frozenset()):
    """Apply one equivalence-group element to (pattern, J).

    ``perm`` is a 0-based position tuple; reflection maps entry (a, b) to
    (N+1-b, N+1-a); relabeling renames parameter k to N-k in every entry
    and in J, and is only allowed together with reflection.
    """
    if relabel and not reflect:
        raise ValueError("relabel only accompanies reflection")
    N = p.N
    e = [[p.entries[perm[i]][perm[k]] for k in range(N)] for i in range(N)]
    if reflect:
        e = [[e[N - 1 - k][N - 1 - i] for k in range(N)] for i in range(N)]
    if relabel:
        e = [[_relabel_set(x, N) for x in row] for row in e]
        J = _relabel_set(J, N)
    return PatternMatrix(N, e), J


def _group_elements(N):
    for perm in itertools.permutations(range(N)):
        yield perm, False, False
        yield perm, True, False
        yield perm, True, True


def canonical_key(p: PatternMatrix, J=frozenset(), use_J=True):
    best = None
    for perm, reflect, relabel in _group_elements(p.N):
        q, Jq = transform_pattern(p, perm, reflect, relabel, J)
        cand = (q.serialize(), tuple(sorted(Jq)) if use_J else ())
        if best is None or cand < best:
            best = cand
    return best


class ContractionClass:
    """One equivalence class of contracted groups."""

    def __init__(self, key, pattern, J, members, label=None):
        self.key = key
        self.pattern = pattern
        self.J = J
        self.members = members
        self.label = label
        self.condition5 = {}

    def to_json(self):
        return {
            "key": repr(self.key),
            "pattern": self.pattern.render_rows(),
            "J": render_monomial(self.J) if self.J else "1",
            "members": [{"sigma": list(sigma), "S": sorted(S)}
                        for sigma, S in self.members],
            "label": self.label,
        }


# representatives of the named families, keyed by (N, sigma, S)
_LABELS = {
    (3, (1, 2, 3), (1,)): "E_v0(2)",
    (3, (2, 1, 3), (1,)): "E_z(2)",
    (3, (1, 2, 3), (1, 2)): "G_v0(2)",
    (3, (2, 1, 3), (1, 2)): "G_v(2)",
    (4, (1, 2, 3, 4), (1,)): "E_v(3)",
    (4, (1, 2, 3, 4), (2,)): "N_v(3)",
    (4, (1, 3, 4, 2), (2,)): "N_z(3)",
    (4, (1, 2, 3, 4), (1, 2)): "G_v(3)",
    (4, (1, 3, 4, 2), (1, 2)): "G_w(3)",
    (4, (1, 2, 3, 4), (1, 2, 3)): "F_v(4)",
    (4, (1, 2, 3, 4), (1, 3)): "SO_v(4;i1,i3)",
    (4, (1, 3, 4, 2), (1, 2, 3)): "F_w(4)",
    (5, (1, 2, 3, 4, 5), (1,)): "E_v(4)",
    (5, (2, 4, 1, 5, 3), (1,)): "E_z(4)",
    (5, (1, 2, 3, 4, 5), (2,)): "N_v(4)",
    (5, (1, 3, 5, 4, 2), (2,)): "N_z(4)",
    (5, (1, 2, 3, 4, 5), (1, 2)): "G_v(4)",
    (5, (1, 3, 5, 4, 2), (1, 2)): "G_z(4)",
    (5, (1, 2, 3, 4, 5), (1, 2, 3, 4)): "F_v(5)",
    (5, (1, 2, 5, 3, 4), (1, 2, 3, 4)): "F_1(5)",
    (5, (1, 4, 2, 5, 3), (1, 2, 3, 4)): "F_2(5)",
    (5, (1, 3, 5, 4, 2), (1, 2, 3, 4)): "F_3(5)",
    (5, (1, 4, 3, 5, 2), (1, 2, 3, 4)): "F_4(5)",
}


def enumerate_catalog(N, classical=False):
    """All nonisomorphic contractions over sigma in S_N and nonempty S.

    With ``classical`` set, J is ignored (pattern-only classification,
    the nondeformed shadow).
    """
    if not 3 <= N <= 6:
        raise ValueError("N out of supported range")
    params = tuple(range(1, N))
    buckets = {}
    for sigma in itertools.permutations(range(1, N + 1)):
        for r in range(1, N):
            for S in itertools.combinations(params, r):
                spec = spec_with_nil(N, sigma, set(S))
                p = pattern_of(spec)
                J = j_monomial(spec)
                key = canonical_key(p, J, use_J=not classical)
                buckets.setdefault(key, []).append((sigma, frozenset(S),
                                                    p, J))
    classes = []
    for key, members in buckets.items():
        members.sort(key=lambda m: (m[0], tuple(sorted(m[1]))))
        label = None
        rep = members[0]
        for sigma, S, p, J in members:
            label = _LABELS.get((N, sigma, tuple(sorted(S))))
            if label is not None:
                rep = (sigma, S, p, J)
                break
        classes.append(ContractionClass(
            key, rep[2], rep[3],
            [(sigma, S) for sigma, S, _, _ in members], label))
    classes.sort(key=lambda c: (len(c.members[0][1]), c.key))
    for idx, c in enumerate(classes):
        if c.label is None:
            c.label = "class-%d" % (idx + 1)
    return classes


def catalog_json(N, classical=False):
    classes = enumerate_catalog(N, classical)
    return {"N": N, "classical": classical,
            "class_count": len(classes),
            "classes": [c.to_json() for c in classes]}


# ---------------------------------------------------------------------------
# Symbolic check of the matrix conditions behind a pure-permutation merge.

def _negate_v(x: ExpScalar) -> ExpScalar:
    """Flip the sign of the deformation parameter (t -> 1/t, v -> -v)."""
    terms = {}
    for (m, p, beta), c in x.terms.items():
        c2 = -c if p % 2 else c
        mono = (-m, p, beta)
        terms[mono] = terms.get(mono, type(c)(0)) + c2
    return ExpScalar(x.nparams, terms, x.nil)


def verify_condition5(spec_a: GroupSpec, spec_b: GroupSpec, perm):
    """Check the isomorphism matrix conditions for a permutation merge.

    ``perm`` maps positions of ``spec_a`` onto positions of ``spec_b``
    (0-based).  Verifies V R~ V^-1-type compatibility for the R matrix
    and V C~ V^t = C~ for the metric, trying both deformation signs.
    Returns True when some sign works.
    """
    np = spec_a.nparams
    one = ExpScalar.one(np)
    zero = ExpScalar.zero(np)
    V = permutation_matrix([p + 1 for p in perm], one, zero)
    _, _, Ct_a, _ = c_matrices(spec_a)
    R_a = r_tilde(spec_a)
    for flip in (False, True):
        _, _, Ct_b, _ = c_matrices(spec_b)
        R_b = r_tilde(spec_b)
        if flip:
            Ct_b = Ct_b.map(_negate_v)
            R_b = R_b.map(_negate_v)
        VV = kron(V, V)
        Vt = V.transpose()
        ok_c = (V * Ct_b * Vt) == Ct_a
        ok_r = (VV * R_b) == (R_a * VV)
        if ok_c and ok_r:
            return True
    return False
