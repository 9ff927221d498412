"""Free algebra, tensor legs, matrices and exact linear algebra."""

import random

from hypothesis import given, settings, strategies as st

from ckq.scalars import C_ONE, Coeff, ExpScalar
from ckq.tensoralg import (Matrix, NCPoly, TensorPoly, in_span_exact, kron,
                           ncp_commutator, permutation_matrix, random_point,
                           rref_rows, span_membership)

NP = 2


def g(a, b):
    return NCPoly.gen(NP, a, b)


small_frac = st.fractions(min_value=-3, max_value=3, max_denominator=4)
coeffs = st.builds(Coeff, small_frac, small_frac)
words = st.lists(st.tuples(st.integers(1, 2), st.integers(1, 2)),
                 max_size=3).map(tuple)
polys = st.dictionaries(words, coeffs, max_size=3).map(
    lambda d: NCPoly(NP, {w: ExpScalar.const(NP, c)
                          for w, c in d.items()}))


@settings(max_examples=50)
@given(polys, polys, polys)
def test_ncpoly_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a * NCPoly.one(NP) == a
    assert NCPoly.one(NP) * a == a
    assert a - a == NCPoly.zero(NP)


def test_noncommutativity_and_commutator():
    x, y = g(1, 2), g(2, 1)
    assert x * y != y * x
    assert ncp_commutator(x, y) == x * y - y * x
    assert ncp_commutator(x, x) == NCPoly.zero(NP)


def test_substitute_generators():
    p = g(1, 2) * g(2, 1) + g(1, 1)
    q = p.substitute_generators({(1, 2): -g(2, 1)})
    assert q == -(g(2, 1) * g(2, 1)) + g(1, 1)


def test_tensorpoly_legwise_product():
    a = TensorPoly.tensor([g(1, 1), g(1, 2)])
    b = TensorPoly.tensor([g(2, 2), g(2, 1)])
    ab = a * b
    assert ab == TensorPoly.tensor([g(1, 1) * g(2, 2), g(1, 2) * g(2, 1)])
    assert a + b - b == a


def scalar_identity(n):
    return Matrix.identity(n, ExpScalar.one(NP), ExpScalar.zero(NP))


def rand_scalar_matrix(rng, n):
    M = Matrix.filled(n, n, ExpScalar.zero(NP))
    for i in range(n):
        for k in range(n):
            M.entries[i][k] = ExpScalar.const(NP, Coeff(rng.randint(-4, 4)))
    return M


def test_kron_mixed_product():
    rng = random.Random(3)
    A, B = rand_scalar_matrix(rng, 2), rand_scalar_matrix(rng, 3)
    C, D = rand_scalar_matrix(rng, 2), rand_scalar_matrix(rng, 3)
    assert kron(A, B) * kron(C, D) == kron(A * C, B * D)
    assert kron(scalar_identity(2), scalar_identity(3)) == scalar_identity(6)


def test_matrix_transpose_antihomomorphism():
    rng = random.Random(5)
    A, B = rand_scalar_matrix(rng, 3), rand_scalar_matrix(rng, 3)
    assert (A * B).transpose() == B.transpose() * A.transpose()


def test_permutation_matrix_composes():
    one, zero = ExpScalar.one(NP), ExpScalar.zero(NP)
    s = (2, 3, 1)
    V = permutation_matrix(s, one, zero)
    assert V * V.transpose() == scalar_identity(3)
    import pytest
    with pytest.raises(ValueError):
        permutation_matrix((1, 1, 3), one, zero)


def test_rref_and_span():
    one = Coeff(1)

    def row(*xs):
        return [Coeff(x) for x in xs]

    pivots, red = rref_rows([row(2, 4), row(1, 2)])
    assert pivots == [0] and len(red) == 1
    a = g(1, 2) + g(2, 1)
    b = g(1, 2) - g(2, 1)
    target = g(1, 2) + g(1, 2)
    assert in_span_exact([a, b], target)
    assert not in_span_exact([a], target)


def test_span_membership_at_points():
    rng = random.Random(11)
    pts = [random_point(rng, NP) for _ in range(3)]
    lam = ExpScalar.t_pow(NP, 2) - ExpScalar.t_pow(NP, -2)
    a = g(1, 2).scale(lam)
    target = g(1, 2).scale(lam * ExpScalar.param(NP, 1))
    assert span_membership([a], target, pts)
    assert not span_membership([a], g(2, 1), pts)
