"""Group specs, structure matrices and the R-matrix."""

from fractions import Fraction
import itertools

import pytest

from ckq.scalars import C_ONE, CKValue, Coeff, ExpScalar, pm_mul, pm_one
from ckq.tensoralg import Matrix
from ckq.ckcore import (GroupSpec, J_of, c0_matrix, c_matrices, d_matrix,
                        generating_matrix, primed, r_tilde, range_product,
                        rho, spec_with_nil, two_rho)


def test_spec_validation():
    with pytest.raises(ValueError):
        GroupSpec(3, (1, 1, 3), [CKValue.FORMAL] * 2)
    with pytest.raises(ValueError):
        GroupSpec(3, (1, 2, 3), [CKValue.FORMAL])
    s = spec_with_nil(3, (1, 2, 3), {2})
    assert s.nil_set == {2}
    assert s.n == 1 and s.nparams == 2


def test_spec_json_round_trip():
    s = spec_with_nil(4, (1, 3, 4, 2), {1, 2})
    assert GroupSpec.from_json(s.to_json()) == s
    with pytest.raises(ValueError):
        GroupSpec.from_json({"n": 3, "sigma": [1, 2, 3], "j": ["bogus", "1"]})


def test_primed_is_an_involution():
    for N in (3, 4, 5, 6):
        for k in range(1, N + 1):
            assert primed(primed(k, N), N) == k
            assert primed(k, N) == N + 1 - k


def test_rho_antisymmetry():
    for N in range(2, 8):
        r = rho(N)
        assert len(r) == N
        for k in range(N):
            assert r[k] == -r[N - 1 - k]
        assert two_rho(N) == [2 * x for x in r]
    assert rho(3) == [Fraction(1, 2), 0, Fraction(-1, 2)]
    assert rho(4) == [1, 0, 0, -1]


def test_range_product_composition():
    N = 5
    for k in range(1, N + 1):
        assert range_product(k, k, N) == pm_one(N - 1)
        for p in range(k, N + 1):
            assert range_product(k, p, N) == range_product(p, k, N)
            for r in range(p, N + 1):
                assert pm_mul(range_product(k, p, N),
                              range_product(p, r, N)) == \
                    range_product(k, r, N)
    assert range_product(1, 3, 5) == (1, 1, 0, 0)
    assert range_product(2, 5, 5) == (0, 1, 1, 1)


def test_j_values_for_small_dimensions():
    assert J_of(GroupSpec.formal(3)) == (1, 1)
    assert J_of(GroupSpec.formal(3, (2, 1, 3))) == (0, 1)
    assert J_of(GroupSpec.formal(3, (1, 3, 2))) == (1, 0)
    assert J_of(GroupSpec.formal(4)) == (1, 1, 1)
    assert J_of(GroupSpec.formal(4, (1, 3, 4, 2))) == (1, 0, 1)


def test_j_is_squarefree():
    for N in (3, 4, 5):
        for sigma in itertools.permutations(range(1, N + 1)):
            assert all(e <= 1 for e in J_of(GroupSpec.formal(N, sigma)))


def test_generating_matrix_entries():
    spec = GroupSpec.formal(3)
    U = generating_matrix(spec)
    # entry (i,k) is u_{sigma_i sigma_k} scaled by its range product
    word = ((1, 3),)
    coeff = U.entries[0][2].terms[word]
    assert coeff == ExpScalar.from_pm(2, (1, 1))
    spec2 = GroupSpec.formal(3, (2, 1, 3))
    U2 = generating_matrix(spec2)
    assert ((2, 1),) in U2.entries[0][1].terms


def test_d_matrix_takes_c0_to_identity():
    for N in range(2, 7):
        np = N - 1
        D, Dinv = d_matrix(N)
        lift = lambda M: M.map(lambda c: ExpScalar.const(np, c),
                               ExpScalar.zero(np))
        Dl, Dinvl = lift(D), lift(Dinv)
        C0 = c0_matrix(N)
        I = Matrix.identity(N, ExpScalar.one(np), ExpScalar.zero(np))
        assert Dl.transpose() * C0 * Dl == I
        assert Dl * Dinvl == I


def test_c_matrices_are_mutually_inverse():
    for N in (3, 4, 5):
        spec = GroupSpec.formal(N)
        _, _, Ct, Cti = c_matrices(spec)
        I = Matrix.identity(N, ExpScalar.one(N - 1), ExpScalar.zero(N - 1))
        assert Ct * Cti == I
        assert Cti * Ct == I


def test_r_matrix_is_identity_at_unit_t():
    for N in (3, 4):
        spec = GroupSpec.formal(N)
        R = r_tilde(spec)
        ones = [C_ONE] * (N - 1)
        for i in range(N * N):
            for k in range(N * N):
                val = R.entries[i][k].evaluate(C_ONE, ones)
                assert val == (C_ONE if i == k else Coeff())


def test_r_matrix_rejects_small_n():
    with pytest.raises(ValueError):
        r_tilde(GroupSpec.formal(2))
