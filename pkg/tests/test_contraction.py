"""Contraction verdicts, Hopf data in the limit, generator elimination."""

from fractions import Fraction

import pytest

from ckq.ckcore import GroupSpec, J_of, spec_with_nil
from ckq.scalars import C_I, C_ONE, Coeff, ExpScalar, pm_one
from ckq.tensoralg import NCPoly, TensorPoly, ncp_commutator
from ckq.contraction import (RelationVerdict, contract_group,
                             contract_relation, eliminate_generators)

NP = 2
SPEC12 = spec_with_nil(3, (1, 2, 3), {1, 2})


def g(a, b):
    return NCPoly.gen(NP, a, b)


def j(k):
    return ExpScalar.param(NP, k)


def iv(sign=1):
    return ExpScalar.v_pow(NP, 1, C_I if sign > 0 else -C_I)


# -- verdict semantics ------------------------------------------------------

def test_mixed_levels_without_common_factor_are_inadmissible():
    # j1*b + j2*c - j1*j2*d equates incomparable nilpotent orders
    r = g(1, 2).scale(j(1)) + g(2, 3).scale(j(2)) - g(1, 3).scale(j(1) * j(2))
    v = contract_relation(r, SPEC12)
    assert v.kind == RelationVerdict.INADMISSIBLE


def test_common_factor_is_divided_out_first():
    r = (g(1, 2).scale(j(1)) + g(1, 3).scale(j(1) * j(2)))
    v = contract_relation(r, SPEC12)
    assert v.kind == RelationVerdict.ADMISSIBLE
    assert v.poly == g(1, 2)


def test_pure_nilpotent_residue_is_trivial():
    # j1*j2 * (j1*x + j2*y): dividing leaves no principal term
    r = g(1, 2).scale(j(1) * j(1) * j(2)) + g(2, 3).scale(j(1) * j(2) * j(2))
    v = contract_relation(r, SPEC12)
    assert v.kind == RelationVerdict.TRIVIAL


def test_zero_relation_is_trivial():
    v = contract_relation(NCPoly.zero(NP), SPEC12)
    assert v.kind == RelationVerdict.TRIVIAL


def test_untouched_relation_is_kept_whole():
    r = ncp_commutator(g(1, 2), g(2, 3))
    v = contract_relation(r, SPEC12)
    assert v.kind == RelationVerdict.ADMISSIBLE
    assert v.poly == r


# -- full contractions ------------------------------------------------------

def test_contract_group_needs_nilpotents():
    with pytest.raises(ValueError):
        contract_group(GroupSpec.formal(3))


def test_two_parameter_contraction_identity_sigma():
    cg = eliminate_generators(contract_group(SPEC12))
    assert cg.inadmissible() == []
    assert not cg.antipode_failures
    elim = {("u%d%d" % k): v for k, v in cg.eliminations.items()}
    assert elim["u11"] == NCPoly.one(NP)
    assert elim["u22"] == NCPoly.one(NP)
    assert elim["u33"] == NCPoly.one(NP)
    assert elim["u21"] == -g(1, 2)
    assert elim["u32"] == -g(2, 3)
    assert elim["u31"] == -g(1, 3) + g(1, 2) * g(2, 3)

    survivors = [v.poly for v in cg.verdicts()
                 if v.kind == RelationVerdict.ADMISSIBLE and v.poly]
    # independent generators commute up to the iv terms
    assert ncp_commutator(g(1, 2), g(2, 3)) in survivors
    assert (g(1, 2).scale(iv(-1)) + g(1, 2) * g(1, 3)
            - g(1, 3) * g(1, 2)) in survivors


def test_two_parameter_contraction_transposed_sigma():
    spec = spec_with_nil(3, (2, 1, 3), {1, 2})
    assert J_of(spec) == (0, 1)
    cg = eliminate_generators(contract_group(spec))
    assert cg.inadmissible() == []
    elim = {("u%d%d" % k): v for k, v in cg.eliminations.items()}
    assert elim["u11"] == NCPoly.one(NP)
    # the corner solves with a half-iv correction
    half_iv = ExpScalar.v_pow(NP, 1, C_I * Coeff(Fraction(1, 2)))
    assert elim["u31"] == (-g(1, 3) + g(2, 1).scale(half_iv)
                           - g(2, 1) * g(2, 3))


def test_negative_control_wrong_j_obstructs():
    cg = contract_group(SPEC12, force_J=pm_one(NP))
    assert len(cg.inadmissible()) > 0
    assert len(cg.antipode_failures) > 0
    with pytest.raises(Exception):
        cg.raise_if_obstructed()


def test_contracted_coproduct_is_primitive_plus_mixing():
    cg = eliminate_generators(contract_group(SPEC12))
    one = NCPoly.one(NP)
    t = TensorPoly.tensor
    delta = cg.coproduct
    assert delta.entries[0][1] == t([one, g(1, 2)]) + t([g(1, 2), one])
    assert delta.entries[1][2] == t([one, g(2, 3)]) + t([g(2, 3), one])
    assert delta.entries[0][2] == (t([one, g(1, 3)]) + t([g(1, 3), one])
                                   + t([g(1, 2), g(2, 3)]))


def test_contracted_antipode_flips_translations():
    cg = eliminate_generators(contract_group(SPEC12))
    S = cg.antipode
    assert S[(1, 2)] == -g(1, 2)
    assert S[(2, 3)] == -g(2, 3)
    assert S[(1, 3)] == -g(1, 3) + g(1, 2) * g(2, 3)


def test_regular_antipode_entries_are_reported_not_failed():
    # J misses the contracted parameter: some antipode coefficients are
    # analytic but not Laurent and get set aside
    spec = spec_with_nil(3, (2, 1, 3), {1})
    cg = contract_group(spec)
    assert not cg.antipode_failures
    assert cg.antipode_regular
    assert all(ab not in cg.antipode for ab in cg.antipode_regular)


def test_exhaustive_small_dimension_no_obstruction():
    import itertools
    for sigma in itertools.permutations((1, 2, 3)):
        for S in ({1}, {2}, {1, 2}):
            cg = contract_group(spec_with_nil(3, sigma, S))
            assert cg.inadmissible() == []
            assert not cg.antipode_failures
