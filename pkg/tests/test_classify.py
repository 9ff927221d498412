"""Nilpotent patterns, equivalence classes and the catalog."""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ckq.ckcore import GroupSpec, spec_with_nil
from ckq.classify import (PatternMatrix, canonical_key, enumerate_catalog,
                          catalog_json, j_monomial, pattern_of,
                          render_monomial, transform_pattern,
                          verify_condition5)


def test_legend_rendering():
    assert render_monomial({1}, pretty=False) == "o"
    assert render_monomial({2}, pretty=False) == "*"
    assert render_monomial({1, 2}, pretty=False) == "x"
    assert render_monomial(set(), pretty=False) == "."
    assert render_monomial({1}) == "∘"
    assert render_monomial({1, 2}) == "×"


def test_pattern_rows_two_parameter_identity_sigma():
    spec = spec_with_nil(3, (1, 2, 3), {1, 2})
    assert pattern_of(spec).render_rows(pretty=False) == \
        [". o x", ". *", "."]
    assert j_monomial(spec) == {1, 2}


def test_pattern_rows_two_parameter_transposed_sigma():
    spec = spec_with_nil(3, (2, 1, 3), {1, 2})
    assert pattern_of(spec).render_rows(pretty=False) == \
        [". o *", ". x", "."]
    assert j_monomial(spec) == {2}


def test_pattern_needs_nilpotents():
    with pytest.raises(ValueError):
        pattern_of(GroupSpec.formal(3))


def test_relabel_requires_reflection():
    p = pattern_of(spec_with_nil(3, (1, 2, 3), {1}))
    with pytest.raises(ValueError):
        transform_pattern(p, (0, 1, 2), False, True)


def test_pattern_symmetry():
    for sigma in itertools.permutations((1, 2, 3, 4)):
        p = pattern_of(spec_with_nil(4, sigma, {1, 3}))
        for i in range(4):
            for k in range(4):
                assert p.entries[i][k] == p.entries[k][i]
            assert p.entries[i][i] == frozenset()


@settings(max_examples=40)
@given(st.permutations(list(range(4))),
       st.booleans(), st.booleans(), st.data())
def test_canonical_key_is_invariant(perm, reflect, relabel, data):
    sigma = tuple(data.draw(st.permutations([1, 2, 3, 4])))
    S = data.draw(st.sets(st.integers(1, 3), min_size=1))
    spec = spec_with_nil(4, sigma, S)
    p = pattern_of(spec)
    J = j_monomial(spec)
    if relabel and not reflect:
        reflect = True
    q, Jq = transform_pattern(p, tuple(perm), reflect, relabel, J)
    assert canonical_key(q, Jq) == canonical_key(p, J)
    assert canonical_key(q, Jq, use_J=False) == canonical_key(p, J,
                                                              use_J=False)


def test_catalog_three_dimensional():
    classes = enumerate_catalog(3)
    assert len(classes) == 4
    by_label = {c.label: c for c in classes}
    assert set(by_label) == {"E_z(2)", "E_v0(2)", "G_v0(2)", "G_v(2)"}
    assert by_label["E_z(2)"].J == frozenset()
    assert by_label["E_v0(2)"].J == {1}
    assert by_label["G_v(2)"].J == {2}
    assert by_label["G_v0(2)"].J == {1, 2}
    # 6 permutations x 3 subsets = 18 specs, all accounted for
    assert sum(len(c.members) for c in classes) == 18
    assert len(by_label["G_v0(2)"].members) == 2


def test_catalog_three_dimensional_classical_shadow():
    classes = enumerate_catalog(3, classical=True)
    assert len(classes) == 2
    assert sum(len(c.members) for c in classes) == 18


def test_catalog_rejects_out_of_range():
    with pytest.raises(ValueError):
        enumerate_catalog(2)
    with pytest.raises(ValueError):
        enumerate_catalog(7)


def test_catalog_json_shape():
    data = catalog_json(3)
    assert data["class_count"] == 4
    assert all({"key", "pattern", "J", "members", "label"} <= set(c)
               for c in data["classes"])


def test_condition5_permutation_witness():
    # the same structure matrices commute with the identity but not with
    # a bare 2,3 swap: that merge goes through generator relabeling
    a = spec_with_nil(3, (1, 2, 3), {1})
    b = spec_with_nil(3, (1, 3, 2), {1})
    assert verify_condition5(a, b, (0, 1, 2))
    assert not verify_condition5(a, b, (0, 2, 1))
