import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chaingroup import groups
from chaingroup.center_action import (CenterModel, ChainHomomorphism, act, action_on_center,
                                      admissible_arrow_rank, compose, composition_consistency,
                                      random_unitary_functions, symmetry_obstruction)
from chaingroup.chain import chain_group
from chaingroup.chartable import character_table
from chaingroup.errors import NotAHomomorphism, NotUnitary, UnknownIrrep
from chaingroup.fusion import fusion_coefficients


@pytest.fixture(scope="module")
def d8():
    return chain_group(fusion_coefficients(character_table(groups.dihedral(4))))


@pytest.fixture(scope="module")
def s3():
    return chain_group(fusion_coefficients(character_table(groups.symmetric(3))))


def test_act_composes():
    p, q = (1, 2, 0), (0, 2, 1)
    Z = np.array([1.0, 2.0, 3.0])
    assert np.array_equal(act(p, act(q, Z)), act(compose(p, q), Z))


def test_dihedral_example(d8):
    h = ChainHomomorphism.from_mapping(d8, {1: (1, 0)})
    Z = CenterModel(2).indicator(0)
    r = action_on_center({0: 1, 4: 1}, h, Z)
    assert sorted(t.weight for t in r.terms) == [1, 2]
    assert not r.central
    moved = {t.cls: t.function for t in r.terms}
    assert np.array_equal(moved[0], [1, 0]) and np.array_equal(moved[1], [0, 1])


def test_single_irrep(d8):
    h = ChainHomomorphism.from_mapping(d8, {1: (1, 0)})
    r = action_on_center({4: 1}, h, np.array([2.0, 5.0]))
    assert len(r.terms) == 1 and r.terms[0].weight == 2
    assert np.array_equal(r.terms[0].function, [5, 2])
    assert r.central


def test_trivial_h_is_central(d8):
    h = ChainHomomorphism.trivial(d8, 3)
    Z = np.array([1.0, 2.0, 3.0])
    r = action_on_center({0: 2, 1: 1, 4: 3}, h, Z)
    assert r.central
    assert r.total_weight == 2 + 1 + 6
    assert len(r.entries) == 1 and np.array_equal(r.entries[0].function, Z)


def test_constant_z_is_central(d8):
    h = ChainHomomorphism.from_mapping(d8, {1: (1, 0)})
    assert action_on_center({0: 1, 4: 1}, h, CenterModel(2).constant(3.0)).central


def test_unknown_irrep(d8):
    with pytest.raises(UnknownIrrep):
        action_on_center({9: 1}, ChainHomomorphism.trivial(d8, 2), np.ones(2))


def test_not_a_homomorphism(d8):
    # the nontrivial class has order 2, a 3-cycle cannot be its image
    with pytest.raises(NotAHomomorphism):
        ChainHomomorphism.from_mapping(d8, {1: (1, 2, 0)})


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=5, max_size=5), st.booleans())
def test_weights_sum_to_dimension(mult, swap):
    C = chain_group(fusion_coefficients(character_table(groups.dihedral(4))))
    if not any(mult):
        mult[0] = 1
    h = ChainHomomorphism.from_mapping(C, {1: (1, 0)}) if swap else ChainHomomorphism.trivial(C, 2)
    r = action_on_center(np.array(mult), h, np.array([1.0, -1.0]))
    d = np.array(C.ring.dims)
    assert sum(t.weight for t in r.terms) == int(np.array(mult) @ d)
    # classes listed are exactly those meeting the support
    assert {t.cls for t in r.terms} == {int(C.partition[i]) for i in np.flatnonzero(mult)}


def test_composition_examples(d8, s3):
    h = ChainHomomorphism.from_mapping(d8, {1: (1, 0)})
    assert composition_consistency({4: 1}, {4: 1}, h)
    assert composition_consistency({4: 1, 1: 2}, {0: 1}, h)
    sigma = 2
    R = s3.ring
    out = R.fuse(np.eye(R.rank, dtype=int)[sigma], np.eye(R.rank, dtype=int)[sigma])
    assert {int(s3.partition[k]) for k in np.flatnonzero(out)} == {0}
    assert composition_consistency({sigma: 1}, {sigma: 1}, ChainHomomorphism.trivial(s3, 2))


def test_regular_homomorphism_consistency():
    C = chain_group(fusion_coefficients(character_table(groups.cyclic(6))))
    h = ChainHomomorphism.regular(C)
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b = rng.integers(0, 2, 6), rng.integers(0, 2, 6)
        a[0] = b[1] = 1
        assert composition_consistency(a, b, h, seed=int(rng.integers(1000)))


def test_symmetry_trivial_h_true(d8):
    h = ChainHomomorphism.trivial(d8, 3)
    rng = np.random.default_rng(5)
    for _ in range(20):
        assert symmetry_obstruction(h, 1, 0, random_unitary_functions(2, 3, rng),
                                    random_unitary_functions(2, 3, rng))


def test_symmetry_identity_matrices(d8):
    h = ChainHomomorphism.from_mapping(d8, {1: (1, 0)})
    eye = np.repeat(np.eye(2)[:, :, None], 2, axis=2)
    assert symmetry_obstruction(h, 1, 1, eye, eye)


def test_symmetry_swap_counterexample(d8):
    h = ChainHomomorphism.from_mapping(d8, {1: (1, 0)})
    ZA = np.zeros((2, 2, 2), dtype=complex)
    ZA[0, 0] = [1, -1]
    ZA[1, 1] = 1
    ZB = np.ones((1, 1, 2), dtype=complex)
    assert symmetry_obstruction(h, 1, 1, ZA, ZB) is False


def test_symmetry_not_unitary(d8):
    h = ChainHomomorphism.trivial(d8, 2)
    bad = np.full((1, 1, 2), 2.0)
    with pytest.raises(NotUnitary):
        symmetry_obstruction(h, 0, 0, bad, bad)


def test_admissible_rank(s3):
    R = s3.ring
    e = np.eye(R.rank, dtype=int)
    assert admissible_arrow_rank(e[2], e[2]) == 1
    tau = np.array([2, 0, 3])
    assert admissible_arrow_rank(e[2], tau) == 3
    ss = R.fuse(e[2], e[2])
    assert admissible_arrow_rank(ss, ss) == 3
