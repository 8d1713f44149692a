import numpy as np
import pytest

from chaingroup import groups, spectral
from chaingroup.errors import NonAbelianGroup, NotAHomomorphism, NotInvariant, NotUnitary

SIGN = np.diag([1.0, -1.0])


@pytest.fixture(scope="module")
def z2_diag():
    return spectral.from_generators(groups.cyclic(2), {1: SIGN})


@pytest.fixture(scope="module")
def s3_regular():
    return spectral.regular_system(groups.symmetric(3))


def E(i, j, n=2):
    M = np.zeros((n, n), dtype=complex)
    M[i, j] = 1
    return M


def test_sign_projection_of_matrix_unit(z2_diag):
    assert np.allclose(spectral.spectral_projection(z2_diag, 1, E(0, 1)), E(0, 1))
    assert np.allclose(spectral.spectral_projection(z2_diag, 0, E(0, 1)), 0)


def test_trivial_projection_is_average(s3_regular, rng):
    F = s3_regular.algebra.random_element(rng)
    avg = s3_regular.alpha_all(F).mean(axis=0)
    assert np.allclose(spectral.spectral_projection(s3_regular, 0, F), avg)


def test_invariant_element_has_no_other_components(s3_regular, rng):
    A = spectral.fixed_point_algebra(s3_regular)
    a = A.random_element(rng)
    for D in range(1, s3_regular.table.rank):
        assert np.abs(spectral.spectral_projection(s3_regular, D, a)).max() < 1e-12


def test_parseval_identity_single_term(s3_regular):
    r = spectral.parseval_check(s3_regular, np.eye(6))
    assert r.residual < 1e-12 and r.nonzero_terms == [0]


def test_parseval_random(s3_regular, rng):
    for _ in range(20):
        r = spectral.parseval_check(s3_regular, s3_regular.algebra.random_element(rng))
        assert r.residual < 1e-9 and r.reconstruction_residual < 1e-9


def test_isotypic_single_term(s3_regular, rng):
    F = spectral.spectral_projection(s3_regular, 2, s3_regular.algebra.random_element(rng))
    assert spectral.parseval_check(s3_regular, F).nonzero_terms == [2]


def test_projection_checks(s3_regular):
    pc = spectral.projection_checks(s3_regular, samples=10)
    assert pc.max_residual() < 1e-9


def test_norm_bounds(s3_regular):
    nb = spectral.norm_bound_check(s3_regular, samples=30)
    assert nb.ok
    two = list(s3_regular.table.dims).index(2)
    assert nb.max_ratio[two] <= 2 ** 1.5 + 1e-9


def test_regular_fixed_point_dims():
    # commutant of the left regular representation is the right regular algebra
    for G in (groups.cyclic(4), groups.symmetric(3)):
        assert spectral.fixed_point_algebra(spectral.regular_system(G)).dim == G.order


def test_swap_blocks_not_minimal():
    sysm = spectral.swap_blocks_system(2)
    A = spectral.fixed_point_algebra(sysm)
    rc = spectral.relative_commutant(sysm, A)
    Z = spectral.algebra_center(A)
    assert (A.dim, rc.dim, Z.dim) == (4, 2, 1)
    # the unitary I + (-I) is invariant-up-to-sign and commutes with A
    U = np.diag([1, 1, -1, -1]).astype(complex)
    assert np.allclose(spectral.spectral_projection(sysm, 1, U), U)
    assert rc.contains(U)


def test_diag_minimal(z2_diag):
    r = spectral.minimality_report(z2_diag)
    assert r.dim_fixed == 2 and r.dim_relative_commutant == 2 and r.dim_center == 2
    assert r.minimal and r.disjoint and r.biconditional


def test_trivial_system_minimal():
    r = spectral.minimality_report(spectral.trivial_system(3))
    assert r.dim_fixed == 9 and r.dim_relative_commutant == 1 and r.minimal


def test_hilbert_space_sign_is_off_diagonal(z2_diag):
    U = spectral.algebraic_hilbert_space(z2_diag, 1)
    assert np.allclose(U @ U.conj().T, np.eye(2))
    assert np.allclose(np.diag(U), 0)
    assert np.allclose(z2_diag.alpha(1, U), -U)


def test_hilbert_space_trivial_is_identity(z2_diag):
    assert np.allclose(spectral.algebraic_hilbert_space(z2_diag, 0), np.eye(2))


def test_zn_regular_hilbert_spaces():
    n = 5
    sysm = spectral.regular_system(groups.cyclic(n))
    T = sysm.table
    chi = T.on_elements()
    for D in range(n):
        U = spectral.algebraic_hilbert_space(sysm, D)
        assert U is not None
        for g in range(n):
            assert np.allclose(sysm.alpha(g, U), chi[D, g] * U)


def test_zn_regular_minimal_and_disjoint():
    for n in (2, 3, 4):
        r = spectral.minimality_report(spectral.regular_system(groups.cyclic(n)))
        assert r.minimal and r.disjoint and r.biconditional
        assert all(v == 0 for v in r.intertwiner_dims.values())


def test_iota_iota_is_center(s3_regular):
    A = spectral.fixed_point_algebra(s3_regular)
    iota = spectral.identity_endomorphism(A)
    assert spectral.intertwiner_space(iota, iota, A).shape[0] == spectral.algebra_center(A).dim


def test_nonabelian_refused(s3_regular):
    with pytest.raises(NonAbelianGroup):
        spectral.algebraic_hilbert_space(s3_regular, 1)


def test_canonical_endomorphism_not_invariant():
    sysm = spectral.swap_blocks_system(2)
    A = spectral.fixed_point_algebra(sysm)
    P = np.zeros((4, 4), dtype=complex)
    P[0, 2] = P[2, 0] = P[1, 1] = P[3, 3] = 1
    with pytest.raises(NotInvariant):
        spectral.canonical_endomorphism(sysm, P, A=A)


def test_validation():
    G = groups.cyclic(2)
    with pytest.raises(NotUnitary):
        spectral.from_generators(G, {1: np.diag([2.0, 1.0])})
    with pytest.raises(NotAHomomorphism):
        spectral.make_system(G, np.array([np.eye(2), np.diag([1j, 1])]))
    with pytest.raises(NotInvariant):
        # upper triangular matrices are not *-closed
        spectral.from_generators(G, {1: SIGN}, spectral.Subalgebra.span([E(0, 0), E(1, 1), E(0, 1)], 2))
    with pytest.raises(NotInvariant):
        # span{1, X} with X = [[1, 2], [2, -1]] is a *-algebra, but swap sends X outside it
        spectral.from_generators(G, {1: np.array([[0, 1], [1, 0]])},
                                 spectral.Subalgebra.span([np.eye(2), E(0, 0) - E(1, 1) + 2 * E(0, 1) + 2 * E(1, 0)], 2))
