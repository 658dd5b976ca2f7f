import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rscompact import matkernel as mk
from rscompact.errors import NotSpecialUnitary, NotUnitary


def random_alcove(n, rng, floor=0.0):
    w = rng.dirichlet(np.ones(n))
    return floor + (np.pi - n * floor) * w


def test_eig_unitary_identity():
    phases, V = mk.eig_unitary(np.eye(2))
    np.testing.assert_allclose(phases, [0, 0], atol=1e-15)
    np.testing.assert_allclose(V.conj().T @ V, np.eye(2), atol=1e-14)


def test_eig_unitary_diagonal():
    phases, V = mk.eig_unitary(np.diag([1j, -1j]))
    np.testing.assert_allclose(phases, [np.pi / 2, 3 * np.pi / 2])
    # V is a permutation matrix up to phases
    np.testing.assert_allclose(np.abs(V), np.eye(2), atol=1e-14)


@pytest.mark.parametrize('n', [1, 2, 4, 6])
def test_eig_unitary_reconstruction(n, rng):
    U = mk.random_unitary(n, rng)
    phases, V = mk.eig_unitary(U)
    assert np.all(np.diff(phases) >= 0)
    assert np.all((phases >= 0) & (phases < 2 * np.pi))
    np.testing.assert_allclose(V @ np.diag(np.exp(1j * phases)) @ V.conj().T, U, atol=1e-10)
    np.testing.assert_allclose(U @ V, V * np.exp(1j * phases), atol=1e-10)


def test_eig_unitary_degenerate_basis_is_orthonormal(rng):
    W = mk.random_unitary(4, rng)
    U = W @ np.diag(np.exp(1j * np.array([0.3, 0.3, 0.3, 2.0]))) @ W.conj().T
    phases, V = mk.eig_unitary(U)
    np.testing.assert_allclose(V.conj().T @ V, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(phases, [0.3, 0.3, 0.3, 2.0], atol=1e-12)


def test_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        mk.eig_unitary(np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(NotSpecialUnitary):
        mk.alcove_reduce(np.diag([1j, 1j]))


def test_delta_of_xi_examples():
    np.testing.assert_allclose(mk.delta_of_xi([np.pi / 2, np.pi / 2]), np.diag([-1j, 1j]),
                               atol=1e-15)
    np.testing.assert_allclose(mk.delta_of_xi([0, np.pi]), np.eye(2), atol=1e-15)


def test_delta_of_xi_rejects_non_alcove():
    with pytest.raises(ValueError):
        mk.delta_of_xi([1.0, 1.0])
    with pytest.raises(ValueError):
        mk.delta_of_xi([-0.5, np.pi + 0.5])


@pytest.mark.parametrize('n', [2, 3, 4, 5, 6])
def test_delta_matches_weight_exponential(n, rng):
    xi = random_alcove(n, rng)
    D = mk.delta_of_xi(xi)
    assert abs(np.linalg.det(D) - 1) < 1e-12
    np.testing.assert_allclose(D, mk.delta_from_weights(xi), atol=1e-12)


def test_fundamental_weights():
    np.testing.assert_allclose(mk.fundamental_weight(2, 1), np.diag([0.5, -0.5]))
    np.testing.assert_allclose(mk.fundamental_weight(3, 2), np.diag([1 / 3, 1 / 3, -2 / 3]))
    for n in range(2, 7):
        for k in range(1, n):
            assert abs(np.trace(mk.fundamental_weight(n, k))) < 1e-15
    with pytest.raises(ValueError):
        mk.fundamental_weight(3, 3)
    with pytest.raises(ValueError):
        mk.fundamental_weight(3, 0)


def test_alcove_reduce_of_delta():
    xi0 = np.full(3, np.pi / 3)
    xi, eta = mk.alcove_reduce(mk.delta_of_xi(xi0))
    np.testing.assert_allclose(xi, xi0, atol=1e-12)


def test_alcove_reduce_identity_is_boundary_point():
    xi, eta = mk.alcove_reduce(np.eye(2))
    np.testing.assert_allclose(xi, [0, np.pi], atol=1e-12)
    np.testing.assert_allclose(eta @ eta.conj().T, np.eye(2), atol=1e-12)


@pytest.mark.parametrize('n', [2, 3, 4, 5, 6])
def test_alcove_reduce_conjugation(n, rng):
    xi0 = random_alcove(n, rng, floor=0.05)
    eta0 = mk.random_special_unitary(n, rng)
    C = eta0.conj().T @ mk.delta_of_xi(xi0) @ eta0
    xi, eta = mk.alcove_reduce(C)
    np.testing.assert_allclose(xi, xi0, atol=1e-10)
    assert abs(np.linalg.det(eta) - 1) < 1e-12
    np.testing.assert_allclose(eta @ C @ eta.conj().T, mk.delta_of_xi(xi), atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 6), seed=st.integers(0, 2**32 - 1))
def test_spectral_functions_invariants(n, seed):
    rng = np.random.default_rng(seed)
    C = mk.random_special_unitary(n, rng)
    xi = mk.spectral_functions(C)
    assert abs(xi.sum() - np.pi) < 1e-10
    assert np.all(xi >= 0)
    eta = mk.random_unitary(n, rng)
    np.testing.assert_allclose(mk.spectral_functions(eta.conj().T @ C @ eta), xi, atol=1e-10)
    assert mk.spectral_function(C, 1) == xi[0]


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 6), seed=st.integers(0, 2**32 - 1))
def test_alcove_roundtrip_interior(n, seed):
    xi0 = random_alcove(n, np.random.default_rng(seed), floor=1e-3)
    np.testing.assert_allclose(mk.spectral_functions(mk.delta_of_xi(xi0)), xi0, atol=1e-10)


def test_is_regular():
    assert not mk.is_regular(np.eye(2))
    assert mk.is_regular(np.diag([1j, -1j]))
    xi = np.array([0.0, 1.0, np.pi - 1.0])
    D = mk.delta_of_xi(xi)
    # phase gap is twice the smallest alcove coordinate
    assert not mk.is_regular(D, tol=1e-9)
    xi = np.array([0.2, 1.0, np.pi - 1.2])
    assert abs(mk.eigenphase_gap(mk.delta_of_xi(xi)) - 0.4) < 1e-12
    assert mk.is_regular(mk.delta_of_xi(xi), tol=0.39)
    assert not mk.is_regular(mk.delta_of_xi(xi), tol=0.41)
