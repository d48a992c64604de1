"""Linear-algebra kernel: vec identities, eig ordering contract, validators."""

import numpy as np
import pytest

from phasemix import linalg
from phasemix.errors import CapacityError, ShapeError, ValidationError

TOL = 1e-12


def rand_complex(rng, d, d2=None):
    return rng.standard_normal((d, d2 or d)) + 1j * rng.standard_normal((d, d2 or d))


def test_vec_unvec_round_trip():
    rng = np.random.Generator(np.random.PCG64(1))
    m = rand_complex(rng, 5)
    np.testing.assert_array_equal(linalg.unvec(linalg.vec(m), 5), m)


def test_vec_is_column_stacking():
    m = np.array([[1, 2], [3, 4]], dtype=complex)
    np.testing.assert_array_equal(linalg.vec(m), np.array([1, 3, 2, 4], dtype=complex))


def test_vec_kron_identity():
    # vec(A X B) = (B^T kron A) vec(X): the convention every superoperator uses
    rng = np.random.Generator(np.random.PCG64(2))
    a, x, b = rand_complex(rng, 4), rand_complex(rng, 4), rand_complex(rng, 4)
    lhs = linalg.vec(a @ x @ b)
    rhs = linalg.kron(b.T, a) @ linalg.vec(x)
    assert np.linalg.norm(lhs - rhs) < TOL


def test_unvec_rejects_non_square_length():
    with pytest.raises(ShapeError):
        linalg.unvec(np.zeros(5), None)


def test_hs_inner_and_norm():
    a = np.array([[1, 1j], [0, 2]], dtype=complex)
    b = np.array([[2, 0], [1, -1j]], dtype=complex)
    # tr(a^dagger b) by hand: conj(1)*2 + conj(1j)*0 + 0*1 + conj(2)*(-1j)
    assert abs(linalg.hs_inner(a, b) - (2 - 2j)) < TOL
    assert abs(linalg.hs_norm(a) - np.sqrt(1 + 1 + 4)) < TOL


def test_dagger_and_hermitize():
    rng = np.random.Generator(np.random.PCG64(3))
    m = rand_complex(rng, 3)
    np.testing.assert_array_equal(linalg.dagger(m), m.conj().T)
    h = linalg.hermitize(m)
    assert linalg.hs_norm(h - h.conj().T) < TOL


def test_eig_ordering_contract():
    # descending |w|, ties by real part then imaginary part, both descending
    w_in = np.array([0.5, -1.0, 1.0, 1j, -1j])
    w, v = linalg.eig(np.diag(w_in))
    expected = np.array([1.0, 1j, -1j, -1.0, 0.5])
    np.testing.assert_allclose(w, expected, atol=TOL)
    for i in range(5):
        assert np.linalg.norm(np.diag(w_in) @ v[:, i] - w[i] * v[:, i]) < TOL


def test_eig_matches_numpy_on_random_matrix():
    rng = np.random.Generator(np.random.PCG64(4))
    m = rand_complex(rng, 6)
    w, v = linalg.eig(m)
    assert linalg.pair_distance(w, np.linalg.eigvals(m)) < 1e-9
    resid = np.linalg.norm(m @ v - v * w[None, :], axis=0)
    assert resid.max() < 1e-10 * np.linalg.norm(m)


def test_eig_capacity_cap():
    with pytest.raises(CapacityError):
        linalg.eig(np.eye(linalg.MAX_DIM + 1))


def test_eig_rejects_nonfinite():
    m = np.eye(3, dtype=complex)
    m[0, 0] = np.nan
    with pytest.raises(ValidationError):
        linalg.eig(m)


def test_dist_to_maximally_mixed_hand_value():
    rho = np.diag([1.0, 0.0]).astype(complex)
    assert abs(linalg.dist_to_maximally_mixed(rho) - np.sqrt(0.5)) < TOL


@pytest.mark.parametrize("d", [2, 3, 5])
def test_dft_matrix_is_unitary_and_dense(d):
    f = linalg.dft_matrix(d)
    assert linalg.unitarity_residual(f) < 1e-12
    assert np.abs(f).min() > 0.9 / np.sqrt(d)  # every entry has modulus 1/sqrt(d)


def test_dft_2_equals_hadamard():
    np.testing.assert_allclose(linalg.dft_matrix(2), linalg.hadamard_power(1), atol=TOL)


def test_hadamard_power_recursion_and_cap():
    h1 = linalg.hadamard_power(1)
    np.testing.assert_allclose(linalg.hadamard_power(2), linalg.kron(h1, h1), atol=TOL)
    np.testing.assert_allclose(h1, np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=TOL)
    with pytest.raises(CapacityError):
        linalg.hadamard_power(5)


def test_pauli_matrices():
    np.testing.assert_array_equal(linalg.pauli_x(), np.array([[0, 1], [1, 0]], dtype=complex))
    np.testing.assert_array_equal(linalg.pauli_z(), np.array([[1, 0], [0, -1]], dtype=complex))


def test_matrix_unit():
    e = linalg.matrix_unit(3, 1, 2)
    assert e[1, 2] == 1 and np.count_nonzero(e) == 1


@pytest.mark.parametrize("d,seed", [(2, 0), (4, 7), (6, 123)])
def test_random_unitary_contract(d, seed):
    u = linalg.random_unitary(d, seed)
    assert u.shape == (d, d)
    assert linalg.unitarity_residual(u) < 1e-12
    np.testing.assert_array_equal(u, linalg.random_unitary(d, seed))
    assert not np.allclose(u, linalg.random_unitary(d, seed + 1))


@pytest.mark.parametrize("d,seed", [(2, 1), (5, 99)])
def test_random_density_contract(d, seed):
    rho = linalg.random_density(d, seed)
    linalg.check_density(rho)  # hermitian, unit trace, PSD
    np.testing.assert_array_equal(rho, linalg.random_density(d, seed))


def test_check_unitary_accepts_and_rejects():
    linalg.check_unitary(linalg.dft_matrix(4))
    with pytest.raises(ValidationError) as err:
        linalg.check_unitary(2.0 * np.eye(2))
    assert err.value.residual > 1.0
    with pytest.raises(ShapeError):
        linalg.check_unitary(np.ones((2, 3)))


def test_check_density_rejects_bad_states():
    with pytest.raises(ValidationError):
        linalg.check_density(np.diag([0.7, 0.7]).astype(complex))  # trace 1.4
    with pytest.raises(ValidationError):
        linalg.check_density(np.array([[0.5, 0.5], [0.0, 0.5]], dtype=complex))  # not hermitian
    with pytest.raises(ValidationError):
        linalg.check_density(np.diag([1.5, -0.5]).astype(complex))  # negative eigenvalue


def test_partial_trace_of_product_state():
    a = linalg.random_density(2, 10)
    b = linalg.random_density(2, 11)
    joint = linalg.kron(a, b)
    # tracing out one unit-trace factor of a product state leaves the other
    np.testing.assert_allclose(linalg.partial_trace(joint, 2, 0), b, atol=TOL)
    np.testing.assert_allclose(linalg.partial_trace(joint, 2, 1), a, atol=TOL)
    with pytest.raises(ShapeError):
        linalg.partial_trace(joint, 3, 0)


def test_pair_distance_on_permutations():
    rng = np.random.Generator(np.random.PCG64(6))
    w = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    perm = rng.permutation(8)
    assert linalg.pair_distance(w, w[perm]) < TOL


def test_pair_distance_reports_worst_displacement():
    a = np.array([0.0, 1.0, 2.0])
    b = np.array([0.0, 1.1, 2.0])
    assert abs(linalg.pair_distance(a, b) - 0.1) < TOL


def test_pair_distance_length_mismatch():
    with pytest.raises(ShapeError):
        linalg.pair_distance(np.zeros(2), np.zeros(3))
