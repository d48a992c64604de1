"""Channel constructions against independent oracles.

The decisive check is the discrete-enumeration oracle: for a finite-support
measure the mean channel is a plain average over |support|^d phase tuples,
computable without the closed form the library uses.
"""

import itertools
import math

import numpy as np
import pytest

from phasemix import channels, linalg, measures
from phasemix.errors import NumericalError, ShapeError, ValidationError

TOL = 1e-12


def conj_superop(k):
    return linalg.kron(k.conj(), k)


def enumerated_mean_superop(u, support):
    """Oracle: average conjugation superoperator over all phase tuples."""
    d = u.shape[0]
    total = np.zeros((d * d, d * d), dtype=complex)
    count = 0
    for combo in itertools.product(support, repeat=d):
        k = u * np.exp(1j * np.asarray(combo))[None, :]
        total += conj_superop(k)
        count += 1
    return total / count


@pytest.mark.parametrize("d,seed", [(2, 21), (3, 22)])
@pytest.mark.parametrize(
    "support",
    [(-math.pi / 2, math.pi / 2), (0.0, 1.1), (0.3, -0.9, 2.2)],
)
def test_mean_channel_matches_enumeration_oracle(d, seed, support):
    u = linalg.random_unitary(d, seed)
    mu = measures.DiscreteUniform(support)
    got = channels.mean_channel(u, mu).superoperator
    want = enumerated_mean_superop(u, support)
    assert linalg.hs_norm(got - want) < TOL


def test_mean_channel_action_formula():
    # E(Phi)(rho) = U (|m|^2 rho + (1-|m|^2) diag(rho)) U^dagger
    u = linalg.random_unitary(3, 30)
    mu = measures.UniformInterval(-1.0, 1.0)
    m2 = abs(measures.first_moment(mu)) ** 2
    rho = linalg.random_density(3, 31)
    got = channels.apply(channels.mean_channel(u, mu), rho)
    want = u @ (m2 * rho + (1 - m2) * np.diag(np.diag(rho))) @ u.conj().T
    assert linalg.hs_norm(got - want) < TOL


def test_unitary_conjugation_action():
    u = linalg.random_unitary(4, 40)
    rho = linalg.random_density(4, 41)
    got = channels.apply(channels.unitary_conjugation(u), rho)
    assert linalg.hs_norm(got - u @ rho @ u.conj().T) < TOL


def test_sample_random_channel_is_conjugation_by_phased_unitary():
    u = linalg.random_unitary(3, 50)
    theta = np.array([0.2, -1.1, 2.4])
    ch = channels.sample_random_channel(u, theta)
    u_theta = u * np.exp(1j * theta)[None, :]
    want = channels.unitary_conjugation(u_theta)
    assert linalg.hs_norm(ch.superoperator - want.superoperator) < TOL


def test_mean_channel_kraus_realizes_superoperator():
    u = linalg.random_unitary(4, 60)
    mu = measures.UniformInterval(-2.0, 0.5)
    ch = channels.mean_channel(u, mu)
    from_kraus = sum(conj_superop(k) for k in ch.kraus)
    assert linalg.hs_norm(ch.superoperator - from_kraus) < TOL
    completeness = sum(linalg.dagger(k) @ k for k in ch.kraus)
    assert linalg.hs_norm(completeness - np.eye(4)) < 1e-13


def test_mean_channel_covariance_split():
    # conjugating by U after dephasing with the same measure is the same channel
    u = linalg.random_unitary(3, 70)
    mu = measures.DiscreteUniform((0.0, 0.8, -0.8))
    direct = channels.mean_channel(u, mu)
    split = channels.compose(channels.unitary_conjugation(u),
                             channels.mean_channel(np.eye(3, dtype=complex), mu))
    assert linalg.hs_norm(direct.superoperator - split.superoperator) < TOL


def test_point_mass_mean_is_plain_conjugation():
    u = linalg.random_unitary(2, 80)
    ch = channels.mean_channel(u, measures.PointMass(0.9))
    u_theta = u * np.exp(1j * 0.9)
    want = channels.unitary_conjugation(u_theta)
    assert linalg.hs_norm(ch.superoperator - want.superoperator) < TOL


@pytest.mark.parametrize(
    "mu",
    [
        measures.uniform_circle(),
        measures.UniformInterval(-1.0, 1.0),
        measures.DiscreteUniform((-math.pi / 2, math.pi / 2)),
        measures.PointMass(0.4),
    ],
)
def test_mean_channels_are_bistochastic(mu):
    u = linalg.random_unitary(3, 90)
    check = channels.is_bistochastic(channels.mean_channel(u, mu))
    assert check.ok
    assert check.trace_residual < 1e-9 and check.unital_residual < 1e-9


def test_mean_channels_are_completely_positive():
    u = linalg.random_unitary(3, 91)
    choi = channels.choi_matrix(channels.mean_channel(u, measures.uniform_circle()))
    assert choi.is_cp
    assert choi.min_eigenvalue > -1e-9
    assert choi.matrix.shape == (9, 9)


def test_choi_flags_non_cp_map():
    # the transpose map is positive but not completely positive
    d = 2
    swap = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            swap[i * d + j, j * d + i] = 1.0
    transpose_map = channels.Channel(dim=d, superoperator=swap.astype(complex),
                                     kraus=None, provenance="composite")
    choi = channels.choi_matrix(transpose_map)
    assert not choi.is_cp
    assert choi.min_eigenvalue < -0.5


def test_apply_validates_output():
    bogus = channels.Channel(dim=2, superoperator=2.0 * np.eye(4, dtype=complex),
                             kraus=None, provenance="composite")
    rho = linalg.random_density(2, 100)
    with pytest.raises(NumericalError):
        channels.apply(bogus, rho, validate=True)
    out = channels.apply(bogus, rho, validate=False)
    assert abs(np.trace(out) - 2.0) < TOL


def test_apply_rejects_wrong_dimension():
    ch = channels.identity_channel(2)
    with pytest.raises(ShapeError):
        channels.apply(ch, linalg.random_density(3, 101))


def test_compose_order():
    # compose(phi, psi) must mean "psi first, then phi"
    u1 = linalg.random_unitary(2, 110)
    u2 = linalg.random_unitary(2, 111)
    seq = channels.compose(channels.unitary_conjugation(u1), channels.unitary_conjugation(u2))
    want = channels.unitary_conjugation(u1 @ u2)
    assert linalg.hs_norm(seq.superoperator - want.superoperator) < TOL


def test_power_small_and_large_agree_with_repeats():
    u = linalg.random_unitary(2, 120)
    ch = channels.mean_channel(u, measures.UniformInterval(-1.0, 1.0))
    rho = linalg.random_density(2, 121)
    for n in (0, 1, 3, 9):
        got = channels.apply(channels.power(ch, n), rho, validate=False)
        want = rho.copy()
        for _ in range(n):
            want = channels.apply(ch, want, validate=False)
        assert linalg.hs_norm(got - want) < 1e-11, f"power {n}"


def test_power_rejects_negative():
    ch = channels.identity_channel(2)
    with pytest.raises(ValueError):
        channels.power(ch, -1)


def test_identity_channel_is_identity():
    rho = linalg.random_density(3, 130)
    assert linalg.hs_norm(channels.apply(channels.identity_channel(3), rho) - rho) < TOL


def test_monte_carlo_mean_seeded_and_converging():
    u = linalg.random_unitary(2, 140)
    mu = measures.uniform_circle()
    exact = channels.mean_channel(u, mu).superoperator
    a = channels.monte_carlo_mean(u, mu, 500, seed=7)
    b = channels.monte_carlo_mean(u, mu, 500, seed=7)
    assert linalg.hs_norm(a.superoperator - b.superoperator) == 0.0
    err_small = linalg.hs_norm(channels.monte_carlo_mean(u, mu, 100, seed=8).superoperator - exact)
    err_big = linalg.hs_norm(channels.monte_carlo_mean(u, mu, 40000, seed=8).superoperator - exact)
    assert err_big < err_small / 5  # ~ sqrt(400) = 20x expected


def test_monte_carlo_provenance_records_sample_count():
    u = linalg.random_unitary(2, 150)
    ch = channels.monte_carlo_mean(u, measures.uniform_circle(), 256, seed=1)
    assert "256" in ch.provenance


def test_channel_from_kraus_completeness_check():
    # operators that do not sum to identity must be rejected
    bad = (0.5 * np.eye(2, dtype=complex),)
    with pytest.raises(ValidationError):
        channels.channel_from_kraus(bad)


def test_mean_channel_rejects_non_unitary():
    with pytest.raises(ValidationError):
        channels.mean_channel(np.ones((2, 2)), measures.uniform_circle())


def test_diag_projector_structure():
    pi = channels.diag_projector(3)
    assert pi.shape == (9, 9)
    np.testing.assert_allclose(pi @ pi, pi, atol=TOL)
    rho = linalg.random_density(3, 160)
    projected = linalg.unvec(pi @ linalg.vec(rho), 3)
    np.testing.assert_allclose(projected, np.diag(np.diag(rho)), atol=TOL)
