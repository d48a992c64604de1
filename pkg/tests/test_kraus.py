"""Discrete Kraus sets against a brute-force enumeration oracle."""

import itertools
import math

import numpy as np
import pytest

from phasemix import channels, kraus, linalg, measures
from phasemix.errors import CapacityError

TOL = 1e-12


def enumeration_superop(u, lo, hi):
    """Oracle: average the conjugation superoperator over all 2^d sign tuples,
    enumerated independently of the library's pattern/bit convention."""
    d = u.shape[0]
    total = np.zeros((d * d, d * d), dtype=complex)
    for combo in itertools.product((lo, hi), repeat=d):
        k = u * np.exp(1j * np.asarray(combo))[None, :]
        total += np.kron(k.conj(), k)
    return total / 2**d


@pytest.mark.parametrize("d,seed", [(1, 1), (2, 2), (3, 3)])
def test_discrete_channel_matches_enumeration_oracle(d, seed):
    u = linalg.random_unitary(d, seed)
    ch = kraus.discrete_kraus(u).channel()
    want = enumeration_superop(u, -math.pi / 2, math.pi / 2)
    assert linalg.hs_norm(ch.superoperator - want) < TOL


def test_discrete_set_shape_and_weights():
    ks = kraus.discrete_kraus(np.eye(2, dtype=complex))
    assert ks.dim == 2
    assert len(ks.operators) == 4
    for op in ks.operators:
        nz = np.abs(op[np.abs(op) > 1e-15])
        np.testing.assert_allclose(nz, 0.5, atol=TOL)  # 2^{-d/2} * |e^{i theta}| = 1/2


def test_pattern_bit_convention():
    # bit j of the pattern selects phase j: pattern 1 flips only phase 0 to +pi/2
    ks = kraus.discrete_kraus(np.eye(2, dtype=complex))
    lo, hi = -math.pi / 2, math.pi / 2
    want = 0.5 * np.diag([np.exp(1j * hi), np.exp(1j * lo)])
    np.testing.assert_allclose(ks.operators[1], want, atol=TOL)
    want0 = 0.5 * np.diag([np.exp(1j * lo), np.exp(1j * lo)])
    np.testing.assert_allclose(ks.operators[0], want0, atol=TOL)


@pytest.mark.parametrize(
    "u_factory",
    [
        lambda: np.eye(1, dtype=complex),
        lambda: np.eye(4, dtype=complex),
        lambda: linalg.hadamard_power(2),
        lambda: linalg.dft_matrix(5),
        lambda: linalg.random_unitary(6, 77),
    ],
)
def test_half_pi_discretization_is_exact(u_factory):
    assert kraus.verify_discretization(u_factory()) <= 1e-12


def test_discretization_negative_control_named_instance():
    r = kraus.verify_discretization(np.eye(2, dtype=complex), (0.0, math.pi / 4))
    assert r > 0.01
    # exact value sqrt(2) cos^2(delta/2) at delta = pi/4
    assert abs(r - math.sqrt(2) * math.cos(math.pi / 8) ** 2) < TOL


@pytest.mark.parametrize("a", [0.0, 0.7, -1.3, 2.0])
@pytest.mark.parametrize("delta", [0.1, 0.8, 1.9, 2.6])
def test_two_point_residual_law(a, delta):
    # for U = I_2 and phases {a, a+delta} the mismatch is sqrt(2) cos^2(delta/2):
    # the diagonal terms always match, and each off-diagonal one contributes
    # |e^{i delta} + 1|^2 / 4 = cos^2(delta/2)
    r = kraus.verify_discretization(np.eye(2, dtype=complex), (a, a + delta))
    assert abs(r - math.sqrt(2) * math.cos(delta / 2) ** 2) < TOL


def test_two_point_failure_margin_away_from_pi():
    # every offset at least 0.3 rad away from pi misses by more than 0.01
    rng = np.random.Generator(np.random.PCG64(5))
    for _ in range(25):
        delta = rng.uniform(0.05, math.pi - 0.3)
        a = rng.uniform(-3.0, 3.0)
        assert kraus.verify_discretization(np.eye(2, dtype=complex), (a, a + delta)) > 0.01


def test_phase_difference_pi_is_equivalent_to_half_pi_set():
    # {a, a+pi} works for any a: the global phase e^{ia} cancels in conjugation
    for a in (0.0, 0.4, -2.0):
        assert kraus.verify_discretization(linalg.dft_matrix(3), (a, a + math.pi)) <= 1e-12


def test_discrete_completeness_for_any_phase_pair():
    # sum K^dagger K = I regardless of the phase choice (each term is unitary/2^d)
    u = linalg.random_unitary(3, 9)
    ks = kraus.discrete_kraus(u, (0.3, 1.1))
    total = sum(linalg.dagger(k) @ k for k in ks.operators)
    assert linalg.hs_norm(total - np.eye(3)) < 1e-13


def test_discrete_channel_is_bistochastic():
    ch = kraus.discrete_kraus(linalg.dft_matrix(3)).channel()
    assert channels.is_bistochastic(ch).ok
    assert ch.provenance == "discrete-kraus"


def test_capacity_cap():
    with pytest.raises(CapacityError):
        kraus.discrete_kraus(np.eye(11, dtype=complex))


def test_discretization_agrees_with_sampled_average():
    # statistical cross-check: a two-point Monte Carlo average over the same
    # measure converges to the discrete channel
    u = linalg.random_unitary(2, 13)
    mu = measures.DiscreteUniform(kraus.HALF_PI_PHASES)
    mc = channels.monte_carlo_mean(u, mu, 60000, seed=3)
    exact = kraus.discrete_kraus(u).channel()
    assert linalg.hs_norm(mc.superoperator - exact.superoperator) < 0.03
