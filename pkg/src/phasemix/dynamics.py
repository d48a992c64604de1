"""Iterated dynamics: mean-channel iteration, random Cesaro averages, and the
Hadamard tensor-power model with its exact two-step mixing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import channels, linalg, measures
from .errors import CapacityError, NumericalError, ShapeError

MAX_DUMPED_STEPS = 100

__all__ = [
    "Trajectory",
    "iterate_mean",
    "cesaro_trajectory",
    "hadamard_model",
    "two_step_mixing_residual",
]


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Per-step distances from a dynamics run, indices 1..n_max."""

    indices: np.ndarray
    distance_to_mixed: np.ndarray
    cesaro_distance: np.ndarray | None
    metadata: dict
    states: tuple[np.ndarray, ...] | None = None


def _check_run_args(U, rho0, n_max: int, dump_states: bool):
    u = linalg.check_unitary(U)
    rho = linalg.check_density(rho0)
    if rho.shape[0] != u.shape[0]:
        raise ShapeError(f"state dim {rho.shape[0]} != unitary dim {u.shape[0]}")
    if n_max < 1:
        raise ShapeError(f"need n_max >= 1, got {n_max}")
    if dump_states and n_max > MAX_DUMPED_STEPS:
        raise CapacityError(f"state dumping is capped at n_max <= {MAX_DUMPED_STEPS}")
    return u, rho


def _step_guard(rho, n: int):
    # cheap per-step drift check; the full PSD validation lives in tests
    if linalg.hs_norm(rho - rho.conj().T) > 1e-9 or abs(np.trace(rho) - 1.0) > 1e-9:
        raise NumericalError(f"state drifted off the state space at step {n}")


def iterate_mean(
    U,
    measure: measures.PhaseMeasure,
    rho0,
    n_max: int,
    dump_states: bool = False,
) -> Trajectory:
    """Distances of (E Phi)^k rho0 to I/d for k = 1..n_max, by repeated apply."""
    u, rho = _check_run_args(U, rho0, n_max, dump_states)
    phi = channels.mean_channel(u, measure)
    mixed = np.eye(phi.dim, dtype=complex) / phi.dim
    dists = np.empty(n_max)
    dumped = []
    for k in range(1, n_max + 1):
        rho = channels.apply(phi, rho, validate=False)
        _step_guard(rho, k)
        dists[k - 1] = np.linalg.norm(rho - mixed)
        if dump_states:
            dumped.append(rho.copy())
    meta = {
        "kind": "iterate-mean",
        "measure": measures.measure_label(measure),
        "dim": phi.dim,
        "n_max": n_max,
    }
    return Trajectory(
        indices=np.arange(1, n_max + 1),
        distance_to_mixed=dists,
        cesaro_distance=None,
        metadata=meta,
        states=tuple(dumped) if dump_states else None,
    )


def cesaro_trajectory(
    U,
    measure: measures.PhaseMeasure,
    rho0,
    n_max: int,
    seed: int,
    dump_states: bool = False,
) -> Trajectory:
    """One random trajectory rho_k = Phi_{U_theta_k}(rho_{k-1}), fresh theta each step.

    Records both the state's distance to I/d and the distance of the running
    average (rho_1 + ... + rho_k)/k, whose convergence is the almost-sure claim.
    """
    u, rho = _check_run_args(U, rho0, n_max, dump_states)
    d = u.shape[0]
    phases = measures.sample_matrix(measure, n_max, d, seed)
    factors = np.exp(1j * phases)
    mixed = np.eye(d, dtype=complex) / d
    dists = np.empty(n_max)
    cesaro = np.empty(n_max)
    running = np.zeros((d, d), dtype=complex)
    dumped = []
    for k in range(1, n_max + 1):
        u_theta = u * factors[k - 1][None, :]
        rho = u_theta @ rho @ u_theta.conj().T
        if k % 256 == 0:
            _step_guard(rho, k)
        running += rho
        dists[k - 1] = np.linalg.norm(rho - mixed)
        cesaro[k - 1] = np.linalg.norm(running / k - mixed)
        if dump_states:
            dumped.append(rho.copy())
    meta = {
        "kind": "cesaro",
        "measure": measures.measure_label(measure),
        "dim": d,
        "n_max": n_max,
        "seed": seed,
    }
    return Trajectory(
        indices=np.arange(1, n_max + 1),
        distance_to_mixed=dists,
        cesaro_distance=cesaro,
        metadata=meta,
        states=tuple(dumped) if dump_states else None,
    )


def hadamard_model(k: int) -> tuple[np.ndarray, measures.UniformInterval]:
    """The k-fold Hadamard tensor power with uniform phases on (-pi, pi).

    Every entry of H^(x)k is +-2^(-k/2), so the all-entries-nonzero case
    applies and the mean channel mixes any state in exactly two steps.
    """
    return linalg.hadamard_power(k), measures.uniform_circle()


def two_step_mixing_residual(k: int, rho0) -> float:
    """|| (E Phi)^2 rho0 - I/2^k ||_HS for the k-qubit Hadamard model; exactly 0."""
    u, measure = hadamard_model(k)
    d = u.shape[0]
    rho = linalg.check_density(rho0)
    if rho.shape[0] != d:
        raise ShapeError(f"state dim {rho.shape[0]} != model dim {d}")
    phi = channels.mean_channel(u, measure)
    out = channels.apply(phi, channels.apply(phi, rho, validate=False), validate=False)
    return linalg.dist_to_maximally_mixed(out)
