"""Discrete Kraus realization of the uniform-phase mean channel.

The mean channel for uniform phases on (-pi, pi) admits an exact operator-sum
representation with 2^d Kraus operators

    K_s = 2^(-d/2) U diag(e^{i theta_1}, ..., e^{i theta_d}),

one per sign pattern with each theta_j in {-pi/2, +pi/2}. Averaging over the
patterns leaves diagonal entries alone and kills off-diagonals because
e^{i(theta_j - theta_l)} is +-1 and the two-point mean of e^{i theta} is 0.
The pattern index is the integer whose bit j selects theta_{j+1}
(bit 0 -> -pi/2, bit 1 -> +pi/2), fixing the serialization order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import channels, linalg, measures
from .errors import CapacityError

MAX_DISCRETE_DIM = 10
HALF_PI_PHASES = (-math.pi / 2, math.pi / 2)

__all__ = [
    "MAX_DISCRETE_DIM",
    "HALF_PI_PHASES",
    "DiscreteKrausSet",
    "discrete_kraus",
    "verify_discretization",
]


@dataclass(frozen=True, eq=False)
class DiscreteKrausSet:
    """All 2^d pattern operators in ascending pattern order."""

    dim: int
    operators: tuple[np.ndarray, ...]
    phases: tuple[float, float] = HALF_PI_PHASES

    def channel(self) -> channels.Channel:
        return channels.channel_from_kraus(self.operators, "discrete-kraus")


def discrete_kraus(U, phases: tuple[float, float] = HALF_PI_PHASES) -> DiscreteKrausSet:
    """Enumerate the 2^d pattern operators for U (d <= 10).

    The two-point set defaults to {-pi/2, +pi/2}; other sets are accepted so
    the construction's failure away from that choice can be demonstrated.
    """
    u = linalg.check_unitary(U)
    d = u.shape[0]
    if d > MAX_DISCRETE_DIM:
        raise CapacityError(f"discrete Kraus sets are capped at d <= {MAX_DISCRETE_DIM}, got {d}")
    lo, hi = float(phases[0]), float(phases[1])
    weight = 2.0 ** (-d / 2.0)
    ops = []
    for pattern in range(2**d):
        theta = np.array([hi if (pattern >> j) & 1 else lo for j in range(d)])
        ops.append(weight * u * np.exp(1j * theta)[None, :])
    return DiscreteKrausSet(dim=d, operators=tuple(ops), phases=(lo, hi))


def verify_discretization(U, phases: tuple[float, float] = HALF_PI_PHASES) -> float:
    """HS distance between the discrete channel and the exact uniform mean.

    Zero (to rounding) for the +-pi/2 set; positive for every two-point set
    whose phase difference is not a multiple of pi.
    """
    discrete = discrete_kraus(U, phases).channel()
    exact = channels.mean_channel(U, measures.uniform_circle())
    return linalg.hs_norm(discrete.superoperator - exact.superoperator)
