"""Random-phase unitary conjugation channels.

Build channels rho -> U_theta rho U_theta* with U_theta = U diag(e^{i theta}),
average them exactly over the phase distribution, analyze the average's
spectrum and invariant states, simulate iterated and Cesaro dynamics, and
realize the uniform-phase average with a discrete Kraus set.
"""

from .channels import (
    Channel,
    apply,
    channel_from_kraus,
    choi_matrix,
    compose,
    identity_channel,
    is_bistochastic,
    mean_channel,
    monte_carlo_mean,
    power,
    sample_random_channel,
    unitary_conjugation,
)
from .dynamics import (
    Trajectory,
    cesaro_trajectory,
    hadamard_model,
    iterate_mean,
    two_step_mixing_residual,
)
from .errors import CapacityError, NumericalError, ShapeError, ValidationError
from .kraus import DiscreteKrausSet, discrete_kraus, verify_discretization
from .linalg import (
    dist_to_maximally_mixed,
    eig,
    hs_inner,
    hs_norm,
    kron,
    unvec,
    vec,
)
from .measures import (
    DiscreteUniform,
    PhaseMeasure,
    PointMass,
    UniformInterval,
    circular_variance,
    first_moment,
    is_nondegenerate,
    parse_measure,
    sample,
    uniform_circle,
)
from .spectral import (
    SpectralReport,
    classify_unitary,
    invariant_states,
    spectral_report,
    unistochastic_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "Channel",
    "Trajectory",
    "SpectralReport",
    "DiscreteKrausSet",
    "PhaseMeasure",
    "UniformInterval",
    "DiscreteUniform",
    "PointMass",
    "ShapeError",
    "ValidationError",
    "NumericalError",
    "CapacityError",
    "unitary_conjugation",
    "sample_random_channel",
    "mean_channel",
    "monte_carlo_mean",
    "channel_from_kraus",
    "identity_channel",
    "apply",
    "compose",
    "power",
    "is_bistochastic",
    "choi_matrix",
    "first_moment",
    "circular_variance",
    "is_nondegenerate",
    "sample",
    "parse_measure",
    "uniform_circle",
    "spectral_report",
    "invariant_states",
    "classify_unitary",
    "unistochastic_matrix",
    "iterate_mean",
    "cesaro_trajectory",
    "hadamard_model",
    "two_step_mixing_residual",
    "discrete_kraus",
    "verify_discretization",
    "hs_inner",
    "hs_norm",
    "kron",
    "vec",
    "unvec",
    "eig",
    "dist_to_maximally_mixed",
    "__version__",
]
