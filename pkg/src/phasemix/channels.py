"""Unitary conjugation channels with random phases and their exact average.

A channel is stored as its superoperator in the column-stacking convention,
so a Kraus operator K contributes the term conj(K) (x) K. The central
constructor is :func:`mean_channel`: for U_theta = U diag(e^{i theta_1}, ...)
with i.i.d. phases, independence gives E(e^{i(theta_j - theta_l)}) = 1 on the
diagonal and |m|^2 off it (m the first circular moment), hence

    E(Phi)(rho) = U ( |m|^2 rho + (1 - |m|^2) diag(rho) ) U*

with superoperator (conj(U) (x) U) (|m|^2 I + (1 - |m|^2) P), P the projector
onto diagonal vec-positions. Every channel built here is bistochastic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, measures
from .errors import NumericalError, ShapeError, ValidationError

BISTOCHASTIC_TOL = 1e-9

__all__ = [
    "Channel",
    "BistochasticCheck",
    "ChoiResult",
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
    "diag_projector",
]


@dataclass(frozen=True, eq=False)
class Channel:
    """A CPTP map: d^2 x d^2 superoperator, optional Kraus list, provenance tag."""

    dim: int
    superoperator: np.ndarray
    kraus: tuple[np.ndarray, ...] | None = None
    provenance: str = "composite"


@dataclass(frozen=True)
class BistochasticCheck:
    ok: bool
    unital_residual: float
    trace_residual: float


@dataclass(frozen=True)
class ChoiResult:
    matrix: np.ndarray
    min_eigenvalue: float
    is_cp: bool


def diag_projector(d: int) -> np.ndarray:
    """Projector onto diagonal vec-positions: sum_j E_jj (x) E_jj."""
    p = np.zeros((d * d, d * d), dtype=complex)
    for j in range(d):
        p[j * (d + 1), j * (d + 1)] = 1.0
    return p


def _finish(dim, superop, kraus, provenance) -> Channel:
    ch = Channel(dim=dim, superoperator=superop, kraus=kraus, provenance=provenance)
    check = is_bistochastic(ch, BISTOCHASTIC_TOL)
    if not check.ok:
        raise ValidationError(
            f"constructed channel is not bistochastic (unital residual "
            f"{check.unital_residual:.3e}, trace residual {check.trace_residual:.3e})",
            residual=max(check.unital_residual, check.trace_residual),
        )
    return ch


def unitary_conjugation(U, tol: float = 1e-9) -> Channel:
    """Channel rho -> U rho U* with single Kraus operator U."""
    u = linalg.check_unitary(U, tol)
    return _finish(u.shape[0], np.kron(u.conj(), u), (u,), "exact-unitary")


def sample_random_channel(U, theta) -> Channel:
    """Channel of U_theta = U diag(e^{i theta_1}, ..., e^{i theta_d})."""
    u = linalg.check_unitary(U)
    phases = np.asarray(theta, dtype=float).reshape(-1)
    if phases.size != u.shape[0]:
        raise ShapeError(f"phase vector length {phases.size} != dim {u.shape[0]}")
    u_theta = u * np.exp(1j * phases)[None, :]
    return _finish(u.shape[0], np.kron(u_theta.conj(), u_theta), (u_theta,), "exact-unitary")


def mean_channel(U, measure: measures.PhaseMeasure) -> Channel:
    """Exact average of the random channel over the phase measure.

    The attached Kraus list is {m U} + {sqrt(1-|m|^2) U E_jj}, which realizes
    the closed form directly (the m = 0 case drops the first operator).
    """
    u = linalg.check_unitary(U)
    d = u.shape[0]
    m = measures.first_moment(measure)
    c = abs(m) ** 2
    superop = np.kron(u.conj(), u) @ (c * np.eye(d * d) + (1.0 - c) * diag_projector(d))
    kraus = []
    if abs(m) > 0:
        kraus.append(m * u)
    w = np.sqrt(max(0.0, 1.0 - c))
    if w > 0:
        for j in range(d):
            k = np.zeros((d, d), dtype=complex)
            k[:, j] = w * u[:, j]
            kraus.append(k)
    return _finish(d, superop, tuple(kraus), "analytic-mean")


def monte_carlo_mean(U, measure: measures.PhaseMeasure, n: int, seed: int) -> Channel:
    """Empirical estimator (1/N) sum of sampled superoperators.

    Deterministic given (seed, N): phases come from sample_matrix (derived
    per-batch seeds), and accumulation runs in fixed batch order, so a
    parallel map over batches would merge to the same result.
    """
    u = linalg.check_unitary(U)
    d = u.shape[0]
    if n < 1:
        raise ShapeError(f"need N >= 1, got {n}")
    phases = measures.sample_matrix(measure, n, d, seed)
    acc = np.zeros((d * d, d * d), dtype=complex)
    for start in range(0, n, measures.SAMPLE_BATCH):
        block = np.exp(1j * phases[start : start + measures.SAMPLE_BATCH])
        u_thetas = u[None, :, :] * block[:, None, :]
        acc += np.einsum("nab,ncd->acbd", u_thetas.conj(), u_thetas).reshape(d * d, d * d)
    return _finish(d, acc / n, None, f"monte-carlo-mean(N={n})")


def channel_from_kraus(operators, provenance: str = "discrete-kraus") -> Channel:
    """Assemble a channel from a Kraus list (superop = sum conj(K) (x) K)."""
    ops = tuple(linalg.check_square(k, "Kraus operator") for k in operators)
    if not ops:
        raise ShapeError("need at least one Kraus operator")
    d = ops[0].shape[0]
    if any(k.shape != (d, d) for k in ops):
        raise ShapeError("Kraus operators must share one dimension")
    superop = np.zeros((d * d, d * d), dtype=complex)
    for k in ops:
        superop += np.kron(k.conj(), k)
    return _finish(d, superop, ops, provenance)


def identity_channel(d: int) -> Channel:
    return unitary_conjugation(np.eye(d, dtype=complex))


def apply(channel: Channel, rho, validate: bool = True) -> np.ndarray:
    """Apply the channel: unvec(S vec(rho))."""
    r = linalg.check_square(rho, "rho")
    if r.shape[0] != channel.dim:
        raise ShapeError(f"state dim {r.shape[0]} != channel dim {channel.dim}")
    out = linalg.unvec(channel.superoperator @ linalg.vec(r), channel.dim)
    if validate:
        try:
            linalg.check_density(out, tol=1e-9)
        except ValidationError as exc:
            raise NumericalError(f"channel output left the state space: {exc}") from exc
    return out


def compose(phi: Channel, psi: Channel) -> Channel:
    """Composition phi after psi: (phi . psi)(rho) = phi(psi(rho))."""
    if phi.dim != psi.dim:
        raise ShapeError(f"dimension mismatch {phi.dim} vs {psi.dim}")
    return _finish(phi.dim, phi.superoperator @ psi.superoperator, None, "composite")


def power(phi: Channel, n: int) -> Channel:
    """n-fold composition by repeated squaring; power(phi, 0) is the identity."""
    if n < 0:
        raise ShapeError(f"need n >= 0, got {n}")
    if n == 0:
        return identity_channel(phi.dim)
    if n <= 8:
        s = np.linalg.matrix_power(phi.superoperator, n)
    else:
        s = np.eye(phi.dim**2, dtype=complex)
        base = phi.superoperator
        k = n
        while k:
            if k & 1:
                s = s @ base
            base = base @ base
            k >>= 1
    return _finish(phi.dim, s, phi.kraus if n == 1 else None, "composite" if n != 1 else phi.provenance)


def is_bistochastic(channel: Channel, tol: float = BISTOCHASTIC_TOL) -> BistochasticCheck:
    """Residuals of unitality (S vec(I) = vec(I)) and trace preservation."""
    d = channel.dim
    vec_i = linalg.vec(np.eye(d, dtype=complex))
    unital = float(np.linalg.norm(channel.superoperator @ vec_i - vec_i))
    # tr(Phi(rho)) = <vec(I), S vec(rho)>, so TP means S* vec(I) = vec(I)
    trace = float(np.linalg.norm(channel.superoperator.conj().T @ vec_i - vec_i))
    return BistochasticCheck(unital <= tol and trace <= tol, unital, trace)


def choi_matrix(channel: Channel, tol: float = 1e-9) -> ChoiResult:
    """Choi matrix (Phi (x) id)(|Omega><Omega|), Omega unnormalized.

    J = sum_{jk} Phi(E_jk) (x) E_jk; the channel is CP iff J is PSD.
    """
    d = channel.dim
    j_mat = np.zeros((d * d, d * d), dtype=complex)
    for j in range(d):
        for k in range(d):
            e_jk = linalg.matrix_unit(d, j, k)
            out = linalg.unvec(channel.superoperator @ linalg.vec(e_jk), d)
            j_mat += np.kron(out, e_jk)
    lo = float(np.linalg.eigvalsh(linalg.hermitize(j_mat)).min())
    herm_resid = linalg.hs_norm(j_mat - j_mat.conj().T)
    return ChoiResult(j_mat, lo, herm_resid <= tol and lo >= -tol)
