"""Spectrum, peripheral structure, and invariant states of a channel.

The peripheral tolerance controls three identifications at once: which
eigenvalues count as lying on the unit circle, which are identified with 1,
and which eigenvectors span the reported fixed space.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import channels, linalg

PERIPHERAL_TOL = 1e-8

__all__ = [
    "PERIPHERAL_TOL",
    "SpectralReport",
    "spectral_report",
    "invariant_states",
    "fixed_space_projector",
    "classify_unitary",
    "unistochastic_matrix",
]


@dataclass(frozen=True)
class SpectralReport:
    dim: int
    eigenvalues: np.ndarray  # all d^2, ordered per the eig contract
    peripheral: np.ndarray  # |lambda| >= 1 - peripheral_tol
    multiplicity_of_one: int
    spectral_gap: float
    in_class_C: bool
    invariant_states: tuple[np.ndarray, ...]  # Hermitized, unit-trace, PSD
    fixed_space_basis: tuple[np.ndarray, ...]  # raw eigenvector matrices
    fixed_space_dimension: int
    peripheral_tol: float = field(default=PERIPHERAL_TOL)


def _fixed_space(w, v, dim: int, tol: float):
    """Split the eigenvalue-1 eigenspace into reportable states and raw basis."""
    idx = np.nonzero(np.abs(w - 1.0) <= tol)[0]
    basis = tuple(linalg.unvec(v[:, i], dim) for i in idx)
    states = []
    for x in basis:
        h = linalg.hermitize(x)
        if linalg.hs_norm(h) < 1e-10:
            continue
        tr = float(np.trace(h).real)
        if abs(tr) < 1e-8:
            continue
        cand = h / tr
        if float(np.linalg.eigvalsh(cand).min()) >= -1e-9:
            states.append(cand)
    return tuple(states), basis


def invariant_states(
    channel: channels.Channel, tol: float = PERIPHERAL_TOL
) -> tuple[tuple[np.ndarray, ...], tuple[np.ndarray, ...], int]:
    """Eigenspace of eigenvalue 1: (density-matrix states, raw basis, dimension).

    eig returns eigenvectors with arbitrary complex scale, so each basis
    matrix is Hermitized and trace-normalized before the PSD test; elements
    that fail remain available in the raw basis.
    """
    w, v = linalg.eig(channel.superoperator)
    states, basis = _fixed_space(w, v, channel.dim, tol)
    return states, basis, len(basis)


def spectral_report(channel: channels.Channel, peripheral_tol: float = PERIPHERAL_TOL) -> SpectralReport:
    """Full spectral analysis of the channel superoperator."""
    w, v = linalg.eig(channel.superoperator)
    mods = np.abs(w)
    peripheral = w[mods >= 1.0 - peripheral_tol]
    near_one = np.abs(w - 1.0) <= peripheral_tol
    multiplicity = int(near_one.sum())
    rest = mods[~near_one]
    gap = min(1.0, max(0.0, float(1.0 - rest.max()))) if rest.size else 0.0
    in_class_c = bool(multiplicity == 1 and (rest.size == 0 or rest.max() < 1.0 - peripheral_tol))
    states, basis = _fixed_space(w, v, channel.dim, peripheral_tol)
    return SpectralReport(
        dim=channel.dim,
        eigenvalues=w,
        peripheral=peripheral,
        multiplicity_of_one=multiplicity,
        spectral_gap=gap,
        in_class_C=in_class_c,
        invariant_states=states,
        fixed_space_basis=basis,
        fixed_space_dimension=len(basis),
        peripheral_tol=peripheral_tol,
    )


def fixed_space_projector(report: SpectralReport) -> np.ndarray:
    """Orthogonal projector onto the fixed space, from the raw basis."""
    if not report.fixed_space_basis:
        return np.zeros((report.dim**2, report.dim**2), dtype=complex)
    cols = np.stack([linalg.vec(x) for x in report.fixed_space_basis], axis=1)
    q, _ = np.linalg.qr(cols)
    return q @ q.conj().T


def classify_unitary(U, tol: float = 1e-12) -> str:
    """Which structural case applies: 'all_nonzero', 'diag_nonzero', or 'neither'."""
    u = linalg.check_square(U, "unitary")
    mods = np.abs(u)
    if mods.min() > tol:
        return "all_nonzero"
    if np.diagonal(mods).min() > tol:
        return "diag_nonzero"
    return "neither"


def unistochastic_matrix(U) -> np.ndarray:
    """Entrywise |u_jk|^2; doubly stochastic, drives the dephased diagonal dynamics."""
    u = linalg.check_square(U, "unitary")
    return np.abs(u) ** 2
