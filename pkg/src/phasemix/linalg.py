"""Dense complex linear algebra helpers.

Everything operates on plain ``numpy`` arrays with complex dtype. The
vectorization convention is column-stacking throughout: ``vec(A)`` stacks the
columns of ``A``, so ``vec(A X B) = (B^T (x) A) vec(X)``.
"""

from __future__ import annotations

import numpy as np

from .errors import CapacityError, NumericalError, ShapeError, ValidationError

MAX_DIM = 256  # largest square matrix eig() accepts (states up to d = 16)

__all__ = [
    "MAX_DIM",
    "dagger",
    "hermitize",
    "hs_inner",
    "hs_norm",
    "kron",
    "vec",
    "unvec",
    "eig",
    "dist_to_maximally_mixed",
    "check_square",
    "unitarity_residual",
    "check_unitary",
    "check_density",
    "partial_trace",
    "pauli_x",
    "pauli_z",
    "dft_matrix",
    "hadamard_power",
    "matrix_unit",
    "random_unitary",
    "random_density",
    "pair_distance",
]


def _as_complex(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if not np.isfinite(m).all():
        raise ValidationError("matrix has non-finite entries")
    return m


def check_square(a, name: str = "matrix") -> np.ndarray:
    m = _as_complex(a)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {m.shape}")
    return m


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def hermitize(a) -> np.ndarray:
    """Hermitian part (A + A*)/2."""
    m = check_square(a)
    return (m + m.conj().T) / 2


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product tr(A* B), conjugate-linear in A."""
    ma, mb = check_square(a, "a"), check_square(b, "b")
    if ma.shape != mb.shape:
        raise ShapeError(f"shape mismatch {ma.shape} vs {mb.shape}")
    return complex(np.sum(ma.conj() * mb))


def hs_norm(a) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(np.asarray(a)))


def kron(a, b) -> np.ndarray:
    """Kronecker product."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def vec(a) -> np.ndarray:
    """Column-stacking vectorization of a square matrix."""
    return check_square(a).reshape(-1, order="F")


def unvec(v, dim: int | None = None) -> np.ndarray:
    """Inverse of :func:`vec`; infers the dimension when not given."""
    w = np.asarray(v, dtype=complex).reshape(-1)
    if dim is None:
        dim = int(round(np.sqrt(w.size)))
    if dim * dim != w.size:
        raise ShapeError(f"length {w.size} is not a perfect square")
    return w.reshape((dim, dim), order="F")


def eig(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition with a deterministic ordering.

    Returns ``(w, V)`` with eigenvector columns ``V[:, i]`` matching ``w[i]``.
    Pairs are sorted by descending ``|w|``, ties broken by descending real
    part, then descending imaginary part. Each pair satisfies
    ``||M v - w v|| <= 1e-10 ||M||``.
    """
    mat = check_square(m)
    if mat.shape[0] > MAX_DIM:
        raise CapacityError(f"eig supports matrices up to {MAX_DIM}x{MAX_DIM}, got {mat.shape[0]}")
    try:
        w, v = np.linalg.eig(mat)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed to converge: {exc}") from exc
    order = np.lexsort((-w.imag, -w.real, -np.abs(w)))
    w, v = w[order], v[:, order]
    scale = np.linalg.norm(mat)
    if scale > 0:
        resid = np.linalg.norm(mat @ v - v * w[None, :], axis=0)
        worst = float(resid.max())
        if worst > 1e-10 * scale:
            raise NumericalError(f"eigenpair residual {worst:.3e} exceeds 1e-10*||M||")
    return w, v


def dist_to_maximally_mixed(rho) -> float:
    """Hilbert-Schmidt distance ||rho - I/d||."""
    m = check_square(rho, "rho")
    d = m.shape[0]
    return hs_norm(m - np.eye(d) / d)


def unitarity_residual(u) -> float:
    m = check_square(u, "unitary")
    return hs_norm(m.conj().T @ m - np.eye(m.shape[0]))


def check_unitary(u, tol: float = 1e-9) -> np.ndarray:
    """Validate ``U* U = I`` within ``tol``; returns the array."""
    m = check_square(u, "unitary")
    r = unitarity_residual(m)
    if r > tol:
        raise ValidationError(f"matrix is not unitary: residual {r:.3e} > {tol:g}", residual=r)
    return m


def check_density(rho, tol: float = 1e-9) -> np.ndarray:
    """Validate Hermitian, unit trace, PSD within ``tol``; returns the array."""
    m = check_square(rho, "density matrix")
    herm = hs_norm(m - m.conj().T)
    if herm > tol:
        raise ValidationError(f"density matrix not Hermitian: residual {herm:.3e}", residual=herm)
    tr = abs(np.trace(m) - 1.0)
    if tr > tol:
        raise ValidationError(f"density matrix trace off by {tr:.3e}", residual=float(tr))
    lo = float(np.linalg.eigvalsh(hermitize(m)).min())
    if lo < -tol:
        raise ValidationError(f"density matrix not PSD: min eigenvalue {lo:.3e}", residual=-lo)
    return m


def partial_trace(m, dim: int, which: int) -> np.ndarray:
    """Partial trace of a ``dim*dim`` square matrix over tensor factor 0 or 1."""
    a = check_square(m)
    if a.shape[0] != dim * dim:
        raise ShapeError(f"expected shape {(dim*dim, dim*dim)}, got {a.shape}")
    t = a.reshape(dim, dim, dim, dim)
    if which == 0:
        return np.einsum("acae->ce", t)
    if which == 1:
        return np.einsum("acbc->ab", t)
    raise ShapeError("which must be 0 or 1")


def pauli_x() -> np.ndarray:
    return np.array([[0, 1], [1, 0]], dtype=complex)


def pauli_z() -> np.ndarray:
    return np.array([[1, 0], [0, -1]], dtype=complex)


def dft_matrix(d: int) -> np.ndarray:
    """Unitary DFT, entries exp(2*pi*i*j*k/d)/sqrt(d); all entries nonzero."""
    if d < 1:
        raise ShapeError("dimension must be >= 1")
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    return np.exp(2j * np.pi * j * k / d) / np.sqrt(d)


def hadamard_power(k: int) -> np.ndarray:
    """k-fold tensor power of the 2x2 Hadamard matrix (dimension 2**k)."""
    if k < 1:
        raise ShapeError("tensor power must be >= 1")
    if 2**k > 16:
        raise CapacityError(f"hadamard_power supports 2**k <= 16, got k={k}")
    h = np.array([[1, 1], [1, -1]], dtype=complex) * (np.sqrt(2) / 2)
    out = h
    for _ in range(k - 1):
        out = np.kron(out, h)
    return out


def matrix_unit(d: int, j: int, k: int) -> np.ndarray:
    e = np.zeros((d, d), dtype=complex)
    e[j, k] = 1.0
    return e


def random_unitary(d: int, seed: int) -> np.ndarray:
    """Haar-ish random unitary: QR of a complex Gaussian matrix (PCG64 seed)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    # fix the QR phase ambiguity so the result is canonical across BLAS builds
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph[None, :]


def random_density(d: int, seed: int) -> np.ndarray:
    """Random full-rank density matrix G G*/tr(G G*) with Gaussian G."""
    rng = np.random.Generator(np.random.PCG64(seed))
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return m / np.trace(m).real


def pair_distance(a, b) -> float:
    """Max distance under an optimal pairing of two equal-length complex multisets."""
    from scipy.optimize import linear_sum_assignment

    xs = np.asarray(a, dtype=complex).reshape(-1)
    ys = np.asarray(b, dtype=complex).reshape(-1)
    if xs.size != ys.size:
        raise ShapeError(f"multisets differ in size: {xs.size} vs {ys.size}")
    cost = np.abs(xs[:, None] - ys[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) if xs.size else 0.0
