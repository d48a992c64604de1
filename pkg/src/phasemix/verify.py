"""Self-contained claim suite: every structural claim the package rests on,
checked end to end with fixed seeds and reported as a pass/fail ledger.

Each claim function returns a ClaimResult with the worst measured residual
and the tolerance it was held to. ``run_claims`` executes them in a fixed
order; the CLI ``verify`` command and the acceptance tests both drive it.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import channels, dynamics, kraus, linalg, measures, spectral

__all__ = ["ClaimResult", "CLAIM_KEYS", "run_claims", "format_ledger", "ledger_json"]


@dataclass(frozen=True)
class ClaimResult:
    key: str
    description: str
    passed: bool
    residual: float
    tolerance: float
    detail: str
    elapsed: float
    series: dict | None = None  # optional plottable data for the report path


def _sweep_measures() -> list[measures.PhaseMeasure]:
    return [
        measures.uniform_circle(),
        measures.UniformInterval(-1.0, 1.0),
        measures.DiscreteUniform((-math.pi / 2, math.pi / 2)),
    ]


def _dense_unitaries() -> list[tuple[str, np.ndarray]]:
    out = [(f"hadamard-{k}", linalg.hadamard_power(k)) for k in (1, 2, 3)]
    out += [(f"dft-{d}", linalg.dft_matrix(d)) for d in range(2, 7)]
    dims = [2, 3, 4, 5, 6, 2, 3, 4, 5, 6]
    out += [
        (f"random-unitary:{200 + i}(d={d})", linalg.random_unitary(d, 200 + i))
        for i, d in enumerate(dims)
    ]
    return out


def claim_dense_unitary() -> ClaimResult:
    """All-entries-nonzero unitaries: simple eigenvalue 1, contracting rest, I/d invariant."""
    t0 = time.perf_counter()
    worst_state = 0.0
    worst_mod = 0.0
    failures = []
    for name, u in _dense_unitaries():
        d = u.shape[0]
        for mu in _sweep_measures():
            if measures.circular_variance(mu) <= 0:
                continue
            rep = spectral.spectral_report(channels.mean_channel(u, mu))
            others = rep.eigenvalues[np.abs(rep.eigenvalues - 1.0) > rep.peripheral_tol]
            top = float(np.abs(others).max()) if others.size else 0.0
            worst_mod = max(worst_mod, top)
            if rep.multiplicity_of_one != 1:
                failures.append(f"{name}/{measures.measure_label(mu)}: multiplicity {rep.multiplicity_of_one}")
                continue
            if top > 1.0 - 1e-6:
                failures.append(f"{name}/{measures.measure_label(mu)}: second modulus {top:.9f}")
            if not rep.invariant_states:
                failures.append(f"{name}/{measures.measure_label(mu)}: no invariant state extracted")
                continue
            dist = linalg.hs_norm(rep.invariant_states[0] - np.eye(d) / d)
            worst_state = max(worst_state, dist)
            if dist > 1e-9:
                failures.append(f"{name}/{measures.measure_label(mu)}: invariant state off by {dist:.3e}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 10.0:
        failures.append(f"runtime {elapsed:.1f}s exceeded 10s")
    return ClaimResult(
        key="dense-unitary",
        description="dense-unitary mean channels: unique invariant state I/d",
        passed=not failures,
        residual=worst_state,
        tolerance=1e-9,
        detail=(
            f"54-case sweep; worst invariant-state distance {worst_state:.3e}; "
            f"largest non-unit modulus {worst_mod:.6f}"
            + ("; " + "; ".join(failures[:4]) if failures else "")
        ),
        elapsed=elapsed,
    )


def claim_diagonal_unitary() -> ClaimResult:
    """Diagonal unitaries: peripheral spectrum {1}, fixed space = diagonal matrices."""
    t0 = time.perf_counter()
    worst = 0.0
    failures = []
    for d in range(2, 6):
        rng = np.random.Generator(np.random.PCG64(42 + d))
        u = np.diag(np.exp(1j * rng.uniform(0.05, 2 * math.pi, d)))
        target = sum(
            np.outer(linalg.vec(linalg.matrix_unit(d, j, j)), linalg.vec(linalg.matrix_unit(d, j, j)).conj())
            for j in range(d)
        )
        for mu in _sweep_measures():
            rep = spectral.spectral_report(channels.mean_channel(u, mu))
            peri_dev = float(np.abs(rep.peripheral - 1.0).max()) if rep.peripheral.size else 1.0
            worst = max(worst, peri_dev)
            if rep.fixed_space_dimension != d:
                failures.append(f"d={d}/{measures.measure_label(mu)}: fixed dim {rep.fixed_space_dimension}")
                continue
            proj_dev = linalg.hs_norm(spectral.fixed_space_projector(rep) - target)
            worst = max(worst, proj_dev)
            if peri_dev > 1e-9 or proj_dev > 1e-9:
                failures.append(f"d={d}/{measures.measure_label(mu)}: dev {max(peri_dev, proj_dev):.3e}")
    return ClaimResult(
        key="diagonal-unitary",
        description="diagonal-unitary mean channels: peripheral {1}, diagonal fixed space",
        passed=not failures,
        residual=worst,
        tolerance=1e-9,
        detail=f"d=2..5 x 3 measures; worst deviation {worst:.3e}"
        + ("; " + "; ".join(failures[:4]) if failures else ""),
        elapsed=time.perf_counter() - t0,
    )


def claim_sigma_x() -> ClaimResult:
    """Pauli-x mean channel: spectrum {1,-1,0,0}, I/2 fixed, sigma-z negated."""
    t0 = time.perf_counter()
    ch = channels.mean_channel(linalg.pauli_x(), measures.uniform_circle())
    rep = spectral.spectral_report(ch)
    spectrum_dev = linalg.pair_distance(rep.eigenvalues, np.array([1.0, -1.0, 0.0, 0.0]))
    fix_dev = linalg.hs_norm(
        linalg.unvec(ch.superoperator @ linalg.vec(np.eye(2) / 2), 2) - np.eye(2) / 2
    )
    flip_dev = linalg.hs_norm(
        linalg.unvec(ch.superoperator @ linalg.vec(linalg.pauli_z()), 2) + linalg.pauli_z()
    )
    worst = max(spectrum_dev, fix_dev, flip_dev)
    return ClaimResult(
        key="sigma-x",
        description="pauli-x mean channel keeps both 1 and -1 on the unit circle",
        passed=worst <= 1e-12 and not rep.in_class_C,
        residual=worst,
        tolerance=1e-12,
        detail=(
            f"spectrum dev {spectrum_dev:.3e}, I/2 fixed dev {fix_dev:.3e}, "
            f"sigma-z flip dev {flip_dev:.3e}, in_class_C={rep.in_class_C}"
        ),
        elapsed=time.perf_counter() - t0,
        series={"eigenvalues": rep.eigenvalues},
    )


def claim_geometric_rate() -> ClaimResult:
    """Mean-channel iterates of dft-4 converge to I/4 at the spectral rate.

    For uniform(-pi,pi) the gap is 1 (the unistochastic matrix of a DFT is
    rank one), so the geometric bound distance(n) <= distance(0) * g^(n-1)
    degenerates to exact mixing from step 2 on; the log-linear rate check
    runs on uniform(-1,1), where the gap is strictly between 0 and 1.
    """
    t0 = time.perf_counter()
    u = linalg.dft_matrix(4)
    failures = []
    series: dict = {}

    mu0 = measures.uniform_circle()
    g0 = 1.0 - spectral.spectral_report(channels.mean_channel(u, mu0)).spectral_gap
    worst_tail = 0.0
    for i in range(20):
        rho0 = linalg.random_density(4, 300 + i)
        d0 = linalg.dist_to_maximally_mixed(rho0)
        traj = dynamics.iterate_mean(u, mu0, rho0, 40)
        bound_dev = float(
            np.max(traj.distance_to_mixed - (d0 * g0 ** (traj.indices - 1) + 1e-10))
        )
        if bound_dev > 0:
            failures.append(f"rho0 #{i}: geometric bound violated by {bound_dev:.3e}")
        tail = float(traj.distance_to_mixed[1:].max())
        worst_tail = max(worst_tail, tail)
        if tail > 1e-10:
            failures.append(f"rho0 #{i}: distance {tail:.3e} after step 2")
        if i == 0:
            series["uniform_pi"] = {"n": traj.indices, "distance": traj.distance_to_mixed}

    mu1 = measures.UniformInterval(-1.0, 1.0)
    g1 = 1.0 - spectral.spectral_report(channels.mean_channel(u, mu1)).spectral_gap
    slopes = []
    for i in range(20):
        rho0 = linalg.random_density(4, 300 + i)
        traj = dynamics.iterate_mean(u, mu1, rho0, 200)
        keep = (traj.indices >= 3) & (traj.distance_to_mixed > 1e-12)
        if keep.sum() < 10:
            failures.append(f"rho0 #{i}: too few pre-floor points for the rate fit")
            continue
        slope = float(np.polyfit(traj.indices[keep], np.log(traj.distance_to_mixed[keep]), 1)[0])
        slopes.append(slope)
        if abs(slope - math.log(g1)) > 0.05:
            failures.append(f"rho0 #{i}: slope {slope:.4f} vs log(g)={math.log(g1):.4f}")
        if i == 0:
            series["uniform_1"] = {"n": traj.indices, "distance": traj.distance_to_mixed, "g": g1}

    slope_dev = max((abs(s - math.log(g1)) for s in slopes), default=1.0)
    return ClaimResult(
        key="geometric-rate",
        description="dft-4 iterates: geometric convergence to I/4 at the spectral rate",
        passed=not failures,
        residual=max(worst_tail, slope_dev),
        tolerance=0.05,
        detail=(
            f"uniform(-pi,pi): g={g0:.2e}, worst distance after step 2 = {worst_tail:.3e} "
            f"(<= 1e-10); uniform(-1,1): g={g1:.6f}, worst |slope - log g| = {slope_dev:.4f}"
            + ("; " + "; ".join(failures[:4]) if failures else "")
        ),
        elapsed=time.perf_counter() - t0,
        series=series,
    )


def claim_two_step() -> ClaimResult:
    """Hadamard tensor-power models mix exactly in two steps."""
    t0 = time.perf_counter()
    worst = 0.0
    for k in range(1, 5):
        d = 2**k
        for i in range(20):
            worst = max(worst, dynamics.two_step_mixing_residual(k, linalg.random_density(d, 400 + 20 * k + i)))
    return ClaimResult(
        key="two-step",
        description="hadamard-k mean channels: squared channel sends every state to I/2^k",
        passed=worst <= 1e-12,
        residual=worst,
        tolerance=1e-12,
        detail=f"k=1..4, 20 random states each; worst residual {worst:.3e}",
        elapsed=time.perf_counter() - t0,
    )


def _discretization_unitaries(dim: int | None) -> list[tuple[str, np.ndarray]]:
    dims = [dim] if dim else list(range(1, 7))
    out = []
    for d in dims:
        out.append((f"identity(d={d})", np.eye(d, dtype=complex)))
        if d in (2, 4):
            k = d.bit_length() - 1
            out.append((f"hadamard-{k}", linalg.hadamard_power(k)))
        if d >= 2:
            out.append((f"dft-{d}", linalg.dft_matrix(d)))
        out.append((f"random-unitary:{500 + d}(d={d})", linalg.random_unitary(d, 500 + d)))
    return out


def claim_discretization(
    dim: int | None = None,
    two_point_phases: tuple[float, float] | None = None,
) -> ClaimResult:
    """Discrete +-pi/2 Kraus set reproduces the uniform mean channel exactly.

    ``two_point_phases`` overrides the phase pair used for the main residuals
    (the negative-control injection); the {0, pi/4} control subcheck always
    runs and must fail by a wide margin.
    """
    t0 = time.perf_counter()
    phases = two_point_phases if two_point_phases is not None else kraus.HALF_PI_PHASES
    worst = 0.0
    failures = []
    for name, u in _discretization_unitaries(dim):
        r = kraus.verify_discretization(u, phases)
        worst = max(worst, r)
        if r > 1e-12:
            failures.append(f"{name}: residual {r:.3e}")
    control = kraus.verify_discretization(np.eye(2), (0.0, math.pi / 4))
    if control <= 0.01:
        failures.append(f"negative control {{0, pi/4}} residual {control:.3e} not > 0.01")
    return ClaimResult(
        key="discretization",
        description="discrete +-pi/2 Kraus set equals the uniform mean channel",
        passed=not failures,
        residual=worst,
        tolerance=1e-12,
        detail=(
            f"phases=({phases[0]:.6f},{phases[1]:.6f}); worst residual {worst:.3e}; "
            f"negative control {{0, pi/4}} residual {control:.3f} (must exceed 0.01)"
            + ("; " + "; ".join(failures[:4]) if failures else "")
        ),
        elapsed=time.perf_counter() - t0,
    )


def claim_monte_carlo() -> ClaimResult:
    """Monte Carlo estimator error scales as 1/sqrt(N) toward the closed form."""
    t0 = time.perf_counter()
    u = linalg.random_unitary(2, 77)
    mu = measures.uniform_circle()
    exact = channels.mean_channel(u, mu).superoperator
    sizes = [100, 1000, 10000]
    means = []
    for n in sizes:
        errs = [
            linalg.hs_norm(channels.monte_carlo_mean(u, mu, n, 600 + s).superoperator - exact)
            for s in range(30)
        ]
        means.append(float(np.mean(errs)))
    slope = float(np.polyfit(np.log(sizes), np.log(means), 1)[0])
    elapsed = time.perf_counter() - t0
    dev = abs(slope + 0.5)
    return ClaimResult(
        key="monte-carlo",
        description="MC channel average converges to the closed form at rate 1/sqrt(N)",
        passed=dev <= 0.1 and elapsed < 30.0,
        residual=dev,
        tolerance=0.1,
        detail=(
            f"N={sizes}, 30 seeds each; mean errors {[f'{e:.4f}' for e in means]}; "
            f"slope {slope:.4f} (target -0.5)"
        ),
        elapsed=elapsed,
        series={"sizes": np.array(sizes, dtype=float), "errors": np.array(means), "slope": slope},
    )


def claim_cesaro() -> ClaimResult:
    """Random-trajectory running averages settle near I/d (statistical)."""
    t0 = time.perf_counter()
    cases = [("hadamard-1", linalg.hadamard_power(1)), ("dft-3", linalg.dft_matrix(3))]
    mu = measures.uniform_circle()
    failures = []
    worst = 0.0
    series: dict = {}
    for name, u in cases:
        d = u.shape[0]
        rho0 = np.zeros((d, d), dtype=complex)
        rho0[0, 0] = 1.0
        finals = []
        checkpoints = {400: [], 1600: [], 6400: []}
        for s in range(30):
            traj = dynamics.cesaro_trajectory(u, mu, rho0, 6400, 700 + s)
            finals.append(float(traj.cesaro_distance[5000 - 1]))
            for n in checkpoints:
                checkpoints[n].append(float(traj.cesaro_distance[n - 1]))
        finals_sorted = sorted(finals)
        passing = sum(f <= 0.05 for f in finals)
        worst = max(worst, finals_sorted[-2])  # one straggler is allowed
        if passing < 29:
            failures.append(f"{name}: only {passing}/30 runs ended <= 0.05")
        medians = [float(np.median(checkpoints[n])) for n in (400, 1600, 6400)]
        if not (medians[0] > medians[1] > medians[2]):
            failures.append(f"{name}: medians {medians} not strictly decreasing")
        series[name] = {"checkpoints": (400, 1600, 6400), "medians": medians, "finals": finals}
    return ClaimResult(
        key="cesaro",
        description="Cesaro averages of random trajectories approach I/d",
        passed=not failures,
        residual=worst,
        tolerance=0.05,
        detail=(
            "hadamard-1 and dft-3, 30 seeds, n=6400; second-worst final distance "
            f"{worst:.4f} (checked at n=5000); medians at 400/1600/6400 strictly decreasing"
            + ("; " + "; ".join(failures[:4]) if failures else "")
        ),
        elapsed=time.perf_counter() - t0,
        series=series,
    )


def claim_unistochastic() -> ClaimResult:
    """For m=0 the superoperator spectrum is eig(|u_jk|^2) plus d^2-d zeros."""
    t0 = time.perf_counter()
    mu = measures.uniform_circle()
    dims = [2, 3, 4, 5, 6, 2, 3, 4, 5, 6]
    worst = 0.0
    for i, d in enumerate(dims):
        u = linalg.random_unitary(d, 800 + i)
        w_super = linalg.eig(channels.mean_channel(u, mu).superoperator)[0]
        w_b = np.linalg.eigvals(spectral.unistochastic_matrix(u))
        target = np.concatenate([w_b, np.zeros(d * d - d)])
        worst = max(worst, linalg.pair_distance(w_super, target))
    return ClaimResult(
        key="unistochastic",
        description="dephased-channel spectrum equals the unistochastic-matrix spectrum",
        passed=worst <= 1e-9,
        residual=worst,
        tolerance=1e-9,
        detail=f"10 random unitaries, d in 2..6; worst multiset mismatch {worst:.3e}",
        elapsed=time.perf_counter() - t0,
    )


CLAIM_KEYS = [
    "dense-unitary",
    "diagonal-unitary",
    "sigma-x",
    "geometric-rate",
    "two-step",
    "discretization",
    "monte-carlo",
    "cesaro",
    "unistochastic",
]


def run_claims(
    only: list[str] | None = None,
    dim: int | None = None,
    two_point_phases: tuple[float, float] | None = None,
) -> list[ClaimResult]:
    """Run the suite (or a subset) in fixed order; options affect discretization only."""
    table = {
        "dense-unitary": claim_dense_unitary,
        "diagonal-unitary": claim_diagonal_unitary,
        "sigma-x": claim_sigma_x,
        "geometric-rate": claim_geometric_rate,
        "two-step": claim_two_step,
        "discretization": lambda: claim_discretization(dim=dim, two_point_phases=two_point_phases),
        "monte-carlo": claim_monte_carlo,
        "cesaro": claim_cesaro,
        "unistochastic": claim_unistochastic,
    }
    keys = CLAIM_KEYS if only is None else only
    unknown = [k for k in keys if k not in table]
    if unknown:
        raise ValueError(f"unknown claim keys: {unknown} (choose from {CLAIM_KEYS})")
    return [table[k]() for k in keys]


def format_ledger(results: list[ClaimResult]) -> str:
    lines = []
    width = max(len(r.key) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"[{status}] {r.key.ljust(width)}  residual {r.residual:.3e}  "
            f"tol {r.tolerance:.0e}  ({r.elapsed:.2f}s)  {r.description}"
        )
        lines.append(f"       {' ' * width}  {r.detail}")
    total = sum(r.elapsed for r in results)
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} claims passed in {total:.1f}s")
    return "\n".join(lines)


def ledger_json(results: list[ClaimResult]) -> dict:
    return {
        "claims": [
            {
                "key": r.key,
                "description": r.description,
                "passed": r.passed,
                "residual": r.residual,
                "tolerance": r.tolerance,
                "detail": r.detail,
                "elapsed_seconds": r.elapsed,
            }
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }
