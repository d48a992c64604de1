"""Command-line front end: analyze spectra, run dynamics, export Kraus sets,
and replay the claim verification suite.

Formats: matrices travel as JSON ``{"dim": d, "re": [[...]], "im": [[...]]}``,
trajectories as CSV. Every numeric field keeps full double precision (17
significant digits), so residual checks are reproducible from the files
alone. All commands are deterministic given their flags.

Exit codes: 0 success, 1 verification claim failure, 2 usage or parse error,
3 matrix validation failure. Relative output paths are joined under
``$PHASEMIX_OUTPUT_DIR`` when that variable is set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import channels, dynamics, kraus, linalg, measures, spectral, verify
from .errors import CapacityError, ShapeError, ValidationError

__all__ = [
    "main",
    "build_parser",
    "matrix_to_json",
    "matrix_from_json",
    "load_matrix_file",
    "load_kraus",
    "resolve_unitary",
]

OUTPUT_DIR_ENV = "PHASEMIX_OUTPUT_DIR"


class UsageError(ValueError):
    """Bad flags or unparseable input text/files (exit 2)."""


# ---------------------------------------------------------------------------
# interchange formats


def matrix_to_json(m: np.ndarray) -> dict:
    a = np.asarray(m, dtype=complex)
    return {"dim": a.shape[0], "re": a.real.tolist(), "im": a.imag.tolist()}


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"matrix object needs integer 'dim' and numeric 're'/'im' arrays: {exc}")
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise UsageError(
            f"matrix arrays must be {dim}x{dim} to match dim, got re{re.shape} im{im.shape}"
        )
    return re + 1j * im


def load_matrix_file(path: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read matrix file {path!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"matrix file {path!r} is not valid JSON: {exc}")
    if not isinstance(obj, dict):
        raise UsageError(f"matrix file {path!r} must hold a JSON object")
    return matrix_from_json(obj)


def kraus_to_json(ks: kraus.DiscreteKrausSet) -> dict:
    return {
        "dim": ks.dim,
        "phases": [ks.phases[0], ks.phases[1]],
        "operators": [
            {"pattern": p, **{k: v for k, v in matrix_to_json(op).items() if k != "dim"}}
            for p, op in enumerate(ks.operators)
        ],
    }


def load_kraus(path: str) -> kraus.DiscreteKrausSet:
    """Rebuild an exported Kraus set; pattern order is re-checked on load."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read Kraus file {path!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"Kraus file {path!r} is not valid JSON: {exc}")
    try:
        dim = int(obj["dim"])
        phases = (float(obj["phases"][0]), float(obj["phases"][1]))
        entries = obj["operators"]
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise UsageError(f"Kraus file {path!r} missing dim/phases/operators: {exc}")
    if len(entries) != 2**dim:
        raise UsageError(f"expected {2**dim} operators for dim {dim}, found {len(entries)}")
    ops: list[np.ndarray] = [None] * len(entries)  # type: ignore[list-item]
    for entry in entries:
        p = int(entry["pattern"])
        if not (0 <= p < len(entries)) or ops[p] is not None:
            raise UsageError(f"bad or duplicate pattern index {p}")
        ops[p] = matrix_from_json({"dim": dim, "re": entry["re"], "im": entry["im"]})
    return kraus.DiscreteKrausSet(dim=dim, operators=tuple(ops), phases=phases)


# ---------------------------------------------------------------------------
# input resolution


def _builtin_unitary(name: str, dim: int | None) -> np.ndarray:
    def fixed(d: int) -> int:
        if dim is not None and dim != d:
            raise UsageError(f"builtin {name!r} has dimension {d}, conflicting with --dim {dim}")
        return d

    if name == "identity":
        return np.eye(dim or 2, dtype=complex)
    if name == "pauli-x":
        fixed(2)
        return linalg.pauli_x()
    if name == "pauli-z":
        fixed(2)
        return linalg.pauli_z()
    if name.startswith("hadamard-"):
        k = _parse_int(name[len("hadamard-"):], "hadamard order")
        fixed(2**k)
        return linalg.hadamard_power(k)
    if name.startswith("dft-"):
        d = _parse_int(name[len("dft-"):], "dft dimension")
        fixed(d)
        return linalg.dft_matrix(d)
    if name.startswith("diag:"):
        angles = [measures.parse_angle(p) for p in name[len("diag:"):].split(",") if p.strip()]
        if not angles:
            raise UsageError("diag builtin needs at least one phase")
        fixed(len(angles))
        return np.diag(np.exp(1j * np.asarray(angles)))
    if name.startswith("random-unitary:"):
        seed = _parse_int(name[len("random-unitary:"):], "random-unitary seed")
        return linalg.random_unitary(dim or 2, seed)
    raise UsageError(
        f"unknown builtin {name!r} (use identity, pauli-x, pauli-z, hadamard-k, "
        "dft-d, diag:t1,...,td, random-unitary:seed)"
    )


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"cannot parse {what} from {text!r}") from None


def resolve_unitary(source: str, dim: int | None = None) -> np.ndarray:
    """'builtin:NAME' or a matrix-file path, validated as unitary."""
    if source.startswith("builtin:"):
        u = _builtin_unitary(source[len("builtin:"):], dim)
    else:
        u = load_matrix_file(source)
    return linalg.check_unitary(u)


def resolve_initial(source: str, d: int) -> np.ndarray:
    """'basis:j', 'mixed', or a matrix-file path, validated as a density matrix."""
    if source == "mixed":
        return np.eye(d, dtype=complex) / d
    if source.startswith("basis:"):
        j = _parse_int(source[len("basis:"):], "basis index")
        if not (0 <= j < d):
            raise UsageError(f"basis index {j} out of range for dimension {d}")
        rho = np.zeros((d, d), dtype=complex)
        rho[j, j] = 1.0
        return rho
    rho = load_matrix_file(source)
    if rho.shape[0] != d:
        raise UsageError(f"initial state is {rho.shape[0]}x{rho.shape[0]}, unitary is {d}x{d}")
    return linalg.check_density(rho)


def _parse_measure_arg(text: str) -> measures.PhaseMeasure:
    try:
        return measures.parse_measure(text)
    except ValueError as exc:
        raise UsageError(str(exc))


def _parse_phase_pair(text: str) -> tuple[float, float]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 2:
        raise UsageError(f"expected two comma-separated phases, got {text!r}")
    try:
        return (measures.parse_angle(parts[0]), measures.parse_angle(parts[1]))
    except ValueError as exc:
        raise UsageError(str(exc))


def _resolve_out(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, path)
    return path


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _complex_list(values: np.ndarray) -> list[dict]:
    return [{"re": float(v.real), "im": float(v.imag)} for v in values]


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    u = resolve_unitary(args.unitary, args.dim)
    mu = _parse_measure_arg(args.measure)
    rep = spectral.spectral_report(channels.mean_channel(u, mu))
    report = {
        "dim": rep.dim,
        "unitary_class": spectral.classify_unitary(u),
        "eigenvalues": _complex_list(rep.eigenvalues),
        "peripheral": _complex_list(rep.peripheral),
        "multiplicity_of_one": rep.multiplicity_of_one,
        "spectral_gap": rep.spectral_gap,
        "in_class_C": rep.in_class_C,
        "invariant_states": [matrix_to_json(s) for s in rep.invariant_states],
        "fixed_space_dimension": rep.fixed_space_dimension,
        "peripheral_tol": rep.peripheral_tol,
    }
    _emit(json.dumps(report, indent=2), _resolve_out(args.output))
    if args.figure:
        from . import plots

        plots.spectrum_figure(rep.eigenvalues, _resolve_out(args.figure))
    return 0


def cmd_iterate(args) -> int:
    if args.steps < 1:
        raise UsageError(f"--steps must be >= 1, got {args.steps}")
    u = resolve_unitary(args.unitary, args.dim)
    mu = _parse_measure_arg(args.measure)
    rho0 = resolve_initial(args.initial, u.shape[0])
    traj = dynamics.iterate_mean(u, mu, rho0, args.steps)
    lines = ["n,distance"]
    lines += [f"{int(n)},{d:.17g}" for n, d in zip(traj.indices, traj.distance_to_mixed)]
    _emit("\n".join(lines) + "\n", _resolve_out(args.output))
    if args.figure:
        from . import plots

        plots.series_figure(traj.indices, {"iterated mean channel": traj.distance_to_mixed},
                            _resolve_out(args.figure))
    return 0


def cmd_cesaro(args) -> int:
    if args.steps < 1:
        raise UsageError(f"--steps must be >= 1, got {args.steps}")
    u = resolve_unitary(args.unitary, args.dim)
    mu = _parse_measure_arg(args.measure)
    rho0 = resolve_initial(args.initial, u.shape[0])
    traj = dynamics.cesaro_trajectory(u, mu, rho0, args.steps, args.seed)
    lines = [f"# seed={args.seed}", "n,state_distance,cesaro_distance"]
    lines += [
        f"{int(n)},{s:.17g},{c:.17g}"
        for n, s, c in zip(traj.indices, traj.distance_to_mixed, traj.cesaro_distance)
    ]
    _emit("\n".join(lines) + "\n", _resolve_out(args.output))
    if args.figure:
        from . import plots

        plots.series_figure(
            traj.indices,
            {"random trajectory": traj.distance_to_mixed, "running average": traj.cesaro_distance},
            _resolve_out(args.figure),
        )
    return 0


def cmd_verify(args) -> int:
    only = args.only if args.only else None
    phases = _parse_phase_pair(args.two_point_phases) if args.two_point_phases else None
    try:
        results = verify.run_claims(only=only, dim=args.dim, two_point_phases=phases)
    except ValueError as exc:
        raise UsageError(str(exc))
    print(verify.format_ledger(results))
    if args.json:
        path = _resolve_out(args.json)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(verify.ledger_json(results), fh, indent=2)
        print(f"json ledger written to {path}")
    if args.figures_dir:
        from . import plots

        out_dir = _resolve_out(args.figures_dir)
        os.makedirs(out_dir, exist_ok=True)
        for p in plots.verify_figures(results, out_dir):
            print(f"figure written to {p}")
    return 0 if all(r.passed for r in results) else 1


def cmd_export_kraus(args) -> int:
    u = resolve_unitary(args.unitary, args.dim)
    phases = _parse_phase_pair(args.phases) if args.phases else kraus.HALF_PI_PHASES
    ks = kraus.discrete_kraus(u, phases)
    _emit(json.dumps(kraus_to_json(ks), indent=2), _resolve_out(args.output))
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_unitary_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--unitary", required=True,
                   help="builtin:NAME or path to a matrix JSON file")
    p.add_argument("--dim", type=int, default=None,
                   help="dimension for builtins that need one (identity, random-unitary); default 2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasemix",
        description="random-phase unitary channels: spectra, dynamics, Kraus sets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="spectral report of the mean channel (JSON)")
    _add_unitary_flags(p)
    p.add_argument("--measure", required=True, help="uniform:a,b | discrete:v1,... | point:v")
    p.add_argument("-o", "--output", default=None, help="write JSON here instead of stdout")
    p.add_argument("--figure", default=None, help="also render the spectrum to this image file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("iterate", help="iterate the mean channel, CSV of distances")
    _add_unitary_flags(p)
    p.add_argument("--measure", required=True)
    p.add_argument("--steps", type=int, required=True, help="number of steps (>= 1)")
    p.add_argument("--initial", default="basis:0", help="basis:j | mixed | matrix JSON path")
    p.add_argument("-o", "--output", default=None, help="write CSV here instead of stdout")
    p.add_argument("--figure", default=None, help="also render the distance series to this file")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("cesaro", help="one random trajectory and its running average, CSV")
    _add_unitary_flags(p)
    p.add_argument("--measure", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help="trajectory seed (default 0)")
    p.add_argument("--initial", default="basis:0")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--figure", default=None, help="also render both series to this file")
    p.set_defaults(func=cmd_cesaro)

    p = sub.add_parser("verify", help="run the claim suite; exit 0 iff all claims pass")
    p.add_argument("--only", action="append", choices=verify.CLAIM_KEYS, default=None,
                   help="run only this claim (repeatable)")
    p.add_argument("--dim", type=int, default=None,
                   help="restrict the discretization claim to one dimension")
    p.add_argument("--two-point-phases", default=None, metavar="A,B",
                   help="inject a phase pair into the discretization claim "
                        "(e.g. 0,pi/4 as a deliberate failure control)")
    p.add_argument("--json", default=None, help="also write the ledger as JSON here")
    p.add_argument("--figures-dir", default=None,
                   help="render claim figures into this directory")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-kraus", help="export the discrete Kraus set as JSON")
    _add_unitary_flags(p)
    p.add_argument("--phases", default=None, metavar="A,B",
                   help="two-point phase set (default -pi/2,pi/2)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_export_kraus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, 0 for --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, ShapeError, CapacityError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
