"""
command-line front end of `bellmix`: entanglement reports as JSON, figure grids as CSV.
"""

import argparse
import dataclasses
import json
import os
import sys
from enum import Enum
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from bellmix import __version__
from bellmix import verify as verify_suites
from bellmix.basic.config import get_tolerance
from bellmix.basic.errors import BoundaryError, ConvergenceError, DomainError
from bellmix.basic.log import setup_logger
from bellmix.basic.myparser import Parser
from bellmix.basic.preconcurrence import min_concurrence, stationary_values, zero_witness
from bellmix.basic.pure_state import (
    BellCoeffs,
    concurrence_pure,
    entanglement_from_reduced,
    entanglement_pure,
    random_coeffs,
    reduced_density,
)
from bellmix.oracle import brute_minimize, lagrangian_dense
from bellmix.werner import complex_ansatz
from bellmix.werner.core import WernerSpec, lagrangian
from bellmix.werner.eq_solver import solve_approx, solve_exact
from bellmix.werner.model import LN2, MixedMinimization, PureMinimization
from bellmix.werner.scan import (
    entanglement_vs_m0,
    f_rho_curve,
    lagrangian_vs_y,
    preconcurrence_surface,
    progress_enabled,
    reference_eof,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_CONVERGENCE = 3
EXIT_IO = 4


def _add_werner_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--m0", type=float, required=True, help="weight of the dominant Bell state, in [0, 1]")
    parser.add_argument("--dimv", type=int, choices=(1, 2, 3), required=True, help="number of Bell states sharing m1")


def _add_output_arguments(parser: argparse.ArgumentParser, resolution: int):
    parser.add_argument("--resolution", type=int, default=resolution, help="points per axis")
    parser.add_argument("--out", type=str, default="-", help="CSV file to write (- for stdout)")


def get_parser():
    parser = argparse.ArgumentParser(
        prog="bellmix",
        description="Entanglement of formation of Bell-diagonal (Werner) states via the ansatz decomposition.",
    )
    parser.add_argument(
        "--logging-level",
        type=str,
        default=os.environ.get("BELLMIX_LOG_LEVEL", "WARNING"),
        help="Logging level",
    )
    parser.add_argument("--quiet", action="store_true", help="no progress bars")
    commands = parser.add_subparsers(dest="command", required=True)

    pure = commands.add_parser("pure", help="entanglement of a pure state from its Bell coefficients")
    source = pure.add_mutually_exclusive_group(required=True)
    source.add_argument("--z0", type=str, help="coefficient of B(0) as re,im")
    source.add_argument("--random", type=int, metavar="SEED", help="draw random coefficients")
    pure.add_argument("--z", type=str, nargs=3, metavar="RE,IM", help="coefficients of B(1), B(2), B(3)")

    werner = commands.add_parser("werner", help="pure or mixed minimization for a Werner state")
    _add_werner_arguments(werner)
    werner.add_argument("--mode", choices=("pure", "mixed"), default="pure")
    werner.add_argument("--nalpha", type=int, default=None, help="size of the v-family")
    werner.add_argument("--verify", action="store_true", help="append brute-force cross-checks")
    werner.add_argument("--seed", type=int, default=0)
    werner.add_argument("--resolution", type=int, default=128, help="oracle grid points per axis")

    scan_lagrangian = commands.add_parser("scan-lagrangian", help="L versus Y at fixed eps (CSV)")
    _add_werner_arguments(scan_lagrangian)
    scan_lagrangian.add_argument("--eps", type=float, default=0.0)
    _add_output_arguments(scan_lagrangian, 200)

    scan_frho = commands.add_parser("scan-frho", help="f(rho) of the small-rho approximation (CSV)")
    _add_werner_arguments(scan_frho)
    _add_output_arguments(scan_frho, 200)

    preconcurrence = commands.add_parser("preconcurrence", help="stationary values of |sum_j exp(i theta_j) m_j|")
    preconcurrence.add_argument("--m", type=str, required=True, help="weights m0,m1,...")

    surface = commands.add_parser("preconcurrence-surface", help="C(theta1, theta2) for weights (m0, m1, m1) (CSV)")
    surface.add_argument("--m", type=str, required=True, help="weights m0,m1,m1")
    _add_output_arguments(surface, 400)

    scan_entanglement = commands.add_parser("scan-entanglement", help="E_pure, E_mixed and the reference along m0 (CSV)")
    scan_entanglement.add_argument("--dimv", type=int, choices=(1, 2, 3), required=True)
    scan_entanglement.add_argument("--m0-min", type=float, default=0.5)
    scan_entanglement.add_argument("--m0-max", type=float, default=1.0)
    scan_entanglement.add_argument("--points", type=int, default=11)
    scan_entanglement.add_argument("--seed", type=int, default=0)
    scan_entanglement.add_argument("--out", type=str, default="-", help="CSV file to write (- for stdout)")

    solve = commands.add_parser("solve-eq", help="exact and approximate roots of the stationarity system")
    _add_werner_arguments(solve)
    solve.add_argument("--seed", type=int, default=0)

    orbits = commands.add_parser("orbits", help="classify complex-phase orbits of the ansatz")
    _add_werner_arguments(orbits)
    orbits.add_argument("--mode", choices=("pure", "mixed"), default="pure")
    orbits.add_argument("--samples", type=int, default=complex_ansatz.N_SAMPLES)
    orbits.add_argument("--seed", type=int, default=0)

    check = commands.add_parser("verify", help="run the invariant suites")
    check.add_argument("--suite", choices=("all",) + verify_suites.SUITES, default="all")
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--samples", type=int, default=100)
    return parser


def to_jsonable(value):
    """complex as [re, im], arrays as nested lists, non-finite floats as strings."""
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, (complex, np.complexfloating)):
        return [to_jsonable(float(value.real)), to_jsonable(float(value.imag))]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if np.isfinite(value) else str(value)
    return value


def envelope(command: str, arguments: Dict, result) -> Dict:
    return {
        "tool": "bellmix",
        "version": __version__,
        "command": command,
        "input": to_jsonable(arguments),
        "tolerance": get_tolerance(),
        "result": to_jsonable(result),
    }


def print_json(payload: Dict):
    print(json.dumps(payload, indent=2, allow_nan=False))


def write_csv(frame: pd.DataFrame, out: str):
    if out == "-":
        frame.to_csv(sys.stdout, index=False)
    else:
        frame.to_csv(out, index=False)


def run_pure(args) -> Dict:
    parser = Parser()
    if args.random is not None:
        coeffs = random_coeffs(np.random.default_rng(args.random))
    else:
        if args.z is None:
            raise DomainError("--z0 needs --z with three values")
        coeffs = BellCoeffs(parser.parse_complex(args.z0), parser.parse_complex_vector(args.z))
    reduced = reduced_density(coeffs)
    entanglement = entanglement_pure(coeffs)
    from_reduced = entanglement_from_reduced(coeffs)
    return {
        "coefficients": coeffs.vector(),
        "scale": coeffs.scale,
        "concurrence": concurrence_pure(coeffs),
        "entanglement": entanglement,
        "n0": reduced.n0,
        "n": reduced.n,
        "route_residual": abs(entanglement - from_reduced),
    }


def _werner_oracle(spec: WernerSpec, report, args) -> Dict:
    oracle = {
        "lagrangian_dense_delta": abs(lagrangian_dense(spec, report.params) - report.lagrangian),
        "reference_eof": reference_eof(spec),
    }
    if report.mode == "mixed":
        brute = brute_minimize(spec, resolution=args.resolution, progress=progress_enabled(args.quiet))
        oracle.update(
            {
                "brute_entanglement": brute.entanglement,
                "brute_q": brute.q,
                "brute_eps": brute.eps,
                "entanglement_delta": report.entanglement - brute.entanglement,
            }
        )
    return oracle


def run_werner(args) -> Dict:
    spec = WernerSpec(args.m0, args.dimv, n_alpha=args.nalpha)
    if args.mode == "pure":
        minimization = PureMinimization(logging_level=args.logging_level)
    else:
        minimization = MixedMinimization(tol=get_tolerance(), seed=args.seed, logging_level=args.logging_level)
    report = minimization.report(spec)
    p = report.params
    result = {
        "mode": report.mode,
        "entanglement": report.entanglement,
        "e_pure": lagrangian(spec, PureMinimization().minimize(spec)) / (2.0 * LN2),
        "q": p.q,
        "eps": p.eps,
        "Y": p.y,
        "X": p.x,
        "rho": p.rho,
        "delta_diagonal": None if report.delta is None else np.diag(report.delta.entries).real,
        "residuals": report.residuals,
        "candidates": [{"Y": y, "lagrangian": value} for y, value in report.candidates],
    }
    if args.verify:
        result["oracle"] = _werner_oracle(spec, report, args)
    return result


def run_preconcurrence(args) -> Dict:
    weights = Parser().parse_weights(args.m)
    stationary = stationary_values(weights)
    result = {
        "values": stationary.all_values,
        "zero_feasible": stationary.zero_feasible,
        "minimum": min_concurrence(weights),
    }
    if stationary.zero_feasible and len(weights) > 2:
        result["zero_witness"] = zero_witness(weights)
    return result


def run_solve(args) -> Dict:
    spec = WernerSpec(args.m0, args.dimv)
    approx = solve_approx(spec)
    root = solve_exact(spec, tol=get_tolerance(), seed=args.seed)
    if not root.converged:
        raise ConvergenceError(f"no stationary point for m0={spec.m0} d_v={spec.d_v}", best=root, residual=root.residual_norm)
    approx_result: Optional[Dict] = None
    if approx is not None:
        approx_result = dataclasses.asdict(approx)
        approx_result["f_residual"] = approx.f_residual(spec)
    return {"exact": root, "residual_norm": root.residual_norm, "approx": approx_result}


def run_orbits(args) -> Dict:
    spec = WernerSpec(args.m0, args.dimv)
    reports = complex_ansatz.classify_orbits(spec, args.mode, n_samples=args.samples, seed=args.seed)
    result: Dict = {"orbits": reports}
    if args.mode == "pure":
        result["matches_stationary_set"] = complex_ansatz.matches_stationary_set(spec, reports)
    else:
        result["insensitive_count"] = sum(report.insensitive for report in reports)
    return result


def run_scan(args) -> pd.DataFrame:
    progress = progress_enabled(args.quiet)
    if args.command == "scan-lagrangian":
        return lagrangian_vs_y(args.m0, args.dimv, args.resolution, eps=args.eps, progress=progress)
    if args.command == "scan-frho":
        return f_rho_curve(args.m0, args.dimv, args.resolution, progress=progress)
    if args.command == "preconcurrence-surface":
        return preconcurrence_surface(Parser().parse_weights(args.m), args.resolution)
    if args.points < 2:
        raise DomainError(f"--points must be at least 2, got {args.points}")
    m0s = np.linspace(args.m0_min, args.m0_max, args.points)
    return entanglement_vs_m0(args.dimv, m0s, progress=progress, seed=args.seed)


JSON_COMMANDS = {
    "pure": run_pure,
    "werner": run_werner,
    "preconcurrence": run_preconcurrence,
    "solve-eq": run_solve,
    "orbits": run_orbits,
}


def _arguments(args) -> Dict:
    return {key: value for key, value in vars(args).items() if key not in ("command", "logging_level", "quiet")}


def main(argv: Optional[List[str]] = None) -> int:
    args = get_parser().parse_args(argv)
    logger = setup_logger(filename=__file__, classname="main", level=args.logging_level)
    try:
        if args.command == "verify":
            results = verify_suites.run(args.suite, seed=args.seed, samples=args.samples)
            summary = verify_suites.summary(results)
            print_json(envelope(args.command, _arguments(args), summary))
            return EXIT_OK if summary["passed"] else EXIT_VERIFY
        if args.command in JSON_COMMANDS:
            result = JSON_COMMANDS[args.command](args)
            print_json(envelope(args.command, _arguments(args), result))
            return EXIT_OK
        write_csv(run_scan(args), args.out)
        return EXIT_OK
    except ConvergenceError as exc:
        logger.error("%s (residual %.3e)", exc, exc.residual)
        print(json.dumps({"error": str(exc), "residual": to_jsonable(exc.residual), "best": to_jsonable(exc.best)}), file=sys.stderr)
        return EXIT_CONVERGENCE
    except (DomainError, BoundaryError) as exc:
        logger.error("%s", exc)
        print(f"bellmix: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        logger.error("%s", exc)
        print(f"bellmix: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
