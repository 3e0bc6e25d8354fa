"""Command-line interface.

Subcommands::

    tbsim simulate <config.json> [--out DIR]
    tbsim sweep    <config.json> --param sqrt_np --from A --to B --points K [--out DIR]
    tbsim validate [--suite fast|full]
    tbsim estimate <params.json>

Config or parse errors exit with status 2 and a machine-readable JSON error
object on stderr; solver failures exit with status 1.  Sweeps run points in a
thread pool sized by the TBSIM_THREADS environment variable (default: CPU
count) and always report results in point order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .config import RunConfig, RunResult, load_config, run_simulation
from .coupling import estimate_gamma
from .decompose import jsa
from .exceptions import ConfigurationError, TbsimError
from .propagator import write_matrix_dump
from .validate import run_checks

__all__ = ["main", "build_parser"]

FLOAT_FMT = "%.17g"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tbsim", description="twin-beam waveguide squeezing simulator"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one configuration and write artifacts")
    p_sim.add_argument("config", help="path to a run config JSON file")
    p_sim.add_argument("--out", default="tbsim_output", help="artifact directory")

    p_sweep = sub.add_parser("sweep", help="run a 1-d parameter sweep")
    p_sweep.add_argument("config", help="path to the base run config JSON file")
    p_sweep.add_argument("--param", required=True, choices=["sqrt_np"],
                         help="swept parameter (sqrt of the pump photon number)")
    p_sweep.add_argument("--from", dest="start", type=float, required=True)
    p_sweep.add_argument("--to", dest="stop", type=float, required=True)
    p_sweep.add_argument("--points", type=int, required=True)
    p_sweep.add_argument("--out", default="tbsim_output", help="artifact directory")

    p_val = sub.add_parser("validate", help="run the built-in self-check suite")
    p_val.add_argument("--suite", default="fast", choices=["fast", "full"])

    p_est = sub.add_parser("estimate", help="estimate coupling constants from material data")
    p_est.add_argument("params", help="path to a JSON file of estimate_gamma keyword arguments")

    return parser


def _error_json(message: str, code: int) -> int:
    json.dump({"error": message, "exit_code": code}, sys.stderr)
    sys.stderr.write("\n")
    return code


def _write_kernel_csv(path: Path, nu: np.ndarray, kernel: np.ndarray) -> None:
    """Long-form CSV: nu_s, nu_i, re, im with full float64 precision."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("nu_s,nu_i,re,im\n")
        for i, ns in enumerate(nu):
            row = kernel[i]
            for j, ni in enumerate(nu):
                fh.write(
                    f"{FLOAT_FMT % ns},{FLOAT_FMT % ni},"
                    f"{FLOAT_FMT % row[j].real},{FLOAT_FMT % row[j].imag}\n"
                )


def _write_modes_csv(path: Path, nu: np.ndarray, decomp) -> None:
    n_modes = max(decomp.n_occupied, 1)
    cols = ["nu"]
    for l in range(n_modes):
        cols += [f"rho_s{l}_re", f"rho_s{l}_im", f"rho_i{l}_re", f"rho_i{l}_im"]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for k, v in enumerate(nu):
            parts = [FLOAT_FMT % v]
            for l in range(n_modes):
                parts += [
                    FLOAT_FMT % decomp.rho_s[k, l].real,
                    FLOAT_FMT % decomp.rho_s[k, l].imag,
                    FLOAT_FMT % decomp.rho_i[k, l].real,
                    FLOAT_FMT % decomp.rho_i[k, l].imag,
                ]
            fh.write(",".join(parts) + "\n")


def write_artifacts(result: RunResult, out_dir: Path) -> list[str]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    nu = result.grid.nu
    arts = result.config.artifacts
    if "report" in arts:
        path = out_dir / "report.json"
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(result.report, fh, indent=2)
            fh.write("\n")
        written.append(str(path))
    if "jsa" in arts:
        path = out_dir / "jsa.csv"
        _write_kernel_csv(path, nu, jsa(result.decomposition))
        written.append(str(path))
    if "moment" in arts:
        path = out_dir / "moment.csv"
        _write_kernel_csv(path, nu, result.observables.M)
        written.append(str(path))
    if "modes" in arts:
        path = out_dir / "modes.csv"
        _write_modes_csv(path, nu, result.decomposition)
        written.append(str(path))
    if "propagator" in arts:
        path = out_dir / "propagator.tbsm"
        write_matrix_dump(path, result.dressed.matrix)
        written.append(str(path))
    return written


def _cmd_simulate(args) -> int:
    config = load_config(args.config)
    result = run_simulation(config)
    written = write_artifacts(result, Path(args.out))
    summary = {
        "config_sha256": config.sha256,
        "r_max": result.report["squeezing_parameters"][:1],
        "mean_n_signal": result.report["mean_n_signal"],
        "schmidt_number": result.report["schmidt_number"],
        "artifacts": written,
    }
    json.dump(summary, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def sweep_workers() -> int:
    env = os.environ.get("TBSIM_THREADS")
    if env is not None:
        try:
            workers = int(env)
        except ValueError as exc:
            raise ConfigurationError(f"TBSIM_THREADS must be an integer, got {env!r}") from exc
        if workers < 1:
            raise ConfigurationError(f"TBSIM_THREADS must be >= 1, got {workers}")
        return workers
    return os.cpu_count() or 1


def run_sweep(base: RunConfig, values: np.ndarray) -> list[dict]:
    """Simulate each sqrt(N_p) value; results come back in value order."""

    def one(value: float) -> dict:
        cfg = base.with_n_photons(value**2)
        result = run_simulation(cfg)
        return {
            "sqrt_np": float(value),
            "n_photons": float(value**2),
            "config_sha256": cfg.sha256,
            "squeezing_parameters": result.report["squeezing_parameters"],
            "mean_n_signal": result.report["mean_n_signal"],
            "schmidt_number": result.report["schmidt_number"],
            "su11_max_residual": max(
                result.report["su11"][k]
                for k in ("metric_residual", "commutator_ss", "commutator_ii", "commutator_si")
            ),
        }

    with ThreadPoolExecutor(max_workers=sweep_workers()) as pool:
        return list(pool.map(one, values))


def _cmd_sweep(args) -> int:
    if args.points < 1:
        raise ConfigurationError(f"--points must be >= 1, got {args.points}")
    if args.start < 0 or args.stop < 0:
        raise ConfigurationError("sqrt_np sweep bounds must be >= 0")
    base = load_config(args.config)
    values = np.linspace(args.start, args.stop, args.points)
    points = run_sweep(base, values)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = {
        "param": args.param,
        "base_config_sha256": base.sha256,
        "points": points,
    }
    path = out_dir / "sweep.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    for p in points:
        r1 = p["squeezing_parameters"][0] if p["squeezing_parameters"] else 0.0
        sys.stdout.write(
            f"sqrt_np={p['sqrt_np']:.6g} r1={r1:.6g} "
            f"mean_n={p['mean_n_signal']:.6g} K={p['schmidt_number']:.6g}\n"
        )
    sys.stdout.write(f"wrote {path}\n")
    return 0


def _cmd_validate(args) -> int:
    results = run_checks(args.suite)
    ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        ok &= res.passed
        sys.stdout.write(
            f"{status} {res.name}: value={res.value:.3e} tol={res.tolerance:.1e}\n"
        )
    sys.stdout.write(f"{'all checks passed' if ok else 'some checks FAILED'}\n")
    return 0 if ok else 1


def _cmd_estimate(args) -> int:
    try:
        with open(args.params, "r", encoding="utf-8") as fh:
            params = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            f"malformed JSON in {args.params} at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(params, dict):
        raise ConfigurationError("estimate params file must contain a JSON object")
    try:
        estimate = estimate_gamma(**params)
    except TypeError as exc:
        raise ConfigurationError(f"bad estimate parameters: {exc}") from exc
    json.dump(estimate.as_dict(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
    "estimate": _cmd_estimate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigurationError as exc:
        return _error_json(str(exc), 2)
    except FileNotFoundError as exc:
        return _error_json(f"file not found: {exc.filename}", 2)
    except TbsimError as exc:
        return _error_json(str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
