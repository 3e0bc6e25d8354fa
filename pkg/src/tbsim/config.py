"""Run configuration: JSON schema ingestion and the simulation pipeline.

A run config is a versioned JSON document with ``pump``, ``waveguide``,
``grid``, ``solver``, and ``outputs`` sections.  Quantities are interpreted
in a consistent unit system; the recommended (and default) choice is the
dimensionless internal system v_p = 1, sigma = 1, hbar*omega_p = 1, which is
echoed in every report so runs are reproducible from their own metadata.
"""

from __future__ import annotations

import hashlib
import json
import time
import warnings
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .coupling import GeneratorSampler, WaveguideSpec
from .decompose import (
    TwinBeamDecomposition,
    TwinBeamObservables,
    observables,
    schmidt_decompose,
)
from .exceptions import ConfigurationError
from .grid import FrequencyGrid, make_grid
from .profiles import PiecewiseConstant
from .propagator import (
    ADAPTIVE_MAX_STEPS,
    ADAPTIVE_TOL,
    Propagator,
    check_su11,
    dress_in_out,
    propagate_adaptive,
    propagate_trotter,
    propagate_uniform,
)
from .pump import PumpField, PumpSpec

__all__ = ["RunConfig", "RunResult", "load_config", "parse_config", "run_simulation"]

CONFIG_VERSION = 1
DEFAULT_SPAN_SIGMAS = 4.0


def _require(section: dict, key: str, where: str):
    if key not in section:
        raise ConfigurationError(f"missing required field '{where}.{key}'")
    return section[key]


def _number(section: dict, key: str, where: str, default=None):
    value = section.get(key, default)
    if value is default and default is not None and key not in section:
        return default
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigurationError(f"field '{where}.{key}' must be a number, got {value!r}")
    return float(value)


def _profile(section: dict, key: str, where: str) -> Optional[PiecewiseConstant]:
    raw = section.get(key)
    if raw is None:
        return None
    try:
        return PiecewiseConstant(raw)
    except (TypeError, ConfigurationError) as exc:
        raise ConfigurationError(f"field '{where}.{key}' is not a valid profile: {exc}") from exc


def _complex_value(raw, where: str) -> complex:
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return complex(raw)
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        return complex(float(raw[0]), float(raw[1]))
    raise ConfigurationError(f"field '{where}' must be a number or [re, im] pair, got {raw!r}")


@dataclass(frozen=True)
class RunConfig:
    pump: PumpSpec
    waveguide: WaveguideSpec
    grid: FrequencyGrid
    solver_kind: str
    n_steps: Optional[int]
    solver_tol: float
    artifacts: tuple
    envelope_points: int
    envelope_width_factor: float
    raw: dict = field(compare=False, repr=False)
    sha256: str = ""

    def with_n_photons(self, n_photons: float) -> "RunConfig":
        raw = json.loads(json.dumps(self.raw))
        raw.setdefault("pump", {})["n_photons"] = float(n_photons)
        return parse_config(raw)


def load_config(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_config(raw)


def parse_config(raw: dict) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigurationError("config root must be a JSON object")
    version = raw.get("version", CONFIG_VERSION)
    if version != CONFIG_VERSION:
        raise ConfigurationError(f"unsupported config version {version}")

    pump_raw = _require(raw, "pump", "config")
    delta = pump_raw.get("delta", 1)
    if delta not in (1, 2):
        raise ConfigurationError(f"field 'pump.delta' must be 1 or 2, got {delta!r}")
    pump = PumpSpec(
        n_photons=_number(pump_raw, "n_photons", "pump"),
        sigma=_number(pump_raw, "sigma", "pump"),
        z0=_number(pump_raw, "z0", "pump", 0.0),
        t0=_number(pump_raw, "t0", "pump", 0.0),
        v_p=_number(pump_raw, "v_p", "pump", 1.0),
        delta=int(delta),
        zeta_p_profile=_profile(pump_raw, "spm_profile", "pump") or PiecewiseConstant(),
        hbar_omega_p=_number(pump_raw, "hbar_omega_p", "pump", 1.0),
    )
    env_raw = pump_raw.get("envelope", {})
    envelope_points = int(_number(env_raw, "n_points", "pump.envelope", 2048.0))
    envelope_width = _number(env_raw, "width_factor", "pump.envelope", 8.0)

    wg_raw = _require(raw, "waveguide", "config")
    waveguide = WaveguideSpec(
        v_s=_number(wg_raw, "v_s", "waveguide"),
        v_i=_number(wg_raw, "v_i", "waveguide"),
        v_p=pump.v_p,
        ell_min=_number(wg_raw, "ell_min", "waveguide"),
        ell_max=_number(wg_raw, "ell_max", "waveguide"),
        gamma_delta=_complex_value(_require(wg_raw, "gamma_delta", "waveguide"), "waveguide.gamma_delta"),
        g_profile=_profile(wg_raw, "g_profile", "waveguide"),
        gamma_xpm_s=_number(wg_raw, "gamma_xpm_s", "waveguide", 0.0),
        gamma_xpm_i=_number(wg_raw, "gamma_xpm_i", "waveguide", 0.0),
        h_s_profile=_profile(wg_raw, "h_s_profile", "waveguide"),
        h_i_profile=_profile(wg_raw, "h_i_profile", "waveguide"),
        delta=pump.delta,
        carriers=wg_raw.get("carriers"),
    )

    grid_raw = _require(raw, "grid", "config")
    span = grid_raw.get("span")
    if span is None:
        span = DEFAULT_SPAN_SIGMAS * pump.sigma
    grid = make_grid(float(span), int(_number(grid_raw, "n_points", "grid")))

    solver_raw = raw.get("solver", {})
    kind = solver_raw.get("kind", "uniform")
    if kind not in ("uniform", "trotter"):
        raise ConfigurationError(f"field 'solver.kind' must be 'uniform' or 'trotter', got {kind!r}")
    n_steps = solver_raw.get("n_steps")
    if n_steps is not None:
        n_steps = int(n_steps)
        if n_steps < 1:
            raise ConfigurationError("field 'solver.n_steps' must be >= 1")
    if kind == "uniform":
        _check_uniform_applicability(pump, waveguide)

    outputs_raw = raw.get("outputs", {})
    artifacts = tuple(outputs_raw.get("artifacts", ["report", "jsa"]))
    known = {"report", "jsa", "moment", "modes", "propagator"}
    for art in artifacts:
        if art not in known:
            raise ConfigurationError(f"unknown artifact '{art}' in outputs.artifacts")

    sha = hashlib.sha256(json.dumps(raw, sort_keys=True).encode()).hexdigest()
    return RunConfig(
        pump=pump,
        waveguide=waveguide,
        grid=grid,
        solver_kind=kind,
        n_steps=n_steps,
        solver_tol=_number(solver_raw, "tolerance", "solver", ADAPTIVE_TOL),
        artifacts=artifacts,
        envelope_points=envelope_points,
        envelope_width_factor=envelope_width,
        raw=raw,
        sha256=sha,
    )


def _check_uniform_applicability(pump: PumpSpec, wg: WaveguideSpec):
    """The single-exponential shortcut needs a z-independent generator."""
    if not pump.zeta_p_profile.is_zero and pump.n_photons > 0:
        raise ConfigurationError(
            "solver.kind 'uniform' requires zero pump SPM; use the 'trotter' solver"
        )
    region = (wg.ell_min, wg.ell_max)
    for name, prof in (
        ("waveguide.g_profile", wg.g_profile),
        ("waveguide.h_s_profile", wg.h_s_profile),
        ("waveguide.h_i_profile", wg.h_i_profile),
    ):
        if len(prof.segments) != 1:
            raise ConfigurationError(
                f"solver.kind 'uniform' requires a single-segment {name} over the nonlinear region"
            )
        a, b, _ = prof.segments[0]
        if abs(a - region[0]) > 1e-12 or abs(b - region[1]) > 1e-12:
            raise ConfigurationError(
                f"solver.kind 'uniform' requires {name} to span exactly [ell_min, ell_max]"
            )


@dataclass
class RunResult:
    config: RunConfig
    grid: FrequencyGrid
    pump_field: PumpField
    propagator: Propagator
    dressed: Propagator
    decomposition: TwinBeamDecomposition
    observables: TwinBeamObservables
    report: dict


def run_simulation(config: RunConfig) -> RunResult:
    """Full pipeline: pump kernels -> generator -> propagator -> decomposition."""
    start = time.perf_counter()
    run_warnings: list[str] = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        pump_field = PumpField.gaussian(
            config.pump,
            n_points=config.envelope_points,
            width_factor=config.envelope_width_factor,
        )
        sampler = GeneratorSampler(pump_field, config.waveguide, config.grid)
        wg = config.waveguide
        if config.solver_kind == "uniform":
            gen = sampler.matrices(0.5 * (wg.ell_min + wg.ell_max))
            prop = propagate_uniform(gen, wg.length, config.grid.delta_omega, z0=wg.ell_min)
            n_steps_used = 1
        elif config.n_steps is not None:
            prop = propagate_trotter(
                sampler.q,
                wg.ell_min,
                wg.ell_max,
                config.n_steps,
                config.grid.delta_omega,
                breakpoints=sampler.breakpoints,
            )
            n_steps_used = config.n_steps
        else:
            prop = propagate_adaptive(
                sampler.q,
                wg.ell_min,
                wg.ell_max,
                config.grid.delta_omega,
                breakpoints=sampler.breakpoints,
                tol=config.solver_tol,
                max_steps=ADAPTIVE_MAX_STEPS,
            )
            n_steps_used = None
        dressed = dress_in_out(prop, wg, config.grid)
        su11 = check_su11(dressed)
        decomp = schmidt_decompose(dressed)
        obs = observables(decomp)
        run_warnings.extend(str(w.message) for w in caught)

    elapsed = time.perf_counter() - start
    n_report = max(decomp.n_occupied, 1)
    report = {
        "tool": "tbsim",
        "version": __version__,
        "config_sha256": config.sha256,
        "config": config.raw,
        "units": {
            "convention": "dimensionless internal units",
            "v_p": config.pump.v_p,
            "sigma": config.pump.sigma,
            "hbar_omega_p": config.pump.hbar_omega_p,
            "grid_span": config.grid.span,
            "grid_delta_omega": config.grid.delta_omega,
        },
        "solver": {"kind": config.solver_kind, "n_steps": n_steps_used},
        "su11": su11.as_dict(),
        "squeezing_parameters": [float(r) for r in decomp.r[:n_report]],
        "n_occupied_modes": decomp.n_occupied,
        "mean_n_signal": obs.mean_n_signal,
        "mean_n_idler": obs.mean_n_idler,
        "schmidt_number": obs.schmidt_number,
        "is_vacuum": obs.is_vacuum,
        "timing_seconds": elapsed,
        "warnings": run_warnings,
    }
    return RunResult(
        config=config,
        grid=config.grid,
        pump_field=pump_field,
        propagator=prop,
        dressed=dressed,
        decomposition=decomp,
        observables=obs,
        report=report,
    )
