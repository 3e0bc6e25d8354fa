"""Built-in self-checks runnable from the CLI (``tbsim validate``).

Each check exercises one invariant of the pipeline against an independent
target: pump quadrature identities, SU(1,1) membership, decomposition
residuals, solver cross-checks, and the low-gain closed form.  A fault hook
lets tests corrupt one named intermediate value and confirm that the
corresponding check actually trips.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .analytic import (
    LowGainConfig,
    first_order_propagator,
    kappa_optimal,
    lowgain_jsa,
    symmetric_gvm_velocities,
)
from .config import parse_config, run_simulation
from .decompose import aligned_relative_l2, jsa, moment_matrix
from .propagator import propagate_trotter, propagate_uniform
from .pump import PumpField, PumpSpec

__all__ = ["CheckResult", "example_config", "run_checks", "CHECKS_FAST", "CHECKS_FULL"]

#: canonical validation geometry: symmetric walk-off at the separability optimum
EXAMPLE_ELL = 10.0


def example_config(
    n_points: int = 50,
    n_photons: float = 1.0,
    gamma: float = 0.05,
    kappa: Optional[float] = None,
    span: float = 4.0,
    solver: str = "uniform",
    n_steps: Optional[int] = None,
    spm: float = 0.0,
    xpm: float = 0.0,
) -> dict:
    """Raw config dict for the symmetric-walk-off reference geometry.

    Group velocities satisfy 1/v_s - 1/v_p = -(1/v_i - 1/v_p) = 2 kappa / ell
    with sigma = v_p = 1, so the low-gain closed form applies exactly when SPM
    and XPM are off.
    """
    kappa = kappa_optimal(1.0) if kappa is None else kappa
    v_s, v_i = symmetric_gvm_velocities(kappa, EXAMPLE_ELL)
    half = EXAMPLE_ELL / 2.0
    cfg: dict = {
        "version": 1,
        "pump": {"n_photons": n_photons, "sigma": 1.0, "delta": 1},
        "waveguide": {
            "v_s": v_s,
            "v_i": v_i,
            "ell_min": -half,
            "ell_max": half,
            "gamma_delta": gamma,
        },
        "grid": {"span": span, "n_points": n_points},
        "solver": {"kind": solver},
    }
    if n_steps is not None:
        cfg["solver"]["n_steps"] = n_steps
    if spm:
        cfg["pump"]["spm_profile"] = [[-half, half, spm]]
        cfg["solver"]["kind"] = "trotter"
    if xpm:
        cfg["waveguide"]["gamma_xpm_s"] = xpm
        cfg["waveguide"]["gamma_xpm_i"] = xpm
    return cfg


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "value": self.value,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


Fault = Optional[Callable[[str, object], object]]


def _maybe_corrupt(fault: Fault, name: str, value):
    return value if fault is None else fault(name, value)


def _check_pump_parseval(fault: Fault) -> CheckResult:
    spec = PumpSpec(n_photons=3.0, sigma=1.0, delta=1)
    pump = PumpField.gaussian(spec)
    nu = np.linspace(-40.0, 40.0, 4001)
    beta = pump.beta_p(0.0, nu)
    total = np.trapezoid(np.abs(beta) ** 2, nu)
    total = _maybe_corrupt(fault, "pump_parseval_total", total)
    rel = abs(total - pump.pulse_energy) / pump.pulse_energy
    return CheckResult("pump_parseval", rel <= 1e-4, float(rel), 1e-4,
                       "relative error of integral |beta_p|^2 dnu against pulse energy")


def _check_energy_spectrum(fault: Fault) -> CheckResult:
    spec = PumpSpec(n_photons=2.5, sigma=1.0, delta=1)
    pump = PumpField.gaussian(spec)
    nu = np.linspace(-10.0, 10.0, 801)
    e = pump.energy_spectrum(nu)
    e = _maybe_corrupt(fault, "energy_spectrum", e)
    herm = np.max(np.abs(e - np.conj(e[::-1]))) / pump.pulse_energy
    zero = abs(pump.energy_spectrum(np.array([0.0]))[0] - pump.pulse_energy) / pump.pulse_energy
    worst = max(herm / 1e-8, zero / 1e-6)
    return CheckResult("pump_energy_spectrum", herm <= 1e-8 and zero <= 1e-6, float(worst), 1.0,
                       "Hermitian symmetry and zero-frequency value of the pump energy spectrum")


def _check_su11(fault: Fault) -> CheckResult:
    result = run_simulation(parse_config(example_config(n_points=50, n_photons=4.0)))
    residual = result.report["su11"]["metric_residual"]
    residual = max(residual, result.report["su11"]["commutator_ss"],
                   result.report["su11"]["commutator_ii"], result.report["su11"]["commutator_si"])
    residual = _maybe_corrupt(fault, "su11_residual", residual)
    return CheckResult("su11_membership", residual <= 1e-10, float(residual), 1e-10,
                       "max SU(1,1) residual of the dressed propagator")


def _check_decomposition(fault: Fault) -> CheckResult:
    result = run_simulation(parse_config(example_config(n_points=60, n_photons=4.0)))
    d = result.decomposition
    dw = _maybe_corrupt(fault, "delta_omega", d.delta_omega)
    d = replace(d, delta_omega=dw)
    n = d.rho_s.shape[0]
    eye = np.eye(n)
    ortho = max(
        np.max(np.abs(d.delta_omega * d.rho_s.conj().T @ d.rho_s - eye)),
        np.max(np.abs(d.delta_omega * d.rho_i.conj().T @ d.rho_i - eye)),
        np.max(np.abs(d.delta_omega * d.tau_s.conj().T @ d.tau_s - eye)),
        np.max(np.abs(d.delta_omega * d.tau_i.conj().T @ d.tau_i - eye)),
    )
    scale = d.delta_omega
    recon = (d.rho_s * np.cosh(d.r)[None, :]) @ d.tau_s.conj().T * scale
    resid = np.max(np.abs(recon - result.dressed.u_ss))
    value = max(float(ortho), float(resid))
    return CheckResult("schmidt_decomposition", value <= 1e-9, value, 1e-9,
                       "mode orthonormality and U_ss reconstruction residual")


def _check_uniform_trotter(fault: Fault) -> CheckResult:
    cfg = parse_config(example_config(n_points=40, n_photons=2.0))
    result = run_simulation(cfg)
    from .coupling import GeneratorSampler

    pump = result.pump_field
    sampler = GeneratorSampler(pump, cfg.waveguide, cfg.grid)
    q0 = sampler.q(0.0)
    uni = propagate_uniform(q0, cfg.waveguide.length, cfg.grid.delta_omega, z0=cfg.waveguide.ell_min)
    tro = propagate_trotter(lambda z: q0, cfg.waveguide.ell_min, cfg.waveguide.ell_max,
                            8, cfg.grid.delta_omega)
    diff = np.max(np.abs(uni.matrix - tro.matrix))
    diff = _maybe_corrupt(fault, "uniform_trotter_diff", diff)
    return CheckResult("uniform_vs_trotter", diff <= 1e-12, float(diff), 1e-12,
                       "product formula equals the single exponential for constant Q")


def _check_moment_consistency(fault: Fault) -> CheckResult:
    result = run_simulation(parse_config(example_config(n_points=50, n_photons=4.0)))
    m_blocks = moment_matrix(result.dressed)
    m_modes = result.observables.M
    m_blocks = _maybe_corrupt(fault, "moment_blocks", m_blocks)
    rel = np.linalg.norm(m_blocks - m_modes) / np.linalg.norm(m_modes)
    return CheckResult("moment_matrix", rel <= 1e-9, float(rel), 1e-9,
                       "block formula for <a_s a_i> against the Schmidt form")


def _check_lowgain_jsa(fault: Fault) -> CheckResult:
    gamma = 1e-3
    raw = example_config(n_points=80, n_photons=1.0, gamma=gamma)
    cfg = parse_config(raw)
    result = run_simulation(cfg)
    j_sim = jsa(result.decomposition)
    wg = cfg.waveguide
    xi0 = gamma * np.sqrt(wg.v_s * wg.v_i * wg.v_p)
    ana = LowGainConfig(
        xi0=xi0, ell=wg.length, sigma=1.0, n_photons=1.0,
        v_s=wg.v_s, v_i=wg.v_i, v_p=wg.v_p,
        kappa=kappa_optimal(1.0), symmetric_gvm=True,
    )
    j_ref = lowgain_jsa(ana, cfg.grid.nu[:, None], cfg.grid.nu[None, :])
    j_sim = _maybe_corrupt(fault, "lowgain_jsa", j_sim)
    err = aligned_relative_l2(j_sim, j_ref)
    return CheckResult("lowgain_jsa", err <= 0.01, float(err), 0.01,
                       "aligned L2 distance of the simulated JSA from the closed form")


def _check_first_order_kernel(fault: Fault) -> CheckResult:
    cfg = parse_config(example_config(n_points=60, n_photons=1.0, gamma=1e-3))
    result = run_simulation(cfg)
    pump = result.pump_field
    k1 = first_order_propagator(pump, cfg.waveguide, cfg.grid) * cfg.grid.delta_omega
    diff = aligned_relative_l2(result.dressed.u_si, k1)
    diff = _maybe_corrupt(fault, "first_order_kernel", diff)
    return CheckResult("first_order_kernel", diff <= 0.01, float(diff), 0.01,
                       "dressed U_si block against the perturbative kernel")


CHECKS_FAST = (
    _check_pump_parseval,
    _check_energy_spectrum,
    _check_su11,
    _check_decomposition,
    _check_uniform_trotter,
    _check_moment_consistency,
)

CHECKS_FULL = CHECKS_FAST + (
    _check_lowgain_jsa,
    _check_first_order_kernel,
)


def run_checks(suite: str = "fast", fault: Fault = None) -> list[CheckResult]:
    """Run the named suite; ``fault(name, value)`` may corrupt one intermediate."""
    if suite == "fast":
        checks = CHECKS_FAST
    elif suite == "full":
        checks = CHECKS_FULL
    else:
        from .exceptions import ConfigurationError

        raise ConfigurationError(f"unknown validation suite '{suite}' (use 'fast' or 'full')")
    return [check(fault) for check in checks]
