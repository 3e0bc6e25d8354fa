"""Closed-form low-gain results used as independent oracles for the full solver.

Covers the perturbative joint spectral amplitude (pump Gaussian times sinc
phase matching), the phase-matching function of a piecewise-constant
nonlinearity profile, the first-order transfer kernel, and the pump-bandwidth
to walk-off ratio that maximizes separability.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coupling import WaveguideSpec, delta_k
from .exceptions import ConfigurationError
from .grid import FrequencyGrid
from .profiles import PiecewiseConstant
from .pump import PumpField

__all__ = [
    "LowGainConfig",
    "symmetric_gvm_velocities",
    "lowgain_jsa",
    "phase_matching_phi",
    "first_order_propagator",
    "kappa_optimal",
]


def sinc(x):
    """Unnormalized sinc, sin(x)/x with sinc(0) = 1."""
    return np.sinc(np.asarray(x) / np.pi)


def symmetric_gvm_velocities(kappa: float, ell: float, v_p: float = 1.0) -> tuple[float, float]:
    """Signal/idler velocities in the symmetric group-velocity-matched regime.

    1/v_s - 1/v_p = -(1/v_i - 1/v_p) = 2 kappa / ell, so the phase-matching
    argument reduces to kappa * (nu_s - nu_i).
    """
    rate = 2.0 * kappa / ell
    inv_s = 1.0 / v_p + rate
    inv_i = 1.0 / v_p - rate
    if inv_s <= 0 or inv_i <= 0:
        raise ConfigurationError(
            f"kappa={kappa}, ell={ell} imply a nonpositive group velocity; increase ell"
        )
    return 1.0 / inv_s, 1.0 / inv_i


@dataclass(frozen=True)
class LowGainConfig:
    """Flat-nonlinearity, Gaussian-pump configuration for the analytic kernel."""

    xi0: float
    ell: float
    sigma: float
    n_photons: float
    v_s: float
    v_i: float
    v_p: float
    kappa: float = 0.0
    symmetric_gvm: bool = False

    def __post_init__(self):
        if self.sigma <= 0 or self.ell <= 0 or self.n_photons < 0:
            raise ConfigurationError("sigma and ell must be positive, n_photons >= 0")
        if min(self.v_s, self.v_i, self.v_p) <= 0:
            raise ConfigurationError("group velocities must be positive")
        if self.symmetric_gvm:
            lhs = 1.0 / self.v_s - 1.0 / self.v_p
            rhs = -(1.0 / self.v_i - 1.0 / self.v_p)
            target = 2.0 * self.kappa / self.ell
            scale = max(abs(target), 1.0)
            if abs(lhs - target) > 1e-12 * scale or abs(rhs - target) > 1e-12 * scale:
                raise ConfigurationError(
                    "velocities violate the symmetric group-velocity-matching condition"
                )


def lowgain_jsa(cfg: LowGainConfig, nu_s, nu_i) -> np.ndarray:
    """Perturbative JSA: Gaussian pump envelope times the sinc phase-matching factor.

    Broadcasts over ``nu_s`` and ``nu_i`` (detunings from the respective carriers).
    """
    nu_s = np.asarray(nu_s, dtype=float)
    nu_i = np.asarray(nu_i, dtype=float)
    pref = cfg.xi0 * np.sqrt(cfg.n_photons) / np.sqrt(
        2.0 * np.pi * cfg.v_s * cfg.v_i * cfg.v_p * cfg.sigma * np.sqrt(np.pi)
    )
    pump = np.exp(-((nu_s + nu_i) ** 2) / (2.0 * cfg.sigma**2))
    mismatch = delta_k(nu_s, cfg.v_s, cfg.v_p) + delta_k(nu_i, cfg.v_i, cfg.v_p)
    return pref * pump * cfg.ell * sinc(0.5 * cfg.ell * mismatch)


def phase_matching_phi(dk, profile: PiecewiseConstant) -> np.ndarray:
    """Phase-matching function of a piecewise-constant nonlinearity profile.

    Phi(dk) = (2 pi)^{-1/2} * integral of profile(z) exp(-i z dk) dz, evaluated
    in closed form per segment.  A centered top-hat of height xi0 and length
    ell gives xi0 * ell * sinc(ell dk / 2) / sqrt(2 pi).
    """
    dk = np.atleast_1d(np.asarray(dk, dtype=float))
    out = np.zeros(dk.shape, dtype=complex)
    for a, b, v in profile.segments:
        if v == 0:
            continue
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        out += v * (b - a) * np.exp(-1j * dk * mid) * sinc(dk * half)
    return out / np.sqrt(2.0 * np.pi)


def first_order_propagator(pump: PumpField, wg: WaveguideSpec, grid: FrequencyGrid) -> np.ndarray:
    """First-order (single pair-creation event) U_si kernel on the grid.

    i * gamma_delta * beta_p(nu + nu') * Phi_g(dk_s(nu) + dk_i(nu')) with Phi_g
    the phase-matching function of the sign profile g(z).  Reuses the pump
    module's beta_p (SPM must be off) so the propagation approximation is the
    only difference against the full solver.  Oracle use only; meaningful when
    the predicted squeezing stays well below 1.
    """
    if pump.has_spm:
        raise ConfigurationError("the first-order kernel assumes no pump SPM")
    beta = pump.beta_p(0.0, grid.sum_values())[grid.sum_index()]
    mismatch = delta_k(grid.nu, wg.v_s, wg.v_p)[:, None] + delta_k(grid.nu, wg.v_i, wg.v_p)[None, :]
    phi = phase_matching_phi(mismatch.ravel(), wg.g_profile).reshape(mismatch.shape)
    return 1j * complex(wg.gamma_delta) * beta * phi


def kappa_optimal(sigma: float) -> float:
    """Walk-off parameter maximizing low-gain JSA separability: 1.61 / (1.13 sigma)."""
    if sigma <= 0:
        raise ConfigurationError(f"sigma must be positive, got {sigma}")
    return 1.61 / (1.13 * sigma)
