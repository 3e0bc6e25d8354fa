"""Assembly of the discretized generator Q(z) and coupling-constant estimates.

The generator has the block form

    Q(z) = [[ G(z),        F(z)      ],
            [ -F(z)^dag,  -H(z)^dag  ]]

with G, H Hermitian (walk-off + XPM) and F complex symmetric (squeezing),
which guarantees Q S = S Q^dag for S = diag(I, -I).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.constants as const

from .exceptions import ConfigurationError
from .grid import FrequencyGrid
from .profiles import PiecewiseConstant
from .pump import PumpField

__all__ = [
    "WaveguideSpec",
    "GeneratorMatrices",
    "GeneratorSampler",
    "delta_k",
    "assemble_F",
    "assemble_G",
    "assemble_H",
    "assemble_Q",
    "su11_metric",
    "CouplingEstimate",
    "estimate_gamma",
]

_ALLOWED_G_VALUES = {-1.0, 0.0, 1.0}
_ALLOWED_H_VALUES = {0.0, 1.0}


@dataclass(frozen=True)
class WaveguideSpec:
    """Waveguide geometry, group velocities, and coupling-strength profiles."""

    v_s: float
    v_i: float
    v_p: float
    ell_min: float
    ell_max: float
    gamma_delta: complex
    g_profile: Optional[PiecewiseConstant] = None
    gamma_xpm_s: float = 0.0
    gamma_xpm_i: float = 0.0
    h_s_profile: Optional[PiecewiseConstant] = None
    h_i_profile: Optional[PiecewiseConstant] = None
    delta: int = 1
    carriers: Optional[dict] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("v_s", "v_i", "v_p"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ConfigurationError(f"{name} must be positive, got {v}")
        if not self.ell_min < self.ell_max:
            raise ConfigurationError(
                f"nonlinear region requires ell_min < ell_max, got [{self.ell_min}, {self.ell_max}]"
            )
        if self.delta not in (1, 2):
            raise ConfigurationError(f"delta must be 1 or 2, got {self.delta}")
        for name in ("gamma_xpm_s", "gamma_xpm_i"):
            g = getattr(self, name)
            if np.iscomplexobj(g) and np.imag(g) != 0:
                raise ConfigurationError(f"{name} must be real (Hermiticity of the XPM kernel)")
        if self.g_profile is None:
            object.__setattr__(
                self, "g_profile", PiecewiseConstant.top_hat(self.ell_min, self.ell_max, 1.0)
            )
        if self.h_s_profile is None:
            object.__setattr__(
                self, "h_s_profile", PiecewiseConstant.top_hat(self.ell_min, self.ell_max, 1.0)
            )
        if self.h_i_profile is None:
            object.__setattr__(
                self, "h_i_profile", PiecewiseConstant.top_hat(self.ell_min, self.ell_max, 1.0)
            )
        for v in self.g_profile.values:
            if complex(v).real not in _ALLOWED_G_VALUES or complex(v).imag != 0:
                raise ConfigurationError("g_profile values must lie in {-1, 0, +1}")
        for name, prof in (("h_s_profile", self.h_s_profile), ("h_i_profile", self.h_i_profile)):
            for v in prof.values:
                if complex(v).real not in _ALLOWED_H_VALUES or complex(v).imag != 0:
                    raise ConfigurationError(f"{name} values must lie in {{0, 1}}")

    @property
    def length(self) -> float:
        return self.ell_max - self.ell_min

    def breakpoints(self, zeta_profile: Optional[PiecewiseConstant] = None) -> np.ndarray:
        """z values where any coupling profile is discontinuous."""
        pts = set(self.g_profile.breakpoints)
        pts |= set(self.h_s_profile.breakpoints)
        pts |= set(self.h_i_profile.breakpoints)
        if zeta_profile is not None:
            pts |= set(zeta_profile.breakpoints)
        return np.array(sorted(pts))


def su11_metric(n: int) -> np.ndarray:
    """S = diag(I_n, -I_n)."""
    s = np.ones(2 * n)
    s[n:] = -1.0
    return np.diag(s)


def delta_k(nu, v_j: float, v_p: float):
    """Walk-off wavenumber mismatch (1/v_j - 1/v_p) * nu."""
    if v_j <= 0 or v_p <= 0:
        raise ConfigurationError("velocities must be positive")
    return (1.0 / v_j - 1.0 / v_p) * np.asarray(nu, dtype=float)


@dataclass(frozen=True)
class GeneratorMatrices:
    """F, G, H blocks of the generator at a single z."""

    F: np.ndarray
    G: np.ndarray
    H: np.ndarray

    @property
    def Q(self) -> np.ndarray:
        return np.block([[self.G, self.F], [-self.F.conj().T, -self.H.conj().T]])


def assemble_F(z: float, pump: PumpField, wg: WaveguideSpec, grid: FrequencyGrid) -> np.ndarray:
    """Squeezing block F_{nm} = gamma_delta g(z) / sqrt(2 pi) * beta_p(z, nu_n + nu_m) * dw."""
    n = grid.n_points
    g = float(np.real(wg.g_profile(z)))
    if g == 0.0 or pump.spec.n_photons == 0:
        return np.zeros((n, n), dtype=complex)
    beta = pump.beta_p(z, grid.sum_values())
    pref = complex(wg.gamma_delta) * g / np.sqrt(2.0 * np.pi) * grid.delta_omega
    return pref * beta[grid.sum_index()]


def _xpm_block(z, pump, grid, gamma_xpm, h_profile, conjugate):
    n = grid.n_points
    h = float(np.real(h_profile(z)))
    if gamma_xpm == 0.0 or h == 0.0 or pump.spec.n_photons == 0:
        return np.zeros((n, n), dtype=complex)
    e = pump.energy_spectrum(grid.diff_values())
    if conjugate:
        e = np.conj(e)
    pref = float(np.real(gamma_xpm)) * h / (2.0 * np.pi) * grid.delta_omega
    return pref * e[grid.diff_index()]


def assemble_G(z: float, pump: PumpField, wg: WaveguideSpec, grid: FrequencyGrid) -> np.ndarray:
    """Signal block: walk-off diagonal plus the XPM kernel in the pump energy spectrum."""
    block = _xpm_block(z, pump, grid, wg.gamma_xpm_s, wg.h_s_profile, conjugate=False)
    block[np.diag_indices_from(block)] += delta_k(grid.nu, wg.v_s, wg.v_p)
    return block


def assemble_H(z: float, pump: PumpField, wg: WaveguideSpec, grid: FrequencyGrid) -> np.ndarray:
    """Idler block; uses the conjugate energy-spectrum kernel."""
    block = _xpm_block(z, pump, grid, wg.gamma_xpm_i, wg.h_i_profile, conjugate=True)
    block[np.diag_indices_from(block)] += delta_k(grid.nu, wg.v_i, wg.v_p)
    return block


def assemble_Q(z: float, pump: PumpField, wg: WaveguideSpec, grid: FrequencyGrid) -> GeneratorMatrices:
    return GeneratorMatrices(
        F=assemble_F(z, pump, wg, grid),
        G=assemble_G(z, pump, wg, grid),
        H=assemble_H(z, pump, wg, grid),
    )


class GeneratorSampler:
    """Caching evaluator of Q(z) for a fixed pump/waveguide/grid triple.

    The energy-spectrum kernel is always z independent and cached; the
    squeezing kernel is cached too unless SPM makes beta_p z dependent.
    Evaluations for different z are independent and thread-safe after the
    first call.
    """

    def __init__(self, pump: PumpField, wg: WaveguideSpec, grid: FrequencyGrid):
        if pump.spec.delta != wg.delta:
            raise ConfigurationError("pump and waveguide disagree on the process order delta")
        self.pump = pump
        self.wg = wg
        self.grid = grid
        self._sum_index = grid.sum_index()
        self._diff_index = grid.diff_index()
        self._dk_s = delta_k(grid.nu, wg.v_s, wg.v_p)
        self._dk_i = delta_k(grid.nu, wg.v_i, wg.v_p)
        dw = grid.delta_omega
        n = grid.n_points
        if (wg.gamma_xpm_s != 0.0 or wg.gamma_xpm_i != 0.0) and pump.spec.n_photons > 0:
            e = pump.energy_spectrum(grid.diff_values())
            self._xpm_s = float(np.real(wg.gamma_xpm_s)) / (2 * np.pi) * dw * e[self._diff_index]
            self._xpm_i = (
                float(np.real(wg.gamma_xpm_i)) / (2 * np.pi) * dw * np.conj(e)[self._diff_index]
            )
        else:
            self._xpm_s = np.zeros((n, n), dtype=complex)
            self._xpm_i = np.zeros((n, n), dtype=complex)
        self._beta_static = None
        if not pump.has_spm and pump.spec.n_photons > 0:
            self._beta_static = pump.beta_p(0.0, grid.sum_values())

    @property
    def breakpoints(self) -> np.ndarray:
        return self.wg.breakpoints(self.pump.spec.zeta_p_profile)

    def _beta_sums(self, z: float) -> np.ndarray:
        if self._beta_static is not None:
            return self._beta_static
        return self.pump.beta_p(z, self.grid.sum_values())

    def matrices(self, z: float) -> GeneratorMatrices:
        grid, wg = self.grid, self.wg
        n = grid.n_points
        g = float(np.real(wg.g_profile(z)))
        if g != 0.0 and self.pump.spec.n_photons > 0:
            pref = complex(wg.gamma_delta) * g / np.sqrt(2.0 * np.pi) * grid.delta_omega
            F = pref * self._beta_sums(z)[self._sum_index]
        else:
            F = np.zeros((n, n), dtype=complex)
        G = float(np.real(wg.h_s_profile(z))) * self._xpm_s.copy()
        G[np.diag_indices(n)] += self._dk_s
        H = float(np.real(wg.h_i_profile(z))) * self._xpm_i.copy()
        H[np.diag_indices(n)] += self._dk_i
        return GeneratorMatrices(F=F, G=G, H=H)

    def q(self, z: float) -> np.ndarray:
        return self.matrices(z).Q


@dataclass(frozen=True)
class CouplingEstimate:
    """Order-of-magnitude coupling constants from the flat-mode effective-area model."""

    delta: int
    xi: float
    zeta_p: float
    zeta_s: float
    zeta_i: float
    gamma_delta: float
    gamma_xpm_s: float
    gamma_xpm_i: float

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "xi": self.xi,
            "zeta_p": self.zeta_p,
            "zeta_s": self.zeta_s,
            "zeta_i": self.zeta_i,
            "gamma_delta": self.gamma_delta,
            "gamma_xpm_s": self.gamma_xpm_s,
            "gamma_xpm_i": self.gamma_xpm_i,
        }


def estimate_gamma(
    effective_area: float,
    refractive_index: float,
    group_velocity: float,
    phase_velocity: float,
    omega_s: float,
    omega_i: float,
    omega_p: float,
    chi2: Optional[float] = None,
    chi3: Optional[float] = None,
    v_s: Optional[float] = None,
    v_i: Optional[float] = None,
    v_p: Optional[float] = None,
) -> CouplingEstimate:
    """Estimate coupling constants assuming flat transverse modes over one area.

    This is the rough effective-area overlap estimate, not a mode-solver
    result: every mode field is taken constant over ``effective_area`` with
    magnitude sqrt(eps0 n^2 v_g / (v_ph A)).  Exactly one of ``chi2``
    (SPDC, delta=1) or ``chi3`` (SFWM/XPM, delta=2) selects the process.
    """
    inputs = {
        "effective_area": effective_area,
        "refractive_index": refractive_index,
        "group_velocity": group_velocity,
        "phase_velocity": phase_velocity,
        "omega_s": omega_s,
        "omega_i": omega_i,
        "omega_p": omega_p,
    }
    for name, value in inputs.items():
        if not np.isfinite(value) or value <= 0:
            raise ConfigurationError(f"{name} must be positive, got {value}")
    if (chi2 is None) == (chi3 is None):
        raise ConfigurationError("provide exactly one of chi2 (SPDC) or chi3 (SFWM)")
    v_s = group_velocity if v_s is None else v_s
    v_i = group_velocity if v_i is None else v_i
    v_p = group_velocity if v_p is None else v_p

    eps0, hbar = const.epsilon_0, const.hbar
    a = effective_area
    n = refractive_index
    d_mag = np.sqrt(eps0 * n**2 * group_velocity / (phase_velocity * a))

    hwp = hbar * omega_p
    if chi2 is not None:
        delta = 1
        gamma2 = chi2 / (eps0 * n**6)
        xi = (2.0 / (eps0 * hbar)) * np.sqrt(hbar**3 * omega_s * omega_i * omega_p / 8.0)
        xi *= gamma2 * a * d_mag**3
        zeta_p = zeta_s = zeta_i = 0.0
    else:
        delta = 2
        gamma3 = chi3 / (eps0**2 * n**8)
        overlap = gamma3 * a * d_mag**4
        xi = (3.0 / (eps0 * hbar)) * (hbar * np.sqrt(omega_s * omega_i) / 2.0) * (hwp / 2.0) * overlap
        zeta_p = (3.0 / (eps0 * hbar)) * (hwp / 2.0) ** 2 * overlap
        zeta_s = 2.0 * (3.0 / (eps0 * hbar)) * (hbar * omega_s / 2.0) * (hwp / 2.0) * overlap
        zeta_i = 2.0 * (3.0 / (eps0 * hbar)) * (hbar * omega_i / 2.0) * (hwp / 2.0) * overlap

    gamma_delta = xi / np.sqrt(v_p * v_s * v_i * hwp**delta)
    return CouplingEstimate(
        delta=delta,
        xi=float(xi),
        zeta_p=float(zeta_p),
        zeta_s=float(zeta_s),
        zeta_i=float(zeta_i),
        gamma_delta=float(gamma_delta),
        gamma_xpm_s=float(zeta_s / (v_p * v_s * hwp)),
        gamma_xpm_i=float(zeta_i / (v_p * v_i * hwp)),
    )
