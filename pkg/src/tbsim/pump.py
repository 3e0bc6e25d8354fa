"""Classical undepleted pump model.

The pump enters the twin-beam dynamics only through two Fourier-domain
kernels sampled at frequency detunings:

* ``beta_p(z, nu)`` -- the moving-frame pump spectral amplitude driving the
  squeezing kernel; acquires z dependence only through self-phase modulation.
* ``energy_spectrum(nu)`` -- the Fourier transform of the pump energy
  distribution, driving cross-phase modulation; always z independent.

Internally we default to dimensionless units (v_p = 1, sigma = 1,
hbar*omega_p = 1); physical inputs are converted at the configuration
boundary and the conversion recorded in run metadata.  The reference time
t0 enters only as a global linear phase and is 0 by default.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigurationError, SolverError
from .profiles import PiecewiseConstant

__all__ = ["PumpSpec", "PumpField", "gaussian_envelope", "spm_phase"]

#: default envelope sampling: 2048 points over +/- 8 pulse widths keeps the
#: Gaussian truncation error below 1e-8
DEFAULT_ENVELOPE_POINTS = 2048
DEFAULT_WIDTH_FACTOR = 8.0
MIN_COVERAGE_WIDTHS = 5.0


@dataclass(frozen=True)
class PumpSpec:
    """Parameters of the classical pump pulse.

    ``delta`` selects the process order: 1 for SPDC, 2 for SFWM.
    ``zeta_p_profile`` is the SPM strength along z (zero profile = no SPM).
    """

    n_photons: float
    sigma: float
    z0: float = 0.0
    t0: float = 0.0
    v_p: float = 1.0
    delta: int = 1
    zeta_p_profile: PiecewiseConstant = field(default_factory=PiecewiseConstant)
    hbar_omega_p: float = 1.0

    def __post_init__(self):
        for name in ("n_photons", "sigma", "z0", "t0", "v_p", "hbar_omega_p"):
            if not np.isfinite(getattr(self, name)):
                raise ConfigurationError(f"pump parameter {name} must be finite")
        if self.n_photons < 0:
            raise ConfigurationError(f"n_photons must be >= 0, got {self.n_photons}")
        if self.sigma <= 0:
            raise ConfigurationError(f"sigma must be positive, got {self.sigma}")
        if self.v_p <= 0:
            raise ConfigurationError(f"v_p must be positive, got {self.v_p}")
        if self.delta not in (1, 2):
            raise ConfigurationError(f"delta must be 1 (SPDC) or 2 (SFWM), got {self.delta}")
        if self.hbar_omega_p <= 0:
            raise ConfigurationError("hbar_omega_p must be positive")

    @property
    def pulse_width(self) -> float:
        """Spatial RMS width of the envelope, v_p / sigma."""
        return self.v_p / self.sigma


def gaussian_envelope(spec: PumpSpec, z_grid: np.ndarray) -> np.ndarray:
    """Sample the normalized Gaussian envelope on ``z_grid``.

    The envelope integrates to ``n_photons`` in |.|^2; a grid narrower than
    +/- 5 pulse widths around the center triggers a truncation warning.
    """
    z_grid = np.asarray(z_grid, dtype=float)
    w = spec.pulse_width
    coverage = min(spec.z0 - z_grid[0], z_grid[-1] - spec.z0)
    if coverage < MIN_COVERAGE_WIDTHS * w:
        warnings.warn(
            f"envelope grid covers only {coverage / w:.2f} pulse widths around z0; "
            "the photon-number normalization may be truncated",
            stacklevel=2,
        )
    amp = np.sqrt(spec.n_photons) * (np.pi * w**2) ** (-0.25)
    return amp * np.exp(-((z_grid - spec.z0) ** 2) / (2.0 * w**2))


def spm_phase(field: "PumpField", z: float, z_prime) -> np.ndarray:
    """Nonlinear phase accumulated between z' and z.

    |Lambda(z')|^2 times the path integral of zeta_p / v_p; identically zero
    when the SPM profile vanishes.
    """
    return field.spm_phase(z, z_prime)


class PumpField:
    """Sampled pump envelope plus its derived spectral kernels.

    Immutable once built; the sampling methods are read-only and thread-safe.
    """

    def __init__(self, spec: PumpSpec, z_grid: np.ndarray, envelope: np.ndarray):
        z_grid = np.asarray(z_grid, dtype=float)
        envelope = np.asarray(envelope, dtype=complex)
        if z_grid.ndim != 1 or z_grid.size < 2:
            raise ConfigurationError("envelope z grid must be a 1-d array with >= 2 points")
        if envelope.shape != z_grid.shape:
            raise ConfigurationError("envelope samples must match the z grid")
        if not np.all(np.isfinite(z_grid)) or not np.all(np.isfinite(envelope)):
            raise ConfigurationError("envelope contains non-finite values")
        self.spec = spec
        self.z_grid = z_grid
        self.envelope = envelope
        self._abs2 = np.abs(envelope) ** 2
        self.metadata: dict = {
            "envelope_points": int(z_grid.size),
            "envelope_range": [float(z_grid[0]), float(z_grid[-1])],
        }

    @classmethod
    def gaussian(
        cls,
        spec: PumpSpec,
        n_points: int = DEFAULT_ENVELOPE_POINTS,
        width_factor: float = DEFAULT_WIDTH_FACTOR,
    ) -> "PumpField":
        w = spec.pulse_width
        z_grid = np.linspace(spec.z0 - width_factor * w, spec.z0 + width_factor * w, n_points)
        return cls(spec, z_grid, gaussian_envelope(spec, z_grid))

    @classmethod
    def from_samples(cls, spec: PumpSpec, z_grid, envelope) -> "PumpField":
        """Wrap a user-supplied sampled envelope (no shape assumption)."""
        return cls(spec, z_grid, envelope)

    @property
    def has_spm(self) -> bool:
        return not self.spec.zeta_p_profile.is_zero and self.spec.n_photons > 0

    @property
    def n_photons_quadrature(self) -> float:
        """Trapezoid estimate of the envelope photon number."""
        return float(np.trapezoid(self._abs2, self.z_grid))

    @property
    def pulse_energy(self) -> float:
        """E_p = hbar*omega_p * N_p."""
        return self.spec.hbar_omega_p * self.spec.n_photons

    def spm_phase(self, z: float, z_prime):
        zp = np.asarray(z_prime, dtype=float)
        profile = self.spec.zeta_p_profile
        if profile.is_zero:
            theta = np.zeros(zp.shape)
            return theta[()] if theta.ndim == 0 else theta
        abs2 = np.interp(zp, self.z_grid, self._abs2, left=0.0, right=0.0)
        path = (profile.antiderivative(z) - profile.antiderivative(zp)) / self.spec.v_p
        return abs2 * np.real(path)

    def beta_p(self, z: float, nu) -> np.ndarray:
        """Moving-frame pump spectral amplitude at position z, detuning(s) nu.

        nu is measured from delta * omega_p.  Computed by trapezoid quadrature
        over the envelope support, which stays correct when SPM makes the
        integrand z dependent.
        """
        spec = self.spec
        nu = np.atleast_1d(np.asarray(nu, dtype=float))
        if spec.n_photons == 0:
            return np.zeros(nu.shape, dtype=complex)
        integrand = self.envelope**spec.delta
        if self.has_spm:
            theta = self.spm_phase(z, self.z_grid)
            integrand = integrand * np.exp(1j * spec.delta * theta)
        phases = np.exp(-1j * np.outer(nu, self.z_grid) / spec.v_p)
        result = np.trapezoid(phases * integrand[None, :], self.z_grid, axis=1)
        prefactor = (
            np.exp(1j * nu * spec.t0)
            * spec.hbar_omega_p ** (spec.delta / 2.0)
            / np.sqrt(2.0 * np.pi * spec.v_p)
        )
        return prefactor * result

    def energy_spectrum(self, nu) -> np.ndarray:
        """Fourier transform of the pump energy distribution (z independent)."""
        spec = self.spec
        nu = np.atleast_1d(np.asarray(nu, dtype=float))
        if spec.n_photons == 0:
            return np.zeros(nu.shape, dtype=complex)
        phases = np.exp(-1j * np.outer(nu, self.z_grid) / spec.v_p)
        result = np.trapezoid(phases * self._abs2[None, :], self.z_grid, axis=1)
        return np.exp(1j * nu * spec.t0) * spec.hbar_omega_p * result

    def require_envelope(self):
        if self.envelope is None:
            raise SolverError("pump envelope has not been computed")
