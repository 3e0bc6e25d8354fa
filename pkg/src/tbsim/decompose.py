"""Joint Schmidt decomposition of the propagator and derived observables.

The SU(1,1) structure forces the four blocks of a dressed propagator to share
one set of squeezing parameters r_l and two orthonormal mode quadruples:

    U_ss       = sum_l cosh(r_l) rho_s  tau_s^dag
    U_si       = sum_l sinh(r_l) rho_s  tau_i^T
    (U_ii)^*   = sum_l cosh(r_l) rho_i^* tau_i^T
    (U_is)^*   = sum_l sinh(r_l) rho_i^* tau_s^dag

A single SVD of U_si fixes sinh(r_l), rho_s, and tau_i; tau_s and rho_i then
follow from the diagonal blocks, which makes the reconstruction of all four
blocks consistent by construction (including inside degenerate r clusters).
Mode functions are stored continuum normalized: dw * rho^dag rho = I.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DecompositionError
from .propagator import Propagator, check_su11

__all__ = [
    "TwinBeamDecomposition",
    "TwinBeamObservables",
    "schmidt_decompose",
    "moment_matrix",
    "jsa",
    "observables",
    "kernel_schmidt_number",
    "aligned_relative_l2",
]

#: modes with r below this fraction of the largest r count as unoccupied
OCCUPIED_FRACTION = 1e-12


@dataclass(frozen=True)
class TwinBeamDecomposition:
    """Squeezing parameters and the four Schmidt-mode matrices (columns = modes)."""

    r: np.ndarray
    rho_s: np.ndarray
    rho_i: np.ndarray
    tau_s: np.ndarray
    tau_i: np.ndarray
    delta_omega: float

    @property
    def n_occupied(self) -> int:
        if self.r.size == 0 or self.r[0] == 0.0:
            return 0
        return int(np.sum(self.r > OCCUPIED_FRACTION * self.r[0]))


@dataclass(frozen=True)
class TwinBeamObservables:
    """Joint spectral amplitude, moment matrix, photon numbers, Schmidt number."""

    J: np.ndarray
    M: np.ndarray
    mean_n_signal: float
    mean_n_idler: float
    schmidt_number: float
    is_vacuum: bool


def schmidt_decompose(prop: Propagator, su11_tol: float = 1e-8) -> TwinBeamDecomposition:
    """Extract the joint decomposition from a dressed propagator.

    Refuses propagators that fail the SU(1,1) check at ``su11_tol``, since the
    joint decomposability is exactly what that structure guarantees.  The
    tolerance is applied relative to max(1, |U|_max^2) because the membership
    identities have entries of that order, so their floating-point residual
    grows with gain even for exact group members.
    """
    scale = max(1.0, float(np.abs(prop.matrix).max()) ** 2)
    report = check_su11(prop, tol=su11_tol * scale)
    if not report.passed:
        raise DecompositionError(
            "propagator fails the SU(1,1) membership check "
            f"(max residual {report.max_residual:.3e} > tol {report.tol:.1e}); "
            "refusing to decompose"
        )
    a = prop.u_ss
    b = prop.u_si
    d = prop.u_ii_conj  # equals (U_ii)^*

    w, s, vh = np.linalg.svd(b)
    r = np.arcsinh(s)
    tau_i = vh.T  # from U_si = sum sinh(r) rho_s tau_i^T

    # Gauge fixing: one U(1) phase per mode pair. Rotate rho_s so that its
    # first significant component is real positive; tau_i co-rotates to keep
    # U_si invariant. tau_s and rho_i inherit their phases below.
    n = w.shape[0]
    for col in range(w.shape[1]):
        mags = np.abs(w[:, col])
        lead = int(np.argmax(mags > 1e-8 * mags.max())) if mags.max() > 0 else 0
        phase = np.exp(-1j * np.angle(w[lead, col]))
        w[:, col] *= phase
        tau_i[:, col] *= np.conj(phase)

    cosh_r = np.sqrt(1.0 + s**2)
    tau_s = (a.conj().T @ w) / cosh_r[None, :]
    rho_i = (np.conj(d) @ tau_i) / cosh_r[None, :]

    scale = 1.0 / np.sqrt(prop.delta_omega)
    return TwinBeamDecomposition(
        r=r,
        rho_s=w * scale,
        rho_i=rho_i * scale,
        tau_s=tau_s * scale,
        tau_i=tau_i * scale,
        delta_omega=prop.delta_omega,
    )


def moment_matrix(prop: Propagator) -> np.ndarray:
    """Covariance kernel <a_s(nu) a_i(nu')> assembled from the propagator blocks.

    Index convention follows the Schmidt form sum_l sinh(2 r_l)/2 rho_s rho_i^T;
    the equivalent block formula is the quadrature of U_ss against (U_is)^T.
    """
    u_is = np.conj(prop.u_is_conj)
    return (prop.u_ss @ u_is.T) / prop.delta_omega


def jsa(decomp: TwinBeamDecomposition) -> np.ndarray:
    """Joint spectral amplitude kernel J = sum_l r_l rho_s rho_i^T."""
    return (decomp.rho_s * decomp.r[None, :]) @ decomp.rho_i.T


def observables(decomp: TwinBeamDecomposition) -> TwinBeamObservables:
    """Photon numbers, Schmidt number, and the J and M kernels.

    The Schmidt number uses the modal photon-number weights sinh^2(r_l); the
    vacuum reports K = 1 by convention with an explicit flag.
    """
    lam = np.sinh(decomp.r) ** 2
    mean_n = float(np.sum(lam))
    is_vacuum = mean_n == 0.0
    if is_vacuum:
        schmidt_number = 1.0
    else:
        schmidt_number = float(np.sum(lam) ** 2 / np.sum(lam**2))
    m = (decomp.rho_s * (0.5 * np.sinh(2.0 * decomp.r))[None, :]) @ decomp.rho_i.T
    return TwinBeamObservables(
        J=jsa(decomp),
        M=m,
        mean_n_signal=mean_n,
        mean_n_idler=mean_n,
        schmidt_number=schmidt_number,
        is_vacuum=is_vacuum,
    )


def kernel_schmidt_number(kernel: np.ndarray) -> float:
    """Effective mode count (sum lambda)^2 / sum lambda^2 of a joint kernel."""
    s = np.linalg.svd(kernel, compute_uv=False)
    lam = s**2
    total = np.sum(lam)
    if total == 0.0:
        return 1.0
    return float(total**2 / np.sum(lam**2))


def aligned_relative_l2(kernel: np.ndarray, reference: np.ndarray) -> float:
    """L2 distance between unit-normalized kernels after removing a global phase."""
    a = kernel / np.linalg.norm(kernel)
    b = reference / np.linalg.norm(reference)
    phase = np.vdot(b, a)
    if phase != 0:
        a = a * (np.conj(phase) / np.abs(phase))
    return float(np.linalg.norm(a - b))
