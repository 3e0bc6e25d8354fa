"""Spatial propagator: matrix exponential, product formula, dressing, SU(1,1) checks.

The 2Nx2N propagator U acts on the stacked (signal, idler-dagger) vector and
carries the block layout

    U = [[ U_ss,        U_si       ],
         [ (U_is)^*,   (U_ii)^*   ]].

Membership in SU(1,1), U S U^dag = S with S = diag(I, -I), encodes the
bosonic commutation relations and is verified rather than assumed.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

import numpy as np
from scipy.linalg import expm

from .coupling import GeneratorMatrices, WaveguideSpec, delta_k, su11_metric
from .exceptions import ConfigurationError, SolverError
from .grid import FrequencyGrid

__all__ = [
    "Propagator",
    "propagate_uniform",
    "propagate_trotter",
    "propagate_adaptive",
    "dress_in_out",
    "check_su11",
    "Su11Report",
    "write_matrix_dump",
    "read_matrix_dump",
]

ADAPTIVE_TOL = 1e-8
ADAPTIVE_MAX_STEPS = 4096


@dataclass(frozen=True)
class Propagator:
    """2Nx2N transfer matrix over [z0, z1] with named block views."""

    matrix: np.ndarray
    delta_omega: float
    z0: float
    z1: float
    dressed: bool = False

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 != 0:
            raise ConfigurationError(f"propagator matrix must be 2Nx2N, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise SolverError("propagator contains non-finite entries")

    @property
    def n(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def u_ss(self) -> np.ndarray:
        return self.matrix[: self.n, : self.n]

    @property
    def u_si(self) -> np.ndarray:
        return self.matrix[: self.n, self.n :]

    @property
    def u_is_conj(self) -> np.ndarray:
        """Bottom-left block, equal to (U_is)^*."""
        return self.matrix[self.n :, : self.n]

    @property
    def u_ii_conj(self) -> np.ndarray:
        """Bottom-right block, equal to (U_ii)^*."""
        return self.matrix[self.n :, self.n :]


def _as_q(gen: Union[GeneratorMatrices, np.ndarray]) -> np.ndarray:
    q = gen.Q if isinstance(gen, GeneratorMatrices) else np.asarray(gen, dtype=complex)
    if not np.all(np.isfinite(q)):
        raise SolverError("generator contains non-finite entries")
    return q


def propagate_uniform(
    gen: Union[GeneratorMatrices, np.ndarray],
    length: float,
    delta_omega: float,
    z0: Optional[float] = None,
) -> Propagator:
    """Single-exponential propagator U = exp(i * length * Q) for z-independent Q."""
    if length < 0:
        raise ConfigurationError(f"length must be >= 0, got {length}")
    q = _as_q(gen)
    z0 = -length / 2.0 if z0 is None else z0
    u = expm(1j * length * q)
    return Propagator(matrix=u, delta_omega=delta_omega, z0=z0, z1=z0 + length)


def _slice_edges(z0: float, z1: float, n_steps: int, breakpoints: Iterable[float]) -> np.ndarray:
    """Uniform partition refined so that every profile discontinuity is an edge."""
    edges = set(np.linspace(z0, z1, n_steps + 1))
    for b in breakpoints:
        if z0 < b < z1:
            edges.add(float(b))
    return np.array(sorted(edges))


def propagate_trotter(
    q_of_z: Callable[[float], np.ndarray],
    z0: float,
    z1: float,
    n_steps: int,
    delta_omega: float,
    breakpoints: Iterable[float] = (),
) -> Propagator:
    """Midpoint product formula: U = prod_p exp(i dz_p Q(mid_p)), increasing z.

    Midpoint sampling gives second-order accuracy in the slice width; slice
    edges are snapped to profile discontinuities so every slice sees smooth Q.
    """
    if n_steps < 1:
        raise ConfigurationError(f"n_steps must be >= 1, got {n_steps}")
    if not z1 > z0:
        raise ConfigurationError("propagation requires z1 > z0")
    edges = _slice_edges(z0, z1, n_steps, breakpoints)
    u = None
    for a, b in zip(edges[:-1], edges[1:]):
        step = expm(1j * (b - a) * _as_q(q_of_z(0.5 * (a + b))))
        u = step if u is None else step @ u
    return Propagator(matrix=u, delta_omega=delta_omega, z0=z0, z1=z1)


def propagate_adaptive(
    q_of_z: Callable[[float], np.ndarray],
    z0: float,
    z1: float,
    delta_omega: float,
    breakpoints: Iterable[float] = (),
    tol: float = ADAPTIVE_TOL,
    max_steps: int = ADAPTIVE_MAX_STEPS,
    start_steps: int = 16,
) -> Propagator:
    """Double the slice count until the propagator changes by less than ``tol``."""
    n = start_steps
    prev = propagate_trotter(q_of_z, z0, z1, n, delta_omega, breakpoints)
    while n < max_steps:
        n *= 2
        cur = propagate_trotter(q_of_z, z0, z1, n, delta_omega, breakpoints)
        if np.max(np.abs(cur.matrix - prev.matrix)) < tol:
            return cur
        prev = cur
    return prev


def dress_in_out(prop: Propagator, wg: WaveguideSpec, grid: FrequencyGrid) -> Propagator:
    """Strip the free walk-off phases, yielding input/output transfer functions.

    Multiplies U by the diagonal phase matrices exp(-i z1 K) and exp(+i z0 K)
    with K = diag(dk_s(nu), -dk_i(nu)); this commutes with S, so the SU(1,1)
    residual is unchanged.
    """
    if prop.dressed:
        raise ConfigurationError("propagator is already dressed")
    if grid.n_points != prop.n:
        raise ConfigurationError("grid size does not match propagator blocks")
    k = np.concatenate([delta_k(grid.nu, wg.v_s, wg.v_p), -delta_k(grid.nu, wg.v_i, wg.v_p)])
    left = np.exp(-1j * prop.z1 * k)
    right = np.exp(1j * prop.z0 * k)
    dressed = left[:, None] * prop.matrix * right[None, :]
    return Propagator(
        matrix=dressed, delta_omega=prop.delta_omega, z0=prop.z0, z1=prop.z1, dressed=True
    )


@dataclass(frozen=True)
class Su11Report:
    """Max-norm residuals of the SU(1,1) membership conditions."""

    metric_residual: float
    commutator_ss: float
    commutator_ii: float
    commutator_si: float
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.metric_residual, self.commutator_ss, self.commutator_ii, self.commutator_si)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol

    def as_dict(self) -> dict:
        return {
            "metric_residual": self.metric_residual,
            "commutator_ss": self.commutator_ss,
            "commutator_ii": self.commutator_ii,
            "commutator_si": self.commutator_si,
            "tol": self.tol,
            "passed": self.passed,
        }


def check_su11(prop: Propagator, tol: float = 1e-10) -> Su11Report:
    """Residuals of U S U^dag = S and the three discretized commutator identities."""
    u = prop.matrix
    n = prop.n
    s = su11_metric(n)
    metric = np.max(np.abs(u @ s @ u.conj().T - s))
    eye = np.eye(n)
    a, b = prop.u_ss, prop.u_si
    c, d = prop.u_is_conj, prop.u_ii_conj
    u_is, u_ii = np.conj(c), np.conj(d)
    r_ss = np.max(np.abs(a @ a.conj().T - b @ b.conj().T - eye))
    r_ii = np.max(np.abs(u_ii @ u_ii.conj().T - u_is @ u_is.conj().T - eye))
    r_si = np.max(np.abs(a @ u_is.T - b @ u_ii.T))
    return Su11Report(
        metric_residual=float(metric),
        commutator_ss=float(r_ss),
        commutator_ii=float(r_ii),
        commutator_si=float(r_si),
        tol=tol,
    )


# --- binary matrix dump ("TBSM" format) ------------------------------------
#
# little-endian: magic "TBSM", u32 version, u32 rows, u32 cols, then the
# row-major float64 (re, im) pairs.

_TBSM_MAGIC = b"TBSM"
_TBSM_VERSION = 1


def write_matrix_dump(path, matrix: np.ndarray) -> None:
    m = np.ascontiguousarray(np.asarray(matrix, dtype=complex))
    if m.ndim != 2:
        raise ConfigurationError("matrix dump requires a 2-d array")
    interleaved = np.empty((m.shape[0], 2 * m.shape[1]), dtype="<f8")
    interleaved[:, 0::2] = m.real
    interleaved[:, 1::2] = m.imag
    with open(path, "wb") as fh:
        fh.write(_TBSM_MAGIC)
        fh.write(struct.pack("<III", _TBSM_VERSION, m.shape[0], m.shape[1]))
        fh.write(interleaved.tobytes())


def read_matrix_dump(path) -> np.ndarray:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _TBSM_MAGIC:
            raise ConfigurationError(f"not a TBSM matrix dump: bad magic {magic!r}")
        version, rows, cols = struct.unpack("<III", fh.read(12))
        if version != _TBSM_VERSION:
            raise ConfigurationError(f"unsupported TBSM version {version}")
        data = np.frombuffer(fh.read(rows * cols * 16), dtype="<f8")
    if data.size != 2 * rows * cols:
        raise ConfigurationError("truncated TBSM matrix dump")
    data = data.reshape(rows, 2 * cols)
    return (data[:, 0::2] + 1j * data[:, 1::2]).astype(complex)
