"""Shared frequency discretization for the signal and idler beams.

All frequencies are detunings from the per-beam carrier, so the signal and
idler share a single uniform grid and absolute carriers never enter the
numerics.  Matrix blocks and continuous-frequency kernels are related by a
single factor of the grid spacing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigurationError

__all__ = ["FrequencyGrid", "make_grid", "matrix_to_transfer", "transfer_to_matrix"]


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform, symmetric detuning grid of ``n_points`` nodes over ``[-span, span]``.

    Immutable; safe to share between threads.
    """

    n_points: int
    span: float
    nu: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_points < 2:
            raise ConfigurationError(f"n_points must be >= 2, got {self.n_points}")
        if not np.isfinite(self.span) or self.span <= 0:
            raise ConfigurationError(f"span must be positive, got {self.span}")
        # nu[n] = delta_omega * (n - (N-1)/2) makes nu[n] == -nu[N-1-n] exact.
        offsets = np.arange(self.n_points) - (self.n_points - 1) / 2.0
        nu = self.delta_omega * offsets
        nu.setflags(write=False)
        object.__setattr__(self, "nu", nu)

    @property
    def delta_omega(self) -> float:
        return 2.0 * self.span / (self.n_points - 1)

    def sum_values(self) -> np.ndarray:
        """All 2N-1 distinct values taken by nu[n] + nu[m]."""
        n = self.n_points
        return self.delta_omega * (np.arange(2 * n - 1) - (n - 1))

    def sum_index(self) -> np.ndarray:
        """(n, m) -> index into :meth:`sum_values` such that nu[n]+nu[m] matches."""
        idx = np.arange(self.n_points)
        return idx[:, None] + idx[None, :]

    def diff_values(self) -> np.ndarray:
        """All 2N-1 distinct values taken by nu[n] - nu[m]."""
        return self.sum_values()

    def diff_index(self) -> np.ndarray:
        idx = np.arange(self.n_points)
        return idx[:, None] - idx[None, :] + (self.n_points - 1)


def make_grid(span: float, n_points: int) -> FrequencyGrid:
    """Build a :class:`FrequencyGrid` with detuning half-width ``span``."""
    return FrequencyGrid(n_points=int(n_points), span=float(span))


def matrix_to_transfer(block: np.ndarray, grid: FrequencyGrid) -> np.ndarray:
    """Convert an NxN matrix block to continuous-kernel values at the grid nodes.

    The kernel value at (nu_n, nu_m) is block[n, m] / delta_omega.
    """
    block = np.asarray(block)
    if block.shape != (grid.n_points, grid.n_points):
        raise ConfigurationError(
            f"block shape {block.shape} does not match grid with N={grid.n_points}"
        )
    return block / grid.delta_omega


def transfer_to_matrix(kernel: np.ndarray, grid: FrequencyGrid) -> np.ndarray:
    """Inverse of :func:`matrix_to_transfer`."""
    kernel = np.asarray(kernel)
    if kernel.shape != (grid.n_points, grid.n_points):
        raise ConfigurationError(
            f"kernel shape {kernel.shape} does not match grid with N={grid.n_points}"
        )
    return kernel * grid.delta_omega
