"""Piecewise-constant longitudinal profiles.

Used for the nonlinearity sign/poling profile g(z), the XPM window profiles
h_j(z), and the pump SPM strength zeta_p(z).  A profile is zero outside its
declared segments, which matches top-hat and periodically-poled media exactly
and keeps the generator piecewise-smooth for the product-formula integrator.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .exceptions import ConfigurationError

__all__ = ["PiecewiseConstant"]


class PiecewiseConstant:
    """Piecewise-constant function of z given as (z_start, z_end, value) segments."""

    def __init__(self, segments: Iterable[Sequence[float]] = ()):
        segs = []
        for seg in segments:
            if len(seg) != 3:
                raise ConfigurationError(f"segment must be (z_start, z_end, value), got {seg!r}")
            a, b, v = float(seg[0]), float(seg[1]), complex(seg[2])
            if v.imag == 0:
                v = v.real
            if not (np.isfinite(a) and np.isfinite(b)) or b <= a:
                raise ConfigurationError(f"segment bounds must satisfy z_start < z_end, got {seg!r}")
            segs.append((a, b, v))
        segs.sort(key=lambda s: s[0])
        for (a0, b0, _), (a1, _, _) in zip(segs, segs[1:]):
            if a1 < b0 - 1e-15 * max(abs(a1), abs(b0), 1.0):
                raise ConfigurationError("profile segments overlap")
        self.segments = tuple(segs)

    @classmethod
    def top_hat(cls, z_start: float, z_end: float, value: float = 1.0) -> "PiecewiseConstant":
        return cls([(z_start, z_end, value)])

    def __eq__(self, other):
        if not isinstance(other, PiecewiseConstant):
            return NotImplemented
        return self.segments == other.segments

    def __hash__(self):
        return hash(self.segments)

    def __repr__(self):
        return f"PiecewiseConstant({list(self.segments)!r})"

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for _, _, v in self.segments)

    @property
    def values(self) -> tuple:
        return tuple(v for _, _, v in self.segments)

    @property
    def breakpoints(self) -> np.ndarray:
        pts = set()
        for a, b, _ in self.segments:
            pts.add(a)
            pts.add(b)
        return np.array(sorted(pts))

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        out = np.zeros(z.shape, dtype=complex if self._complex else float)
        for a, b, v in self.segments:
            out = np.where((z >= a) & (z < b), v, out)
        if out.ndim == 0:
            return out[()]
        return out

    @property
    def _complex(self) -> bool:
        return any(isinstance(v, complex) for _, _, v in self.segments)

    def antiderivative(self, z):
        """Integral of the profile from -inf (equivalently the leftmost segment) to z."""
        z = np.asarray(z, dtype=float)
        out = np.zeros(z.shape, dtype=complex if self._complex else float)
        for a, b, v in self.segments:
            out = out + v * (np.clip(z, a, b) - a)
        if out.ndim == 0:
            return out[()]
        return out

    def integral(self, z_from: float, z_to: float):
        """Signed path integral of the profile from z_from to z_to."""
        return self.antiderivative(z_to) - self.antiderivative(z_from)
