"""Classical massless field on the line evolved with d'Alembert's formula.

The amplitude at ``(t, x)`` integrates the initial momentum over the whole
interval ``[x - t, x + t]``, while the energy density reads the initial data
only at the two endpoints ``x +- t``.  Everything here is linear in the
initial data, so the same identities hold for the field operator.
"""

from dataclasses import dataclass

import numpy as np


class DomainError(ValueError):
    """Evaluation point outside the padded grid."""


# Catmull-Rom weights for the four nodes i-1, i, i+1, i+2 at fraction s in [0, 1)
def _cr_weights(s):
    s2, s3 = s * s, s * s * s
    return (
        0.5 * (-s3 + 2 * s2 - s),
        0.5 * (3 * s3 - 5 * s2 + 2),
        0.5 * (-3 * s3 + 4 * s2 + s),
        0.5 * (s3 - s2),
    )


# Integral of the Catmull-Rom weights from 0 to s
def _cr_weight_integrals(s):
    s2, s3, s4 = s * s, s**3, s**4
    return (
        0.5 * (-s4 / 4 + 2 * s3 / 3 - s2 / 2),
        0.5 * (3 * s4 / 4 - 5 * s3 / 3 + 2 * s),
        0.5 * (-3 * s4 / 4 + 4 * s3 / 3 + s2 / 2),
        0.5 * (s4 / 4 - s3 / 3),
    )


_GHOST = 2


@dataclass(frozen=True, eq=False)
class InitialData:
    """Field amplitude and momentum sampled on a uniform grid at ``t = 0``.

    Samples cover ``x0, x0 + dx, ..., x0 + (n - 1) dx``; the data is zero
    outside this window.  Evaluation is allowed up to ``pad`` cells beyond
    either end.  Between samples the data is the Catmull-Rom cubic, which only
    reads the four nearest samples.
    """

    phi0: np.ndarray
    pi0: np.ndarray
    dx: float
    x0: float = 0.0
    pad: int = 0

    def __post_init__(self):
        phi = np.array(self.phi0, dtype=float)
        pi = np.array(self.pi0, dtype=float)
        if phi.ndim != 1 or phi.shape != pi.shape or phi.size < 2:
            raise ValueError("phi0 and pi0 must be 1-D arrays of equal length >= 2")
        if not np.all(np.isfinite(phi)) or not np.all(np.isfinite(pi)):
            raise ValueError("initial data must be finite")
        if not self.dx > 0:
            raise ValueError("grid spacing must be positive")
        if self.pad < 0:
            raise ValueError("pad must be non-negative")
        for name, arr in (("phi0", phi), ("pi0", pi)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        width = int(self.pad) + _GHOST
        object.__setattr__(self, "_phi", np.pad(phi, width))
        object.__setattr__(self, "_pi", np.pad(pi, width))
        object.__setattr__(self, "_origin", self.x0 - width * self.dx)
        # cumulative integral of the pi interpolant at every padded node
        p = np.pad(self._pi, 1)
        cell = self.dx * (0.5 * (p[1:-2] + p[2:-1]) + (-p[:-3] + p[1:-2] + p[2:-1] - p[3:]) / 24.0)
        object.__setattr__(self, "_cum", np.concatenate([[0.0], np.cumsum(cell)]))

    @classmethod
    def from_functions(cls, phi, pi, x_min, x_max, dx, pad=0):
        n = int(round((x_max - x_min) / dx)) + 1
        x = x_min + dx * np.arange(n)
        return cls(phi(x), pi(x), dx, x_min, pad)

    @property
    def grid(self):
        return self.x0 + self.dx * np.arange(self.phi0.size)

    @property
    def domain(self):
        lo = self.x0 - self.pad * self.dx
        hi = self.x0 + (self.phi0.size - 1 + self.pad) * self.dx
        return lo, hi

    def _locate(self, y, slack=0.0):
        y = np.asarray(y, dtype=float)
        lo, hi = self.domain
        tol = 1e-9 * self.dx + slack
        if np.any(~np.isfinite(y)) or np.any(y < lo - tol) or np.any(y > hi + tol):
            raise DomainError(f"evaluation outside the padded domain [{lo:g}, {hi:g}]")
        u = (y - self._origin) / self.dx
        i = np.clip(np.floor(u).astype(int), 1, self._phi.size - 3)
        return i, u - i

    def _interp(self, arr, y, slack=0.0):
        i, s = self._locate(y, slack)
        w = _cr_weights(s)
        return w[0] * arr[i - 1] + w[1] * arr[i] + w[2] * arr[i + 1] + w[3] * arr[i + 2]

    def phi_at(self, y):
        return self._interp(self._phi, y)

    def pi_at(self, y):
        return self._interp(self._pi, y)

    def dphi_at(self, y):
        """Central difference of the amplitude at spacing ``dx``."""
        y = np.asarray(y, dtype=float)
        self._locate(y)
        # the stencil may step one cell into the ghost zone
        up = self._interp(self._phi, y + self.dx, slack=self.dx)
        down = self._interp(self._phi, y - self.dx, slack=self.dx)
        return (up - down) / (2 * self.dx)

    def pi_integral(self, y):
        """``int_{-inf}^{y} pi0`` of the interpolant."""
        i, s = self._locate(y)
        w = _cr_weight_integrals(s)
        p = self._pi
        part = w[0] * p[i - 1] + w[1] * p[i] + w[2] * p[i + 1] + w[3] * p[i + 2]
        return self._cum[i] + self.dx * part


def _cone(t, x):
    t, x = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
    return x + t, x - t, t.ndim == 0


def _out(val, scalar):
    return float(val) if scalar else val


def evolve_phi(data, t, x):
    """Amplitude ``(phi(x+t) + phi(x-t) + int_{x-t}^{x+t} pi) / 2``."""
    up, um, scalar = _cone(t, x)
    val = 0.5 * (data.phi_at(up) + data.phi_at(um) + data.pi_integral(up) - data.pi_integral(um))
    return _out(val, scalar)


def evolve_pi(data, t, x):
    """Momentum ``(pi(x+t) + pi(x-t) + phi'(x+t) - phi'(x-t)) / 2``."""
    up, um, scalar = _cone(t, x)
    val = 0.5 * (data.pi_at(up) + data.pi_at(um) + data.dphi_at(up) - data.dphi_at(um))
    return _out(val, scalar)


def left_right_fluxes(data, t, x):
    """Left-moving and right-moving energy fluxes; they add up to the energy density."""
    up, um, scalar = _cone(t, x)
    left = 0.25 * (data.pi_at(up) + data.dphi_at(up)) ** 2
    right = 0.25 * (data.pi_at(um) - data.dphi_at(um)) ** 2
    return _out(left, scalar), _out(right, scalar)


def energy_density_boundary(data, t, x):
    """Energy density from the initial data on the two lightcone endpoints."""
    left, right = left_right_fluxes(data, t, x)
    return left + right


def energy_density_direct(data, t, x):
    """``((d_t phi)^2 + (d_x phi)^2) / 2`` from the evolved field."""
    t, x = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
    h = data.dx
    dphi = (evolve_phi(data, t, x + h) - evolve_phi(data, t, x - h)) / (2 * h)
    val = 0.5 * (np.asarray(evolve_pi(data, t, x)) ** 2 + np.asarray(dphi) ** 2)
    return _out(val, t.ndim == 0)


def slice_data(data, t, pad=None):
    """Resample the evolved field at time ``t`` as new initial data on the same grid."""
    x = data.grid
    pad = data.pad if pad is None else pad
    return InitialData(evolve_phi(data, t, x), evolve_pi(data, t, x), data.dx, data.x0, pad)


def gaussian_bump(x, center=0.0, width=1.0, height=1.0):
    return height * np.exp(-0.5 * ((np.asarray(x) - center) / width) ** 2)
