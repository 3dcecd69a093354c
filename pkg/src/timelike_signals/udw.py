"""Leading-order field energy injected by a resting two-level detector.

A detector at ``x = 0`` with gap ``Omega`` starts in ``alpha|e> + beta|g>``
and couples to the vacuum of a massless field in 1+1 Minkowski space with
strength ``lambda`` during ``0 <= t < T``.  All results are of order
``lambda^2``.
"""

from dataclasses import dataclass

import numpy as np

from .special import sine_integral


@dataclass(frozen=True)
class UdwParams:
    gap: float
    coupling: float
    duration: float
    excited_weight: float = 1.0  # |alpha|^2

    def __post_init__(self):
        if not self.gap > 0:
            raise ValueError("gap must be positive")
        if not self.duration > 0:
            raise ValueError("duration must be positive")
        if not 0.0 <= self.excited_weight <= 1.0:
            raise ValueError("excited_weight must lie in [0, 1]")

    @property
    def ground_weight(self):
        return 1.0 - self.excited_weight

    @property
    def inversion(self):
        """``|alpha|^2 - |beta|^2``."""
        return self.excited_weight - self.ground_weight


def switching(params, tau):
    """Sharp window, 1 on ``[0, T)``."""
    tau = np.asarray(tau, dtype=float)
    return ((tau >= 0) & (tau < params.duration)).astype(float)


def _sector(params, u):
    chi = switching(params, u)
    out = np.zeros_like(chi)
    on = chi > 0
    out[on] = 0.25 + params.inversion * sine_integral(params.gap * u[on]) / (2 * np.pi)
    return out


def energy_density(params, t, x):
    """Expected normal-ordered energy density at ``(t, x)``.

    Only lightcone coordinates ``t + x`` and ``t - x`` inside the coupling
    window contribute, so the density is exactly zero off the two strips.
    """
    t, x = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
    x_plus = np.atleast_1d(t + x)
    x_minus = np.atleast_1d(t - x)
    scale = params.coupling**2 * params.gap**2
    val = scale * (_sector(params, x_plus) + _sector(params, x_minus))
    return float(val[0]) if t.ndim == 0 else val.reshape(t.shape)


def total_energy(params):
    """Expected field energy after the interaction."""
    w = params.gap * params.duration
    # (cos(w) - 1)/w written with sin^2 to stay accurate for small w
    ramp = -2.0 * np.sin(0.5 * w) ** 2 / w
    bracket = 0.5 + params.inversion / np.pi * (sine_integral(w) + ramp)
    return params.coupling**2 * params.gap**2 * params.duration * bracket


def ground_state_limit(gap, coupling):
    """Long-time limit ``lambda^2 Omega / pi`` of the energy from a ground-state detector."""
    return coupling**2 * gap / np.pi


@dataclass(frozen=True)
class EnergyProfile:
    t: float
    x: np.ndarray
    density: np.ndarray

    def integral(self):
        return float(np.trapezoid(self.density, self.x))

    def rows(self):
        return zip(self.x, self.density)


def energy_profile(params, t, x_grid):
    x = np.asarray(x_grid, dtype=float)
    if x.size == 0:
        raise ValueError("empty grid")
    return EnergyProfile(float(t), x, energy_density(params, t, x))
