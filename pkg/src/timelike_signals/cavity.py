"""Dirichlet cavity modes and field commutators in 1+1 dimensions.

Commutators are purely imaginary; every function here returns the real
coefficient ``c`` in ``[phi(e1), phi(e2)] = i c``.  The sign convention is
``c = +1/2`` when ``e2`` lies in the future lightcone of ``e1``.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CavitySpec:
    """Cavity ``[0, length]`` with Dirichlet walls, truncated after ``n_modes`` modes."""

    length: float = 1.0
    n_modes: int = 200

    def __post_init__(self):
        if not self.length > 0:
            raise ValueError(f"cavity length must be positive, got {self.length}")
        if int(self.n_modes) != self.n_modes or self.n_modes < 1:
            raise ValueError(f"need at least one mode, got {self.n_modes}")

    @property
    def frequencies(self):
        return np.arange(1, self.n_modes + 1) * np.pi / self.length

    def check_position(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0) or np.any(x > self.length) or not np.all(np.isfinite(x)):
            raise ValueError(f"position outside the cavity [0, {self.length}]")
        return x


def mode_frequency(spec, j):
    if not 1 <= j <= spec.n_modes:
        raise IndexError(f"mode {j} outside 1..{spec.n_modes}")
    return j * np.pi / spec.length


def coupling_weight(spec, j, x):
    """Mode profile ``sin(j pi x / L) / sqrt(j pi)`` entering the field expansion."""
    if not 1 <= j <= spec.n_modes:
        raise IndexError(f"mode {j} outside 1..{spec.n_modes}")
    x = spec.check_position(x)
    return np.sin(j * np.pi * x / spec.length) / np.sqrt(j * np.pi)


def coupling_weights(spec, x):
    """Weights of all retained modes at position ``x`` as an array of length N."""
    x = float(spec.check_position(x))
    j = np.arange(1, spec.n_modes + 1)
    return np.sin(j * np.pi * x / spec.length) / np.sqrt(j * np.pi)


def cavity_commutator_closed(spec, t1, x1, t2, x2):
    """Resummed cavity commutator, piecewise constant in ``{0, +-1/2, +-1}``.

    The four-floor expression is evaluated with an overall minus sign so that
    it matches the mode sum (and the Minkowski value ``+1/2`` in the future
    lightcone).
    """
    x1 = spec.check_position(x1)
    x2 = spec.check_position(x2)
    two_l = 2.0 * spec.length
    dt = np.asarray(t1, dtype=float) - np.asarray(t2, dtype=float)
    floors = (
        np.floor((dt + x1 - x2) / two_l)
        + np.floor((dt - x1 + x2) / two_l)
        - np.floor((dt + x1 + x2) / two_l)
        - np.floor((dt - x1 - x2) / two_l)
    )
    return -0.5 * floors


def cavity_commutator_modesum(spec, t1, x1, t2, x2, smoothing="none"):
    """Truncated mode sum ``-sum_j 2/(pi j) sin(k x1) sin(k x2) sin(k (t1 - t2))``.

    ``smoothing="fejer"`` applies Cesaro weights ``1 - j/(N+1)``.
    """
    x1 = spec.check_position(x1)
    x2 = spec.check_position(x2)
    t1, x1, t2, x2 = np.broadcast_arrays(np.asarray(t1, float), x1, np.asarray(t2, float), x2)
    shape = t1.shape
    j = np.arange(1, spec.n_modes + 1, dtype=float)
    if smoothing == "none":
        weights = 2.0 / (np.pi * j)
    elif smoothing == "fejer":
        weights = 2.0 / (np.pi * j) * (1.0 - j / (spec.n_modes + 1))
    else:
        raise ValueError(f"unknown smoothing {smoothing!r}")
    k = np.pi / spec.length
    out = np.empty(t1.size)
    flat = [a.ravel() for a in (t1, x1, t2, x2)]
    chunk = max(1, 2_000_000 // spec.n_modes)
    for start in range(0, t1.size, chunk):
        sl = slice(start, start + chunk)
        a, b, c, e = (f[sl, None] for f in flat)
        terms = np.sin(k * j * b) * np.sin(k * j * e) * np.sin(k * j * (a - c))
        out[sl] = -(terms @ weights)
    return out.reshape(shape) if shape else float(out[0])


def minkowski_commutator(event_x, event_y):
    """``(1/2) Theta((x - y)^2) sgn(y^0 - x^0)`` for events ``(t, x)``.

    The step function takes the value 1/2 on the lightcone itself.
    """
    event_x = np.asarray(event_x, dtype=float)
    event_y = np.asarray(event_y, dtype=float)
    dt = event_y[..., 0] - event_x[..., 0]
    dx = event_y[..., 1] - event_x[..., 1]
    interval = dt * dt - dx * dx
    val = 0.5 * np.heaviside(interval, 0.5) * np.sign(dt)
    return float(val) if np.ndim(val) == 0 else val


def lightray_delays(a, b, length, t_max):
    """All positive delays ``t_b - t_a <= t_max`` joined by direct or reflected rays.

    Between points ``a`` and ``b`` in the cavity, light rays (including any
    number of wall reflections) arrive after ``|a-b| + 2Lk``, ``a+b + 2Lk``,
    ``2L - (a+b) + 2Lk`` and ``2L - |a-b| + 2Lk``; these are exactly the
    jump locations of the closed-form commutator.
    """
    base = np.array([abs(a - b), a + b, 2 * length - (a + b), 2 * length - abs(a - b)])
    if t_max < 0:
        return np.array([])
    k = np.arange(0, int(np.ceil(t_max / (2 * length))) + 1)
    delays = (base[:, None] + 2 * length * k[None, :]).ravel()
    return np.unique(delays[delays <= t_max])
