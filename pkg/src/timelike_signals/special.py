"""Sine integral ``Si(x) = int_0^x sin(t)/t dt``."""

import numpy as np

SERIES_MAX = 4.0
_EPS = 1e-17


def _si_series(x):
    # sum_k (-1)^k x^(2k+1) / ((2k+1) (2k+1)!), alternating and fast for |x| <= 4
    term = x.copy()
    total = x.copy()
    x2 = x * x
    k = 0
    while True:
        k += 1
        term = -term * x2 / ((2 * k) * (2 * k + 1))
        contrib = term / (2 * k + 1)
        total += contrib
        if np.all(np.abs(contrib) <= _EPS * np.abs(total)):
            return total


def _si_large(x):
    """Si for ``x > 4`` via ``Si(x) = pi/2 + Im E1(i x)``.

    ``E1(ix) = e^{-ix} (f(x) + i g(x))`` carries the auxiliary functions
    ``f`` and ``g``; it is evaluated with the modified Lentz algorithm on the
    continued fraction ``E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...)))``.
    """
    z = 1j * x
    b = z + 1.0
    c = np.full_like(z, 1e300)
    d = 1.0 / b
    h = d.copy()
    for n in range(1, 1000):
        a = -float(n * n)
        b = b + 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h = h * delta
        if np.all(np.abs(delta - 1.0) < 1e-16):
            break
    e1 = h * np.exp(-z)
    return 0.5 * np.pi + e1.imag


def sine_integral(x):
    """Sine integral, odd in ``x`` and tending to ``pi/2`` as ``x -> inf``."""
    x = np.asarray(x, dtype=float)
    ax = np.abs(x).ravel()
    out = np.empty_like(ax)
    small = ax <= SERIES_MAX
    if np.any(small):
        out[small] = _si_series(ax[small])
    big = ~small & np.isfinite(ax)
    if np.any(big):
        out[big] = _si_large(ax[big])
    out[np.isinf(ax)] = 0.5 * np.pi
    out[np.isnan(ax)] = np.nan
    out = (np.sign(x).ravel() * out).reshape(x.shape)
    out[x == 0] = 0.0
    return float(out) if out.ndim == 0 else out
