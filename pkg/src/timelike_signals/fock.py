"""Brute-force check of the Gaussian engine in a truncated number basis.

One oscillator detector and one cavity mode, each truncated at ``n_max``
levels, evolved with the same interaction-picture Hamiltonian as the
symplectic engine.  Moments are reported in the engine's layout
``(q_d, q_mode, p_d, p_mode)``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .cavity import CavitySpec, coupling_weight, mode_frequency


class CutoffError(RuntimeError):
    """The state reached the top of the truncated number basis."""


@dataclass(frozen=True)
class FockConfig:
    gap: float
    coupling: float
    position: float
    mode: int = 1
    length: float = 1.0
    n_max: int = 15
    t0: float = 0.0
    t1: float = 1.0
    step: float = None  # defaults to 1e-3 detector periods
    leak_tol: float = 1e-6

    def __post_init__(self):
        if self.n_max < 8:
            raise ValueError("n_max must be at least 8")
        if not self.t0 <= self.t1:
            raise ValueError("window must have t0 <= t1")

    @property
    def cavity(self):
        return CavitySpec(self.length, self.mode)

    @property
    def dt(self):
        return self.step if self.step is not None else 1e-3 * 2 * np.pi / self.gap


def ladder(n):
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1)


def quadratures(n):
    a = ladder(n)
    q = (a + a.T) / np.sqrt(2)
    p = (a - a.T) / (1j * np.sqrt(2))
    return q, p


def gaussian_ket(n_max, mean=(0.0, 0.0), squeeze=0.0, angle=0.0, pad=4, tol=1e-8):
    """Pure Gaussian state ``D(alpha) S(zeta) |0>`` truncated to ``n_max`` levels.

    Built in an enlarged basis and truncated; the discarded weight is checked.
    Squeezing follows the engine convention: ``angle = 0`` shrinks ``dq``.
    """
    n_big = pad * n_max
    a = ladder(n_big)
    ad = a.T
    # S(zeta) = exp((zeta* a^2 - zeta a^dag^2)/2) with zeta = r e^{2 i angle}
    zeta = squeeze * np.exp(2j * angle)
    vac = np.zeros(n_big, dtype=complex)
    vac[0] = 1.0
    psi = expm(0.5 * (np.conj(zeta) * a @ a - zeta * ad @ ad)) @ vac
    alpha = (mean[0] + 1j * mean[1]) / np.sqrt(2)
    psi = expm(alpha * ad - np.conj(alpha) * a) @ psi
    lost = np.sum(np.abs(psi[n_max:]) ** 2)
    if lost > tol:
        raise CutoffError(f"initial state loses {lost:.2e} of its norm at n_max={n_max}")
    psi = psi[:n_max]
    return psi / np.linalg.norm(psi)


def _coupling_operator(config):
    """Time-independent pieces of the interaction Hamiltonian."""
    n = config.n_max
    a = ladder(n)
    eye = np.eye(n)
    a_d = np.kron(a, eye)
    a_m = np.kron(eye, a)
    strength = config.coupling * config.gap * coupling_weight(config.cavity, config.mode, config.position)
    return a_d, a_m, strength


def hamiltonian(config, t, parts=None):
    a_d, a_m, g = parts or _coupling_operator(config)
    omega = mode_frequency(config.cavity, config.mode)
    det = np.exp(-1j * config.gap * t) * a_d
    det = det + det.conj().T
    field = np.exp(-1j * omega * t) * a_m
    field = field + field.conj().T
    return g * det @ field


def _moments(psi, ops):
    mean = np.array([np.vdot(psi, o @ psi).real for o in ops])
    k = len(ops)
    cov = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            sym = ops[i] @ ops[j] + ops[j] @ ops[i]
            cov[i, j] = cov[j, i] = 0.5 * np.vdot(psi, sym @ psi).real - mean[i] * mean[j]
    return mean, cov


def top_population(psi, n_max, levels=2):
    """Probability in the highest ``levels`` number states of either subsystem."""
    probs = np.abs(psi.reshape(n_max, n_max)) ** 2
    return max(probs[-levels:, :].sum(), probs[:, -levels:].sum())


def evolve_fock(config, mean=(0.0, 0.0), squeeze=0.0, angle=0.0, return_state=False):
    """Evolve detector (Gaussian initial state) + mode (vacuum); return moments.

    The propagator over each step is the exponential of the Hamiltonian at the
    step midpoint.
    """
    n = config.n_max
    psi_d = gaussian_ket(n, mean, squeeze, angle)
    psi_m = np.zeros(n, dtype=complex)
    psi_m[0] = 1.0
    psi = np.kron(psi_d, psi_m)
    parts = _coupling_operator(config)
    span = config.t1 - config.t0
    steps = max(1, int(np.ceil(span / config.dt - 1e-9))) if span > 0 else 0
    h = span / steps if steps else 0.0
    norm_drift = 0.0
    worst_top = top_population(psi, n)
    for k in range(steps):
        t = config.t0 + (k + 0.5) * h
        psi = expm(-1j * h * hamiltonian(config, t, parts)) @ psi
        worst_top = max(worst_top, top_population(psi, n))
        norm_drift = max(norm_drift, abs(np.vdot(psi, psi).real - 1.0))
    if worst_top > config.leak_tol:
        raise CutoffError(
            f"population {worst_top:.2e} in the top two levels exceeds {config.leak_tol:g}; "
            "increase n_max"
        )
    q, p = quadratures(n)
    eye = np.eye(n)
    ops = [np.kron(q, eye), np.kron(eye, q), np.kron(p, eye), np.kron(eye, p)]
    m, c = _moments(psi, ops)
    if return_state:
        return m, c, psi, norm_drift
    return m, c
