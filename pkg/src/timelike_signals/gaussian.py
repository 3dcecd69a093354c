"""Gaussian states of detectors and cavity modes.

Quadratures are stored in ``xxpp`` order: all positions first
(``q_A, q_B, q_1 ... q_N``) followed by all momenta in the same order.
The covariance convention is ``sigma_ij = <{dx_i, dx_j}>/2`` so that the
ground state of an oscillator has ``sigma = I/2``.
"""

from dataclasses import dataclass

import numpy as np

SYMMETRY_TOL = 1e-12
UNCERTAINTY_TOL = 1e-8


class DimensionError(ValueError):
    """Raised when array shapes do not match the quadrature layout."""


class PhysicalityError(ValueError):
    """Raised for covariance matrices that violate the uncertainty relation."""


@dataclass(frozen=True)
class QuadratureLayout:
    """Index bookkeeping for ``n_detectors`` oscillators plus ``n_modes`` modes."""

    n_modes: int
    n_detectors: int = 2

    def __post_init__(self):
        if self.n_modes < 0 or self.n_detectors < 0:
            raise DimensionError("subsystem counts must be non-negative")
        if self.n_modes + self.n_detectors == 0:
            raise DimensionError("layout has no subsystems")

    @property
    def n_subsystems(self):
        return self.n_detectors + self.n_modes

    @property
    def dim(self):
        return 2 * self.n_subsystems

    def q(self, k):
        """Index of the position quadrature of subsystem ``k``."""
        if not 0 <= k < self.n_subsystems:
            raise IndexError(f"subsystem {k} out of range")
        return k

    def p(self, k):
        """Index of the momentum quadrature of subsystem ``k``."""
        return self.q(k) + self.n_subsystems

    def detector(self, d):
        if not 0 <= d < self.n_detectors:
            raise IndexError(f"detector {d} out of range")
        return d

    def mode(self, j):
        """Subsystem index of cavity mode ``j`` (1-based as in the field expansion)."""
        if not 1 <= j <= self.n_modes:
            raise IndexError(f"mode {j} out of range")
        return self.n_detectors + j - 1

    def pair(self, k):
        return self.q(k), self.p(k)


def symplectic_form(d):
    """Return ``J = [[0, I], [-I, 0]]`` of size ``d x d``."""
    if d <= 0 or d % 2:
        raise DimensionError(f"symplectic form needs a positive even dimension, got {d}")
    n = d // 2
    J = np.zeros((d, d))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def uncertainty_violation(cov):
    """Smallest eigenvalue of ``cov + iJ/2``; negative means unphysical."""
    J = symplectic_form(cov.shape[0])
    return float(np.linalg.eigvalsh(cov + 0.5j * J).min())


@dataclass(frozen=True, eq=False)
class GaussianState:
    """First and second moments of a Gaussian state.

    Arrays are copied and made read-only on construction.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float)
        cov = np.array(self.cov, dtype=float)
        d = mean.shape[0] if mean.ndim == 1 else -1
        if mean.ndim != 1 or d % 2 or cov.shape != (d, d):
            raise DimensionError(
                f"mean of shape {mean.shape} and covariance of shape {cov.shape} "
                "do not describe an even-dimensional state"
            )
        if not np.all(np.isfinite(mean)) or not np.all(np.isfinite(cov)):
            raise PhysicalityError("moments must be finite")
        if np.max(np.abs(cov - cov.T), initial=0.0) > SYMMETRY_TOL * max(1.0, np.abs(cov).max()):
            raise PhysicalityError("covariance matrix is not symmetric")
        mean.flags.writeable = False
        cov.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def dim(self):
        return self.mean.shape[0]

    def is_physical(self, tol=UNCERTAINTY_TOL):
        return uncertainty_violation(self.cov) >= -tol


def make_vacuum(layout):
    """All subsystems in their ground state."""
    return GaussianState(np.zeros(layout.dim), 0.5 * np.eye(layout.dim))


def make_thermal_covariance(gap, temperature):
    """Covariance ``coth(gap / 2 temperature) I / 2`` of a thermal oscillator."""
    if gap <= 0 or temperature <= 0:
        raise ValueError("gap and temperature must be positive")
    x = gap / (2.0 * temperature)
    # coth(x) -> 1 for large x; tanh avoids overflow there
    return 0.5 / np.tanh(x) * np.eye(2)


def rotation(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def make_squeezed_state(squeeze, angle=0.0, mean=(0.0, 0.0)):
    """Single-oscillator squeezed state.

    ``angle = 0`` squeezes position (small ``dq``, large ``dp``); ``angle = pi/2``
    squeezes momentum.
    """
    R = rotation(angle)
    D = np.diag([np.exp(-2.0 * squeeze), np.exp(2.0 * squeeze)])
    cov = 0.5 * R @ D @ R.T
    cov = 0.5 * (cov + cov.T)
    return GaussianState(np.asarray(mean, dtype=float), cov)


def make_coherent_state(mean):
    return GaussianState(np.asarray(mean, dtype=float), 0.5 * np.eye(2))


def embed(layout, local_states, base=None):
    """Place single-subsystem states into the global vacuum (or ``base``).

    ``local_states`` maps subsystem index to a two-dimensional GaussianState.
    """
    state = make_vacuum(layout) if base is None else base
    mean = np.array(state.mean)
    cov = np.array(state.cov)
    for k, local in local_states.items():
        if local.dim != 2:
            raise DimensionError("only single-subsystem states can be embedded")
        idx = list(layout.pair(k))
        mean[idx] = local.mean
        cov[idx, :] = 0.0
        cov[:, idx] = 0.0
        cov[np.ix_(idx, idx)] = local.cov
    return GaussianState(mean, cov)


def apply_symplectic(state, S):
    """Evolve moments: ``mean -> S mean`` and ``cov -> S cov S^T``."""
    S = np.asarray(S, dtype=float)
    if S.shape != (state.dim, state.dim):
        raise DimensionError(f"symplectic matrix {S.shape} does not act on dimension {state.dim}")
    cov = S @ state.cov @ S.T
    return GaussianState(S @ state.mean, 0.5 * (cov + cov.T))


def reduce_to_subsystem(state, k, layout=None):
    """Marginal (q, p) state of subsystem ``k``."""
    n = state.dim // 2
    if layout is not None and layout.dim != state.dim:
        raise DimensionError("layout does not match state")
    if not 0 <= k < n:
        raise IndexError(f"subsystem {k} out of range for {n} subsystems")
    idx = [k, k + n]
    return GaussianState(state.mean[idx], state.cov[np.ix_(idx, idx)])


def excitation_probability(cov, mean=None, tol=UNCERTAINTY_TOL):
    """Probability of finding a single oscillator outside its ground state.

    With ``mean=None`` the state is taken to be zero-mean and
    ``P_e = 1 - 2 / sqrt(4 det(cov) + 2 tr(cov) + 1)``.  A non-zero mean
    multiplies the ground-state overlap by ``exp(-mean^T (cov + I/2)^-1 mean / 2)``.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (2, 2):
        raise DimensionError("excitation probability needs a 2x2 covariance")
    det = np.linalg.det(cov)
    trace = np.trace(cov)
    if uncertainty_violation(cov) < -tol:
        raise PhysicalityError(f"covariance violates the uncertainty relation (det={det:.6g})")
    overlap = 2.0 / np.sqrt(4.0 * det + 2.0 * trace + 1.0)
    if mean is not None:
        mean = np.asarray(mean, dtype=float)
        overlap *= np.exp(-0.5 * mean @ np.linalg.solve(cov + 0.5 * np.eye(2), mean))
    return float(max(1.0 - overlap, 0.0))


def cov_to_vector(cov):
    """Three-vector ``(s_qq, s_pp, s_qp)`` of a 2x2 covariance."""
    return np.array([cov[0, 0], cov[1, 1], cov[0, 1]])


def vector_to_cov(vec):
    s_qq, s_pp, s_qp = vec
    return np.array([[s_qq, s_qp], [s_qp, s_pp]])
