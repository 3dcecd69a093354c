"""Symplectic propagators for oscillator detectors coupled to cavity modes.

In the interaction picture the Hamiltonian is ``H(t) = x^T M(t) x / 2`` with
``M`` coupling detector quadratures to mode quadratures only.  The
propagator obeys ``dS/dt = J M(t) S`` and is integrated with the fourth-order
commutator-free Magnus scheme

    S <- exp(h (b2 A1 + b1 A2)) exp(h (b1 A1 + b2 A2)) S,

where ``A_i = J M(t + c_i h)`` at the Gauss-Legendre nodes.  Each factor is
the exponential of a Hamiltonian generator, so the scheme is symplectic up
to round-off.  Because the generator only links detectors with modes, its
exponential reduces to matrix functions of a small ``p x p`` block
(``p = 2 x active detectors``) and is applied in ``O(p N d)`` operations.
"""

from dataclasses import dataclass, field
from math import ceil, factorial, sqrt

import numpy as np

from .cavity import CavitySpec, coupling_weights
from .gaussian import QuadratureLayout, symplectic_form

DEFECT_TOL = 1e-8
DEFECT_FAIL = 1e-6
STEPS_PER_PERIOD = 40

_C1 = 0.5 - sqrt(3.0) / 6.0
_C2 = 0.5 + sqrt(3.0) / 6.0
_B1 = 0.25 + sqrt(3.0) / 6.0
_B2 = 0.25 - sqrt(3.0) / 6.0


class IntegrationError(RuntimeError):
    """The propagator drifted away from the symplectic group."""


@dataclass(frozen=True)
class DetectorSpec:
    """Oscillator detector with gap ``gap`` switched on sharply during ``[t_on, t_off)``."""

    gap: float
    coupling: float
    position: float
    t_on: float = 0.0
    t_off: float = 0.0

    def __post_init__(self):
        if not self.gap > 0:
            raise ValueError(f"detector gap must be positive, got {self.gap}")
        if not 0 <= self.t_on <= self.t_off:
            raise ValueError(f"invalid coupling window [{self.t_on}, {self.t_off})")
        if not np.isfinite(self.coupling):
            raise ValueError("coupling must be finite")

    def active(self, t):
        return self.coupling != 0 and self.t_on <= t < self.t_off


@dataclass(frozen=True)
class GeneratorSpec:
    cavity: CavitySpec
    detectors: tuple
    layout: QuadratureLayout = field(init=False)

    def __post_init__(self):
        detectors = tuple(self.detectors)
        object.__setattr__(self, "detectors", detectors)
        object.__setattr__(
            self, "layout", QuadratureLayout(self.cavity.n_modes, len(detectors))
        )
        for d in detectors:
            self.cavity.check_position(d.position)

    def edges(self):
        out = set()
        for d in self.detectors:
            out.update((d.t_on, d.t_off))
        return sorted(out)

    def active_detectors(self, t):
        return [i for i, d in enumerate(self.detectors) if d.active(t)]


class _Couplings:
    """Cached per-detector mode weights ``2 lambda Omega g_j(x_d)``."""

    def __init__(self, spec):
        self.spec = spec
        self.omega = spec.cavity.frequencies
        self.weights = [
            2.0 * d.coupling * d.gap * coupling_weights(spec.cavity, d.position)
            for d in spec.detectors
        ]

    def block(self, active, t):
        """Coupling block ``K`` of ``M(t)``: rows (q of active..., p of active...),
        columns (q_1..q_N, p_1..p_N)."""
        n_a = len(active)
        N = self.spec.cavity.n_modes
        K = np.empty((2 * n_a, 2 * N))
        wt = self.omega * t
        cj, sj = np.cos(wt), np.sin(wt)
        for r, i in enumerate(active):
            gap = self.spec.detectors[i].gap
            w = self.weights[i]
            cd, sd = np.cos(gap * t), np.sin(gap * t)
            K[r, :N] = cd * w * cj
            K[r, N:] = cd * w * sj
            K[n_a + r, :N] = sd * w * cj
            K[n_a + r, N:] = sd * w * sj
        return K


def hamiltonian_matrix(spec, t):
    """Full symmetric ``M(t)`` with ``H = x^T M x / 2`` in the global layout."""
    layout = spec.layout
    M = np.zeros((layout.dim, layout.dim))
    active = spec.active_detectors(t)
    if not active:
        return M
    K = _Couplings(spec).block(active, t)
    rows = [layout.q(i) for i in active] + [layout.p(i) for i in active]
    N = spec.cavity.n_modes
    cols = [layout.q(layout.mode(j)) for j in range(1, N + 1)]
    cols += [layout.p(layout.mode(j)) for j in range(1, N + 1)]
    M[np.ix_(rows, cols)] = K
    M[np.ix_(cols, rows)] = K.T
    return M


def _block_functions(X, tol=1e-17, max_terms=200):
    """Return ``f, g, h`` with f = sum X^k/(2k)!, g = sum X^k/(2k+1)!,
    h = sum X^k/(2k+2)!."""
    p = X.shape[0]
    f = np.eye(p)
    g = np.eye(p)
    h = 0.5 * np.eye(p)
    P = np.eye(p)
    for k in range(1, max_terms):
        P = P @ X
        scale = np.abs(P).max()
        f += P / factorial(2 * k)
        g += P / factorial(2 * k + 1)
        h += P / factorial(2 * k + 2)
        if scale / factorial(2 * k) < tol:
            break
    return f, g, h


class _Stepper:
    """Applies exponentials of block-off-diagonal generators to a row-permuted S.

    Internal row order: detector q's, detector p's, mode q's, mode p's.
    """

    def __init__(self, spec):
        self.spec = spec
        self.layout = spec.layout
        self.couplings = _Couplings(spec)
        nd = self.layout.n_detectors
        self.n_det_rows = 2 * nd
        L = self.layout
        det = [L.q(i) for i in range(nd)] + [L.p(i) for i in range(nd)]
        modes = [L.q(L.mode(j)) for j in range(1, L.n_modes + 1)]
        modes += [L.p(L.mode(j)) for j in range(1, L.n_modes + 1)]
        self.perm = np.array(det + modes, dtype=int)
        self.inv_perm = np.argsort(self.perm)
        self.N = L.n_modes

    def to_internal(self, S):
        return np.ascontiguousarray(S[self.perm])

    def to_global(self, Sp):
        return Sp[self.inv_perm]

    def _apply_exp(self, Sp, active, K):
        nd = self.layout.n_detectors
        n_a = len(active)
        N = self.N
        # B = J_p K and C = J_m K^T, written out as signed row swaps
        B = np.concatenate([K[n_a:], -K[:n_a]])
        KT = K.T
        C = np.concatenate([KT[N:], -KT[:N]])
        X = B @ C
        F, G, H = _block_functions(X)
        rows = np.array(active + [nd + i for i in active])
        S_p = Sp[rows]
        S_m = Sp[self.n_det_rows:]
        Y = B @ S_m
        new_p = F @ S_p + G @ Y
        S_m += C @ (G @ S_p + H @ Y)
        Sp[rows] = new_p

    def advance(self, Sp, t0, t1, h):
        """Propagate internal ``Sp`` in place from ``t0`` to ``t1``."""
        if t1 < t0:
            raise ValueError("cannot integrate backwards")
        cuts = [t0] + [e for e in self.spec.edges() if t0 < e < t1] + [t1]
        for a, b in zip(cuts[:-1], cuts[1:]):
            if b <= a:
                continue
            active = self.spec.active_detectors(0.5 * (a + b))
            if not active:
                continue
            n = max(1, ceil((b - a) / h - 1e-9))
            dt = (b - a) / n
            for k in range(n):
                t = a + k * dt
                K1 = self.couplings.block(active, t + _C1 * dt)
                K2 = self.couplings.block(active, t + _C2 * dt)
                self._apply_exp(Sp, active, dt * (_B1 * K1 + _B2 * K2))
                self._apply_exp(Sp, active, dt * (_B2 * K1 + _B1 * K2))
        return Sp


def default_step(cavity):
    """Forty steps per period of the fastest retained mode."""
    return 2.0 * cavity.length / cavity.n_modes / STEPS_PER_PERIOD


def symplecticity_defect(S):
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] % 2:
        raise ValueError("need a square even-dimensional matrix")
    J = symplectic_form(S.shape[0])
    return float(np.abs(S.T @ J @ S - J).max())


def symplectic_inverse(S):
    """``J^{-1} S^T J`` (equal to ``S^{-1}`` for symplectic ``S``)."""
    J = symplectic_form(S.shape[0])
    return -J @ S.T @ J


def _check(S, t0, t1):
    defect = symplecticity_defect(S)
    if defect > DEFECT_FAIL:
        raise IntegrationError(
            f"symplecticity defect {defect:.3e} over [{t0}, {t1}] exceeds {DEFECT_FAIL:g}; "
            "reduce the step size"
        )
    return S


def propagate(spec, S, t0, t1, step=None, check=True):
    """Return ``U(t1, t0) @ S`` for a propagator ``S`` given at ``t0``."""
    h = default_step(spec.cavity) if step is None else step
    if not h > 0:
        raise ValueError("step must be positive")
    stepper = _Stepper(spec)
    Sp = stepper.advance(stepper.to_internal(np.array(S, dtype=float)), t0, t1, h)
    out = stepper.to_global(Sp)
    return _check(out, t0, t1) if check else out


def evolve_window(spec, t0, t1, step=None, check=True):
    """Symplectic matrix of the evolution from ``t0`` to ``t1``."""
    return propagate(spec, np.eye(spec.layout.dim), t0, t1, step=step, check=check)


def evolve_samples(spec, t0, times, step=None, check=True, rows=None):
    """Propagators ``U(t, t0)`` at each of the increasing ``times``.

    Integrates once, segment by segment, so a sweep over the end time costs
    a single pass.  With ``rows`` only those rows of each propagator are
    kept, and the symplecticity check runs once on the final full matrix.
    """
    h = default_step(spec.cavity) if step is None else step
    times = np.asarray(times, dtype=float)
    if np.any(np.diff(times) < 0) or (times.size and times[0] < t0):
        raise ValueError("sample times must be increasing and not before t0")
    stepper = _Stepper(spec)
    Sp = stepper.to_internal(np.eye(spec.layout.dim))
    internal_rows = None if rows is None else stepper.inv_perm[np.asarray(rows)]
    out = []
    t = t0
    for T in times:
        stepper.advance(Sp, t, T, h)
        t = T
        if internal_rows is None:
            S = stepper.to_global(Sp)
            out.append(_check(S, t0, T) if check else S)
        else:
            out.append(Sp[internal_rows].copy())
    if internal_rows is not None and check and times.size:
        _check(stepper.to_global(Sp), t0, t)
    return out


def compose(S_late, S_early):
    S_late = np.asarray(S_late)
    S_early = np.asarray(S_early)
    # S_late may be a subset of rows of a propagator
    if S_late.shape[-1] != S_early.shape[0] or S_early.shape[0] != S_early.shape[1]:
        raise ValueError(f"cannot compose {S_late.shape} with {S_early.shape}")
    return S_late @ S_early
