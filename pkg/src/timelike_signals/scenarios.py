"""Sender-to-receiver signaling runs through the Dirichlet cavity.

The sender (detector A) starts in some Gaussian state and couples during
``[0, T_A)``; the receiver (detector B) starts in its ground state and
couples during ``[T1, T2)``.  Field modes start in the vacuum.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import dynamics
from .cavity import CavitySpec, cavity_commutator_closed, lightray_delays
from .dynamics import DetectorSpec, GeneratorSpec
from .gaussian import (
    GaussianState,
    QuadratureLayout,
    apply_symplectic,
    embed,
    excitation_probability,
    make_coherent_state,
    make_squeezed_state,
    make_thermal_covariance,
    make_vacuum,
)

SENDER, RECEIVER = 0, 1


@dataclass(frozen=True)
class SenderInit:
    """Initial sender state.

    kind "displaced": coherent state with quadrature mean ``mean``;
    kind "thermal": zero-mean thermal state with ``gap / temperature = gap_over_temperature``;
    kind "squeezed": squeezed state (``squeeze``, ``angle``) displaced to ``mean``.
    """

    kind: str = "displaced"
    mean: tuple = (0.0, 0.0)
    gap_over_temperature: float = None
    squeeze: float = 0.0
    angle: float = 0.0

    def __post_init__(self):
        if self.kind not in ("displaced", "thermal", "squeezed"):
            raise ValueError(f"unknown sender state kind {self.kind!r}")
        object.__setattr__(self, "mean", tuple(float(m) for m in self.mean))
        if len(self.mean) != 2:
            raise ValueError("sender mean must have two entries (q, p)")
        if self.kind == "thermal" and not (self.gap_over_temperature or 0) > 0:
            raise ValueError("thermal sender needs a positive gap_over_temperature")

    def state(self, gap):
        if self.kind == "displaced":
            return make_coherent_state(self.mean)
        if self.kind == "thermal":
            temperature = gap / self.gap_over_temperature
            return GaussianState(np.zeros(2), make_thermal_covariance(gap, temperature))
        return make_squeezed_state(self.squeeze, self.angle, self.mean)

    def label(self):
        if self.kind == "displaced":
            return f"displaced({self.mean[0]:g},{self.mean[1]:g})"
        if self.kind == "thermal":
            return f"thermal({self.gap_over_temperature:g})"
        return f"squeezed({self.squeeze:g},{self.angle:g})"


@dataclass(frozen=True)
class ScenarioConfig:
    cavity: CavitySpec
    sender: DetectorSpec
    receiver: DetectorSpec
    sender_init: SenderInit = field(default_factory=SenderInit)
    step: float = None

    def __post_init__(self):
        if self.sender.t_off > self.receiver.t_on:
            raise ValueError(
                f"sender window ends at {self.sender.t_off} after the receiver starts "
                f"at {self.receiver.t_on}"
            )
        self.cavity.check_position(self.sender.position)
        self.cavity.check_position(self.receiver.position)
        if self.step is not None and not self.step > 0:
            raise ValueError("step must be positive")

    @property
    def layout(self):
        return QuadratureLayout(self.cavity.n_modes, 2)

    @property
    def T2(self):
        return self.receiver.t_off

    def with_T2(self, T2):
        return replace(self, receiver=replace(self.receiver, t_off=T2))

    def generator(self, with_sender=True):
        sender = self.sender if with_sender else replace(self.sender, coupling=0.0)
        return GeneratorSpec(self.cavity, (sender, self.receiver))

    def initial_state(self):
        local = self.sender_init.state(self.sender.gap)
        return embed(self.layout, {SENDER: local})


@dataclass(frozen=True)
class ScenarioResult:
    T2: float
    receiver_mean: np.ndarray
    receiver_cov: np.ndarray
    pe_signal: float
    pe_vacuum: float
    separation: str

    @property
    def r(self):
        return float(np.hypot(*self.receiver_mean))

    @property
    def delta_pe(self):
        return self.pe_signal - self.pe_vacuum

    @property
    def timelike(self):
        return self.separation == "timelike"


def classify_separation(config):
    """``"timelike"``, ``"lightlike"`` or ``"spacelike"`` for the two coupling windows.

    Lightlike means some direct or wall-reflected light ray joins a sender
    event to a receiver event.  Otherwise the closed-form commutator is
    constant over all event pairs and its value decides between timelike
    (non-zero) and spacelike (zero).
    """
    s, r = config.sender, config.receiver
    L = config.cavity.length
    lo, hi = r.t_on - s.t_off, r.t_off - s.t_on
    a, b = s.position, r.position
    delays = lightray_delays(a, b, L, hi)
    if np.any((delays >= lo) & (delays <= hi)):
        return "lightlike"
    t_s = 0.5 * (s.t_on + s.t_off)
    t_r = 0.5 * (r.t_on + r.t_off)
    value = cavity_commutator_closed(config.cavity, t_s, a, t_r, b)
    return "timelike" if value != 0 else "spacelike"


def receiver_mean_map(S, layout):
    """2x2 block of ``S`` sending the sender's initial mean to the receiver's final mean."""
    rows = layout.pair(RECEIVER)
    cols = layout.pair(SENDER)
    return np.asarray(S)[np.ix_(rows, cols)].copy()


def receiver_covariance_map(S, layout):
    """Affine map ``sigma_B = W sigma_A + c`` on covariance three-vectors ``(qq, pp, qp)``.

    Assumes every subsystem except the sender starts in its ground state.
    """
    S = np.asarray(S)
    qb, pb = layout.pair(RECEIVER)
    qa, pa = layout.pair(SENDER)
    a, b = S[qb, qa], S[qb, pa]
    c, d = S[pb, qa], S[pb, pa]
    W = np.array(
        [
            [a * a, b * b, 2 * a * b],
            [c * c, d * d, 2 * c * d],
            [a * c, b * d, a * d + b * c],
        ]
    )
    others = np.ones(layout.dim, dtype=bool)
    others[[qa, pa]] = False
    u, v = S[qb, others], S[pb, others]
    affine = 0.5 * np.array([u @ u, v @ v, u @ v])
    return W, affine


def _receiver_moments(S, state, layout):
    """Receiver mean and covariance; ``S`` is a full propagator or just its receiver rows."""
    S = np.asarray(S)
    Sr = S[list(layout.pair(RECEIVER))] if S.shape[0] == layout.dim else S
    mean = Sr @ state.mean
    cov = Sr @ state.cov @ Sr.T
    return mean, 0.5 * (cov + cov.T)


def _result(config, S_sig, S_vac, state):
    layout = config.layout
    mean, cov = _receiver_moments(S_sig, state, layout)
    _, cov_vac = _receiver_moments(S_vac, make_vacuum(layout), layout)
    return ScenarioResult(
        T2=config.T2,
        receiver_mean=mean,
        receiver_cov=cov,
        pe_signal=excitation_probability(cov, mean=mean),
        pe_vacuum=excitation_probability(cov_vac),
        separation=classify_separation(config),
    )


def scenario_matrices(config):
    """Full-evolution symplectic matrices with and without the sender."""
    T2 = config.T2
    S_sig = dynamics.evolve_window(config.generator(True), 0.0, T2, step=config.step)
    S_vac = dynamics.evolve_window(config.generator(False), 0.0, T2, step=config.step)
    return S_sig, S_vac


def run_scenario(config):
    S_sig, S_vac = scenario_matrices(config)
    return _result(config, S_sig, S_vac, config.initial_state())


def full_state(config, S=None):
    """Global Gaussian state after the scenario (mainly for diagnostics)."""
    if S is None:
        S, _ = scenario_matrices(config)
    return apply_symplectic(config.initial_state(), S)


def sweep_T2_states(config, values, inits):
    """T2 sweep for several sender initial states sharing one integration.

    Returns one list of ScenarioResult (in ``values`` order) per entry of ``inits``.
    """
    T2s = np.asarray(values, dtype=float)
    if T2s.size == 0:
        raise ValueError("sweep needs at least one value")
    order = np.argsort(T2s, kind="stable")
    t_max = T2s.max()
    if T2s.min() < config.receiver.t_on:
        raise ValueError("every T2 must be at or after the receiver switch-on")
    long = config.with_T2(t_max)
    step = config.step
    sender_gen = long.generator(True)
    rows = list(config.layout.pair(RECEIVER))
    S_send = dynamics.evolve_window(sender_gen, 0.0, long.receiver.t_on, step=step)
    S_recv = dynamics.evolve_samples(
        sender_gen, long.receiver.t_on, T2s[order], step=step, rows=rows
    )
    # the receiver-only evolution before t_on is the identity
    S_vac = dynamics.evolve_samples(
        long.generator(False), long.receiver.t_on, T2s[order], step=step, rows=rows
    )
    configs = [replace(config, sender_init=init) for init in inits]
    states = [c.initial_state() for c in configs]
    out = [[None] * len(T2s) for _ in configs]
    for k, idx in enumerate(order):
        S_sig = dynamics.compose(S_recv[k], S_send)
        for table, cfg, state in zip(out, configs, states):
            table[idx] = _result(cfg.with_T2(T2s[idx]), S_sig, S_vac[k], state)
    return out


def _sweep_T2(config, values):
    return sweep_T2_states(config, values, [config.sender_init])[0]


def sweep(config, parameter, values, threads=1):
    """One ScenarioResult per entry of ``values``, in input order.

    ``parameter`` is ``"T2"`` (receiver switch-off times, integrated in a
    single pass), ``"receiver_position"`` or ``"sender_init"`` (SenderInit
    instances sharing one evolution).
    """
    values = list(values)
    if not values:
        raise ValueError("sweep needs at least one value")
    if parameter == "T2":
        return _sweep_T2(config, values)
    if parameter == "sender_init":
        S_sig, S_vac = scenario_matrices(config)
        out = []
        for init in values:
            cfg = replace(config, sender_init=init)
            out.append(_result(cfg, S_sig, S_vac, cfg.initial_state()))
        return out
    if parameter == "receiver_position":
        configs = [
            replace(config, receiver=replace(config.receiver, position=float(b)))
            for b in values
        ]
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                return list(pool.map(run_scenario, configs))
        return [run_scenario(c) for c in configs]
    raise ValueError(f"cannot sweep over {parameter!r}")


def detector_period(gap):
    return 2.0 * np.pi / gap


def half_odd_period_window(gap, n):
    """Sender duration of ``n + 1/2`` detector periods."""
    return (n + 0.5) * detector_period(gap)


def integer_period_window(gap, n):
    return n * detector_period(gap)
