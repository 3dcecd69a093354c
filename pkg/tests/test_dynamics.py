import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from timelike_signals.cavity import CavitySpec
from timelike_signals.dynamics import (
    DetectorSpec,
    GeneratorSpec,
    IntegrationError,
    compose,
    default_step,
    evolve_samples,
    evolve_window,
    hamiltonian_matrix,
    propagate,
    symplectic_inverse,
    symplecticity_defect,
)
from timelike_signals.gaussian import symplectic_form


def small_spec(n_modes=6, lam=0.3, windows=((0.0, 0.7), (0.2, 1.1))):
    cav = CavitySpec(1.0, n_modes)
    gap = 3 * np.pi
    dets = [
        DetectorSpec(gap, lam, x, t0, t1) for x, (t0, t1) in zip((0.3, 0.65), windows)
    ]
    return GeneratorSpec(cav, tuple(dets))


def reference(spec, t0, t1):
    """Dense adaptive solution of dS/dt = J M(t) S, one window segment at a time."""
    d = spec.layout.dim
    J = symplectic_form(d)
    S = np.eye(d)
    cuts = sorted({t0, t1, *[e for e in spec.edges() if t0 < e < t1]})
    for a, b in zip(cuts[:-1], cuts[1:]):
        mid = 0.5 * (a + b)
        active = spec.active_detectors(mid)
        if not active:
            continue

        def rhs(t, y):
            return (J @ hamiltonian_matrix(spec, t) @ y.reshape(d, d)).ravel()

        # windows are closed-open, so evaluate the generator strictly inside the segment
        sol = solve_ivp(rhs, (a, b), S.ravel(), method="DOP853", rtol=1e-12, atol=1e-13)
        S = sol.y[:, -1].reshape(d, d)
    return S


def test_hamiltonian_matrix_entries():
    spec = small_spec(n_modes=3)
    lay = spec.layout
    t = 0.43
    M = hamiltonian_matrix(spec, t)
    np.testing.assert_allclose(M, M.T)
    det = spec.detectors[0]
    gap, lam, x = det.gap, det.coupling, det.position
    for j in (1, 2, 3):
        w = j * np.pi
        c = 2 * lam * gap * np.sin(j * np.pi * x) / np.sqrt(j * np.pi)
        qd, pd = lay.pair(0)
        qj, pj = lay.pair(lay.mode(j))
        assert M[qd, qj] == pytest.approx(c * np.cos(gap * t) * np.cos(w * t))
        assert M[qd, pj] == pytest.approx(c * np.cos(gap * t) * np.sin(w * t))
        assert M[pd, qj] == pytest.approx(c * np.sin(gap * t) * np.cos(w * t))
        assert M[pd, pj] == pytest.approx(c * np.sin(gap * t) * np.sin(w * t))
    # no mode-mode or detector-detector blocks
    modes = [lay.q(k) for k in range(2, lay.n_subsystems)] + [lay.p(k) for k in range(2, lay.n_subsystems)]
    assert np.all(M[np.ix_(modes, modes)] == 0)


def test_inactive_detectors_give_identity():
    spec = small_spec(lam=0.0)
    S = evolve_window(spec, 0.0, 1.0)
    np.testing.assert_array_equal(S, np.eye(spec.layout.dim))
    spec = small_spec(windows=((0.5, 0.6), (0.5, 0.6)))
    np.testing.assert_array_equal(evolve_window(spec, 0.0, 0.5), np.eye(spec.layout.dim))


def test_matches_adaptive_reference():
    spec = small_spec()
    S = evolve_window(spec, 0.0, 1.2, step=0.002)
    ref = reference(spec, 0.0, 1.2)
    assert np.abs(S - ref).max() < 1e-8


def test_fourth_order_convergence():
    spec = small_spec(n_modes=4)
    ref = reference(spec, 0.0, 0.9)
    errs = [np.abs(evolve_window(spec, 0.0, 0.9, step=h) - ref).max() for h in (0.02, 0.01, 0.005)]
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders > 3.7), orders


def test_propagator_is_symplectic():
    spec = small_spec(n_modes=40, lam=0.5)
    S = evolve_window(spec, 0.0, 1.3)
    assert symplecticity_defect(S) < 1e-10
    np.testing.assert_allclose(symplectic_inverse(S) @ S, np.eye(S.shape[0]), atol=1e-9)


def test_samples_match_windows_and_compose():
    spec = small_spec()
    times = [0.3, 0.55, 1.0]
    samples = evolve_samples(spec, 0.0, times, step=0.005)
    for t, S in zip(times, samples):
        np.testing.assert_allclose(S, evolve_window(spec, 0.0, t, step=0.005), atol=1e-12)
    late = evolve_window(spec, 0.55, 1.0, step=0.005)
    np.testing.assert_allclose(compose(late, samples[1]), samples[2], atol=1e-10)
    with pytest.raises(ValueError):
        evolve_samples(spec, 0.0, [0.5, 0.2])


def test_propagate_continues_from_given_matrix():
    spec = small_spec()
    S1 = evolve_window(spec, 0.0, 0.4, step=0.005)
    S2 = propagate(spec, S1, 0.4, 0.9, step=0.005)
    np.testing.assert_allclose(S2, evolve_window(spec, 0.0, 0.9, step=0.005), atol=1e-10)


def test_coarse_step_is_rejected():
    spec = small_spec(n_modes=40, lam=3.0)
    with pytest.raises(IntegrationError):
        evolve_window(spec, 0.0, 1.0, step=0.2)


def test_default_step():
    assert default_step(CavitySpec(1.0, 200)) == pytest.approx(2.0 / 200 / 40)


def test_detector_spec_validation():
    with pytest.raises(ValueError):
        DetectorSpec(0.0, 0.1, 0.5)
    with pytest.raises(ValueError):
        DetectorSpec(1.0, 0.1, 0.5, 1.0, 0.5)
    with pytest.raises(ValueError):
        GeneratorSpec(CavitySpec(1.0, 3), (DetectorSpec(1.0, 0.1, 1.5),))


@settings(max_examples=15, deadline=None)
@given(
    lam=st.floats(0.01, 1.0),
    x=st.floats(0.05, 0.95),
    t1=st.floats(0.05, 1.0),
)
def test_random_couplings_stay_symplectic(lam, x, t1):
    spec = GeneratorSpec(CavitySpec(1.0, 8), (DetectorSpec(2 * np.pi, lam, x, 0.0, t1),))
    S = evolve_window(spec, 0.0, t1)
    assert symplecticity_defect(S) < 1e-10
