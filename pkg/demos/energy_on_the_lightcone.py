"""Energy emitted by a switched detector stays on two lightlike strips.

A detector coupled for a time T at the origin radiates into the field.  At a
later time the normal-ordered energy density is non-zero only where
``0 <= t - |x| < T``: a left-moving and a right-moving strip.  Nothing
reaches the timelike interior ``|x| < t - T``.
"""

import numpy as np

from timelike_signals.udw import UdwParams, energy_profile, ground_state_limit, total_energy


def main():
    excited = UdwParams(gap=1.0, coupling=1.0, duration=25.0, excited_weight=1.0)
    ground = UdwParams(gap=1.0, coupling=1.0, duration=25.0, excited_weight=0.0)
    t = 30.0
    x = np.linspace(-40.0, 40.0, 1601)
    for name, params in (("excited", excited), ("ground", ground)):
        prof = energy_profile(params, t, x)
        support = np.abs(x[prof.density != 0])
        print(f"{name} detector at t = {t:g}")
        print(f"  non-zero density for {support.min():.2f} <= |x| <= {support.max():.2f}")
        print(f"  density at x = 0 (timelike interior): {prof.density[800]:g}")
        print(f"  profile integral {prof.integral():.4f}, closed-form total {total_energy(params):.4f}")

    print("ground-state total energy approaches lam^2 Omega / pi:")
    for wT in (10.0, 100.0, 1000.0):
        e = total_energy(UdwParams(1.0, 1.0, wT, 0.0))
        print(f"  Omega T = {wT:6g}: E = {e:.5f}  (limit {ground_state_limit(1.0, 1.0):.5f})")


if __name__ == "__main__":
    main()
