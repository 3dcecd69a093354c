"""A classical momentum kick leaves a plateau in the field but no energy.

In 1+1 dimensions the retarded Green's function is a step, so a localized
momentum bump shifts the field amplitude everywhere inside its future
lightcone by half its integral.  The energy density, built from
``(pi +- dphi)^2`` on the two lightcone edges, stays zero inside.
"""

import numpy as np

from timelike_signals.classical import (
    InitialData,
    energy_density_boundary,
    evolve_phi,
    gaussian_bump,
)


def main():
    dx, width = 1e-3, 0.2
    data = InitialData.from_functions(
        lambda x: np.zeros_like(x),
        lambda x: gaussian_bump(x, 0.0, width),
        -3.0,
        3.0,
        dx,
        pad=8000,
    )
    half_integral = 0.5 * width * np.sqrt(2 * np.pi)
    t = 4.0
    x = np.array([-6.0, -4.0, -2.0, 0.0, 2.0, 4.0, 6.0])
    print(f"half the kick's integral: {half_integral:.6f}")
    print(f"{'x':>6} {'phi(t=4, x)':>14} {'energy density':>16}")
    for xi, phi, rho in zip(x, evolve_phi(data, t, x), energy_density_boundary(data, t, x)):
        print(f"{xi:6.1f} {phi:14.6f} {rho:16.3e}")


if __name__ == "__main__":
    main()
