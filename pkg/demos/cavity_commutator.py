"""The cavity field commutator is constant inside the lightcone.

The resummed Dirichlet-cavity commutator takes only the values 0, +-1/2 and
+-1.  A Fejer-smoothed mode sum converges to it away from the (reflected)
lightrays, and before any wall reflection it equals the free-space value.
"""

import numpy as np

from timelike_signals.cavity import (
    CavitySpec,
    cavity_commutator_closed,
    cavity_commutator_modesum,
    minkowski_commutator,
)


def main():
    cav = CavitySpec(length=1.0, n_modes=4000)
    x1, x2 = 0.3, 0.6
    print(f"{'t':>6} {'closed':>8} {'Fejer N=4000':>13} {'free space':>11}")
    for t in (-0.5, -0.2, 0.1, 0.2, 0.5, 0.8, 1.0, 1.3, 1.8):
        closed = cavity_commutator_closed(cav, 0.0, x1, t, x2) + 0.0
        smooth = cavity_commutator_modesum(cav, 0.0, x1, t, x2, smoothing="fejer")
        free = minkowski_commutator((0.0, x1), (t, x2)) + 0.0
        print(f"{t:6.2f} {closed:8.2f} {smooth:13.4f} {free:11.2f}")


if __name__ == "__main__":
    main()
