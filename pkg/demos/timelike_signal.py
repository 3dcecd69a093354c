"""A receiver reads a sender's message strictly inside the lightcone.

Sender A (x = 0.5) couples during [0, 0.3]; receiver B (x = 0.6) switches on
at 0.46, after every direct ray from A has passed.  The receiver's final
quadrature mean still depends on A's initial state: that is timelike
signaling.  Displacing A in momentum signals far more strongly than in
position, and the reflected ray at T2 = 0.9 marks the return of
lightlike contact.
"""

import numpy as np

from timelike_signals import cli
from timelike_signals.config import preset
from timelike_signals.scenarios import SenderInit, sweep_T2_states


def main():
    config = cli.scenario_config(preset("fig4").params)
    T2s = np.round(np.arange(0.5, 1.21, 0.05), 3)
    p_res, q_res = sweep_T2_states(
        config, T2s, [SenderInit("displaced", (0.0, 1.0)), SenderInit("displaced", (1.0, 0.0))]
    )
    print(f"{'T2':>5} {'separation':>11} {'r, mean (0,1)':>14} {'r, mean (1,0)':>14}")
    for T2, p, q in zip(T2s, p_res, q_res):
        print(f"{T2:5.2f} {p.separation:>11} {p.r:14.3e} {q.r:14.3e}")


if __name__ == "__main__":
    main()
