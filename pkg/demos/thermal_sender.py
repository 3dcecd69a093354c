"""A hot sender raises the receiver's excitation probability.

With zero-mean thermal sender states there is no mean to read, yet the
receiver's excitation probability rises above its vacuum value inside the
lightcone, and more so for hotter senders.
"""

import numpy as np

from timelike_signals import cli
from timelike_signals.config import preset
from timelike_signals.scenarios import SenderInit, sweep_T2_states


def main():
    config = cli.scenario_config(preset("fig6").params)
    T2s = np.array([0.5, 0.6, 0.7, 0.8, 0.89])
    taus = (6e-3, 1.2e-2, 2.4e-2)
    tables = sweep_T2_states(
        config, T2s, [SenderInit("thermal", gap_over_temperature=tau) for tau in taus]
    )
    print("excess receiver excitation probability dPe")
    print(f"{'T2':>5} " + " ".join(f"{'gap/T=' + format(tau, 'g'):>14}" for tau in taus))
    for i, T2 in enumerate(T2s):
        print(f"{T2:5.2f} " + " ".join(f"{table[i].delta_pe:14.3e}" for table in tables))


if __name__ == "__main__":
    main()
