"""Regenerate every named preset as a CSV table.

Equivalent to running ``timelike-signals <command> --preset <name> --out
<name>.csv`` for each preset.  Pass an output directory as the only argument
(default ``preset_tables``).
"""

import sys
import time
from pathlib import Path

from timelike_signals import cli
from timelike_signals.config import PRESET_NAMES, preset


def main(out_dir="preset_tables"):
    out = Path(out_dir)
    out.mkdir(exist_ok=True)
    for name in PRESET_NAMES:
        start = time.perf_counter()
        rc = preset(name)
        code = cli.main([rc.command, "--preset", name, "--out", str(out / f"{name}.csv")])
        print(f"{name:15s} exit {code}  {time.perf_counter() - start:6.1f}s")


if __name__ == "__main__":
    main(*sys.argv[1:])
