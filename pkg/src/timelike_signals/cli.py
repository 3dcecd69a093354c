"""Command-line entry point writing CSV tables.

Every subcommand takes exactly one of ``--preset NAME`` or ``--config PATH``
and writes a CSV table (header always present, ``#`` comment lines first)
to ``--out`` or standard output.
"""

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import classical, config as cfg, fock, scenarios, udw
from .cavity import (
    CavitySpec,
    cavity_commutator_closed,
    cavity_commutator_modesum,
    minkowski_commutator,
)
from .dynamics import DetectorSpec, GeneratorSpec, evolve_window
from .gaussian import apply_symplectic, embed, make_squeezed_state, make_vacuum

SIGNIFICANT = 9

SCENARIO_COLUMNS = [
    "T2",
    "q_B_mean",
    "p_B_mean",
    "r",
    "sigma_qq",
    "sigma_pp",
    "sigma_qp",
    "Pe_signal",
    "Pe_vacuum",
    "dPe",
    "timelike",
]

SIGN_NOTE = (
    "value c in [phi(t1,x1), phi(t,x)] = i c; the resummed four-floor form is used with an "
    "overall minus sign, which the mode sum confirms gives c = +1/2 in the future lightcone"
)


class Table:
    def __init__(self, header, rows, comments=()):
        self.header = list(header)
        self.rows = list(rows)
        self.comments = list(comments)

    def column(self, name):
        k = self.header.index(name)
        return [row[k] for row in self.rows]


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if v == 0:
            return "0"  # drop the sign of negative zero
        return f"{v:.{SIGNIFICANT}g}"
    return str(v)


def write_csv(table, stream):
    for line in table.comments:
        stream.write(f"# {line}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([_fmt(v) for v in row])


def to_csv_text(table):
    buf = io.StringIO()
    write_csv(table, buf)
    return buf.getvalue()


# ------------------------------------------------------------ builders

def sender_init(state):
    kind = state["kind"]
    if kind == "thermal":
        return scenarios.SenderInit("thermal", gap_over_temperature=state["gap_over_temperature"])
    if kind == "squeezed":
        return scenarios.SenderInit(
            "squeezed", tuple(state["mean"]), squeeze=state["squeeze"], angle=state["angle"]
        )
    return scenarios.SenderInit("displaced", tuple(state["mean"]))


def scenario_config(params, variant=None, T2=None):
    """ScenarioConfig for a validated scenario or sweep parameter set."""
    variant = variant or {}
    length = params["length"]
    gap = cfg.gap_from(params)
    lam = params["coupling"]
    s, r = params["sender"], params["receiver"]
    t2 = T2 if T2 is not None else r["t_on"]
    sender = DetectorSpec(
        gap, lam, variant.get("sender_position", s["position"]), s["t_on"], s["t_off"]
    )
    receiver = DetectorSpec(gap, lam, variant.get("receiver_position", r["position"]), r["t_on"], t2)
    return scenarios.ScenarioConfig(
        CavitySpec(length, params["n_modes"]),
        sender,
        receiver,
        sender_init(variant.get("sender_state", params["sender_state"])),
        step=params.get("step"),
    )


def _scenario_row(res):
    cov = res.receiver_cov
    return [
        res.T2,
        res.receiver_mean[0],
        res.receiver_mean[1],
        res.r,
        cov[0, 0],
        cov[1, 1],
        cov[0, 1],
        res.pe_signal,
        res.pe_vacuum,
        res.delta_pe,
        int(res.timelike),
    ]


def _run_scenario(params, threads=1):
    T2s = cfg.grid_values(params["T2"])
    variants = params.get("variants")
    comments = [f"gap = {params['gap_over_pi']:g} pi / L; lengths and times in units of L"]
    if not variants:
        results = scenarios.sweep_T2_states(
            scenario_config(params), T2s, [sender_init(params["sender_state"])]
        )[0]
        return Table(SCENARIO_COLUMNS, [_scenario_row(r) for r in results], comments)
    # variants at the same positions share one integration
    groups = {}
    for k, v in enumerate(variants):
        key = (v.get("sender_position"), v.get("receiver_position"))
        groups.setdefault(key, []).append(k)

    def run_group(indices):
        base = scenario_config(params, variants[indices[0]])
        inits = [
            sender_init(variants[k].get("sender_state", params["sender_state"])) for k in indices
        ]
        return indices, scenarios.sweep_T2_states(base, T2s, inits)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            done = list(pool.map(run_group, groups.values()))
    else:
        done = [run_group(ix) for ix in groups.values()]
    tables = {}
    for indices, results in done:
        tables.update(zip(indices, results))
    rows = []
    for k, v in enumerate(variants):
        rows.extend([v["label"]] + _scenario_row(r) for r in tables[k])
    return Table(["variant"] + SCENARIO_COLUMNS, rows, comments)


def _run_sweep(params, threads=1):
    base = scenario_config(params, T2=params["T2"])
    parameter = params["parameter"]
    values = params["values"]
    comments = [f"gap = {params['gap_over_pi']:g} pi / L; lengths and times in units of L"]
    if parameter == "T2":
        results = scenarios.sweep(base, "T2", values)
        return Table(SCENARIO_COLUMNS, [_scenario_row(r) for r in results], comments)
    if parameter == "sender_init":
        inits = [sender_init(v) for v in values]
        results = scenarios.sweep(base, "sender_init", inits)
        labels = [i.label() for i in inits]
    else:
        results = scenarios.sweep(base, "receiver_position", values, threads=threads)
        labels = [float(v) for v in values]
    rows = [[lab] + _scenario_row(r) for lab, r in zip(labels, results)]
    return Table([parameter] + SCENARIO_COLUMNS, rows, comments)


def _run_commutator(params):
    spec = CavitySpec(params["length"], params["n_modes"])
    ts = np.array(cfg.grid_values(params["t"]))
    xs = np.array(cfg.grid_values(params["x"]))
    T, X = np.meshgrid(ts, xs, indexing="ij")
    t1, x1 = params["t1"], params["x1"]
    form = params["form"]
    if form == "closed":
        vals = cavity_commutator_closed(spec, t1, x1, T, X)
    elif form == "minkowski":
        events = np.stack([T, X], axis=-1)
        vals = minkowski_commutator(np.array([t1, x1]), events)
    else:
        smoothing = "fejer" if form == "fejer" else "none"
        vals = cavity_commutator_modesum(spec, t1, x1, T, X, smoothing=smoothing)
    vals = np.broadcast_to(vals, T.shape)
    rows = [[t, x, v] for t, x, v in zip(T.ravel(), X.ravel(), vals.ravel())]
    return Table(["t", "x", "value"], rows, [SIGN_NOTE])


def _run_energy_density(params):
    xs = np.array(cfg.grid_values(params["x"]))
    weights = params["excited_weights"]
    rows = []
    for w in weights:
        p = udw.UdwParams(params["gap"], params["coupling"], params["duration"], w)
        prof = udw.energy_profile(p, params["t"], xs)
        lead = [w] if len(weights) > 1 else []
        rows.extend(lead + [x, d] for x, d in prof.rows())
    header = (["excited_weight"] if len(weights) > 1 else []) + ["x", "density"]
    return Table(header, rows, ["lengths and times in units of 1/gap"])


def _run_total_energy(params):
    wts = cfg.grid_values(params["omega_T"])
    weights = params["excited_weights"]
    rows = []
    for w in weights:
        for wt in wts:
            p = udw.UdwParams(params["gap"], params["coupling"], wt / params["gap"], w)
            lead = [w] if len(weights) > 1 else []
            rows.append(lead + [wt, udw.total_energy(p)])
    header = (["excited_weight"] if len(weights) > 1 else []) + ["omega_T", "energy"]
    return Table(header, rows)


def _run_classical(params):
    dx = params["dx"]
    lo, hi = params["window"]
    ts = np.array(cfg.grid_values(params["t"]))
    xs = np.array(cfg.grid_values(params["x"]))
    reach = max(lo - (xs.min() - ts.max()), (xs.max() + ts.max()) - hi, 0.0)
    pad = int(math.ceil(reach / dx)) + 2
    b = params["bump"]

    def bump(x):
        return classical.gaussian_bump(x, b["center"], b["width"], b["height"])

    def zero(x):
        return np.zeros_like(x)

    phi0, pi0 = (bump, zero) if b["field"] == "phi" else (zero, bump)
    data = classical.InitialData.from_functions(phi0, pi0, lo, hi, dx, pad)
    T, X = np.meshgrid(ts, xs, indexing="ij")
    phi = classical.evolve_phi(data, T, X)
    energy = classical.energy_density_boundary(data, T, X)
    rows = [list(r) for r in zip(T.ravel(), X.ravel(), phi.ravel(), energy.ravel())]
    note = "phi fills the interior of the lightcone of the bump; energy_density sits on its edges"
    return Table(["t", "x", "phi", "energy_density"], rows, [note])


def oracle_comparison(params):
    """Fock-basis and symplectic moments for one detector and the lowest cavity mode."""
    gap = cfg.gap_from(params)
    fconf = fock.FockConfig(
        gap=gap,
        coupling=params["coupling"],
        position=params["position"],
        mode=1,
        length=params["length"],
        n_max=params["n_max"],
        t0=params["t0"],
        t1=params["t1"],
        step=params.get("step"),
    )
    mean = tuple(params["mean"])
    m_fock, c_fock = fock.evolve_fock(fconf, mean, params["squeeze"], params["angle"])
    spec = GeneratorSpec(
        CavitySpec(params["length"], 1),
        (DetectorSpec(gap, params["coupling"], params["position"], params["t0"], params["t1"]),),
    )
    local = make_squeezed_state(params["squeeze"], params["angle"], mean)
    state = embed(spec.layout, {0: local}, make_vacuum(spec.layout))
    S = evolve_window(spec, params["t0"], params["t1"])
    final = apply_symplectic(state, S)
    return (m_fock, c_fock), (final.mean, final.cov)


def _run_oracle(params):
    (mf, cf), (me, ce) = oracle_comparison(params)
    names = ["q_d", "q_mode", "p_d", "p_mode"]
    rows = [[f"mean_{n}", a, b, abs(a - b)] for n, a, b in zip(names, mf, me)]
    for i in range(4):
        for j in range(i, 4):
            a, b = cf[i, j], ce[i, j]
            rows.append([f"cov_{names[i]}_{names[j]}", a, b, abs(a - b)])
    return Table(["quantity", "fock", "symplectic", "abs_diff"], rows)


RUNNERS = {
    "commutator": _run_commutator,
    "energy-density": _run_energy_density,
    "total-energy": _run_total_energy,
    "classical-demo": _run_classical,
    "scenario": _run_scenario,
    "sweep": _run_sweep,
    "oracle": _run_oracle,
}


def with_overrides(run_config, modes=None, step=None):
    """Apply ``--modes`` and ``--step`` and revalidate."""
    data = run_config.to_dict()
    errors = []
    if modes is not None:
        if "n_modes" not in data:
            errors.append(f"--modes does not apply to {run_config.command}")
        data["n_modes"] = modes
    if step is not None:
        if run_config.command not in ("scenario", "sweep", "oracle"):
            errors.append(f"--step does not apply to {run_config.command}")
        data["step"] = step
    if errors:
        raise cfg.ConfigError(errors)
    return cfg.parse_config(json.dumps(data))


def run(run_config, threads=1):
    """Execute a RunConfig and return its Table."""
    runner = RUNNERS[run_config.command]
    if run_config.command in ("scenario", "sweep"):
        return runner(run_config.params, threads=threads)
    return runner(run_config.params)


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=cfg.PRESET_NAMES)
    source.add_argument("--config", metavar="PATH")
    common.add_argument("--out", metavar="PATH", help="CSV destination (default: stdout)")
    common.add_argument("--modes", type=int, metavar="N", help="override the cavity mode count")
    common.add_argument("--step", type=float, metavar="H", help="override the time step")
    common.add_argument("--threads", type=int, default=1, metavar="K")
    common.add_argument(
        "--dump-config", action="store_true", help="print the resolved configuration and exit"
    )
    parser = argparse.ArgumentParser(
        prog="timelike-signals", description="Tables of field commutators, energies and signals."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in cfg.COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        if args.preset:
            rc = cfg.preset(args.preset)
            if rc.command != args.command:
                raise cfg.ConfigError(
                    [f"preset {args.preset} belongs to the {rc.command} subcommand"]
                )
        else:
            rc = cfg.load_config(args.config)
            if rc.command != args.command:
                raise cfg.ConfigError(
                    [f"command: config is for {rc.command}, not {args.command}"]
                )
        if args.threads < 1:
            raise cfg.ConfigError(["--threads must be at least 1"])
        rc = with_overrides(rc, args.modes, args.step)
    except cfg.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    if args.dump_config:
        sys.stdout.write(rc.to_text())
        return 0
    try:
        table = run(rc, threads=args.threads)
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.preset and args.preset in cfg.PRESET_NOTES:
        table.comments.append(cfg.PRESET_NOTES[args.preset])
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(table, fh)
    else:
        write_csv(table, sys.stdout)
    return 0
