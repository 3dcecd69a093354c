"""Run configurations: JSON parsing, validation and built-in presets.

A configuration is a JSON object with a ``"command"`` key naming the
subcommand plus that subcommand's parameters.  Every parameter must be given
explicitly; nothing is filled in by default.  Lengths are in units of the
cavity length ``L`` and energies in ``1/L``, except for the free-space
``energy-density`` and ``total-energy`` commands, which use units of the
detector gap.
"""

import json
import math
from dataclasses import dataclass

import jsonschema

COMMANDS = (
    "commutator",
    "energy-density",
    "total-energy",
    "classical-demo",
    "scenario",
    "sweep",
    "oracle",
)


class ConfigError(ValueError):
    """Invalid configuration; ``errors`` lists every problem found."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("invalid configuration:\n  " + "\n  ".join(self.errors))


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict

    def to_dict(self):
        return {"command": self.command, **self.params}

    def to_text(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}
_NONNEG = {"type": "number", "minimum": 0}
_GRID = {
    "oneOf": [
        {"type": "array", "items": _NUM, "minItems": 1},
        {
            "type": "object",
            "properties": {"start": _NUM, "stop": _NUM, "num": {"type": "integer", "minimum": 1}},
            "required": ["start", "stop", "num"],
            "additionalProperties": False,
        },
    ]
}
_SENDER_STATE = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["displaced", "thermal", "squeezed"]},
        "mean": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2},
        "gap_over_temperature": _POS,
        "squeeze": _NONNEG,
        "angle": _NUM,
    },
    "required": ["kind"],
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"kind": {"const": "displaced"}}}, "then": {"required": ["mean"]}},
        {
            "if": {"properties": {"kind": {"const": "thermal"}}},
            "then": {"required": ["gap_over_temperature"]},
        },
        {
            "if": {"properties": {"kind": {"const": "squeezed"}}},
            "then": {"required": ["mean", "squeeze", "angle"]},
        },
    ],
}
_CAVITY = {
    "length": _POS,
    "n_modes": {"type": "integer", "minimum": 1},
}
_DETECTORS = {
    "gap_over_pi": _POS,
    "coupling": _NONNEG,
    "sender": {
        "type": "object",
        "properties": {"position": _NONNEG, "t_on": _NONNEG, "t_off": _NONNEG},
        "required": ["position", "t_on", "t_off"],
        "additionalProperties": False,
    },
    "receiver": {
        "type": "object",
        "properties": {"position": _NONNEG, "t_on": _NONNEG},
        "required": ["position", "t_on"],
        "additionalProperties": False,
    },
    "sender_state": _SENDER_STATE,
    "step": {"oneOf": [_POS, {"type": "null"}]},
}
_DETECTOR_KEYS = ["gap_over_pi", "coupling", "sender", "receiver", "sender_state", "step"]
_VARIANT = {
    "type": "object",
    "properties": {
        "label": {"type": "string", "minLength": 1},
        "sender_position": _NONNEG,
        "receiver_position": _NONNEG,
        "sender_state": _SENDER_STATE,
    },
    "required": ["label"],
    "additionalProperties": False,
}


def _command_schema(props, required):
    props = {"command": {"type": "string"}, **props}
    return {
        "type": "object",
        "properties": props,
        "required": ["command"] + required,
        "additionalProperties": False,
    }


SCHEMAS = {
    "commutator": _command_schema(
        {
            **_CAVITY,
            "form": {"enum": ["closed", "modesum", "fejer", "minkowski"]},
            "t1": _NUM,
            "x1": _NONNEG,
            "t": _GRID,
            "x": _GRID,
        },
        ["length", "n_modes", "form", "t1", "x1", "t", "x"],
    ),
    "energy-density": _command_schema(
        {
            "gap": _POS,
            "coupling": _NONNEG,
            "duration": _POS,
            "excited_weights": {
                "type": "array",
                "items": {"type": "number", "minimum": 0, "maximum": 1},
                "minItems": 1,
            },
            "t": _NUM,
            "x": _GRID,
        },
        ["gap", "coupling", "duration", "excited_weights", "t", "x"],
    ),
    "total-energy": _command_schema(
        {
            "gap": _POS,
            "coupling": _NONNEG,
            "excited_weights": {
                "type": "array",
                "items": {"type": "number", "minimum": 0, "maximum": 1},
                "minItems": 1,
            },
            "omega_T": _GRID,
        },
        ["gap", "coupling", "excited_weights", "omega_T"],
    ),
    "classical-demo": _command_schema(
        {
            "dx": _POS,
            "window": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2},
            "bump": {
                "type": "object",
                "properties": {
                    "field": {"enum": ["phi", "pi"]},
                    "center": _NUM,
                    "width": _POS,
                    "height": _NUM,
                },
                "required": ["field", "center", "width", "height"],
                "additionalProperties": False,
            },
            "t": _GRID,
            "x": _GRID,
        },
        ["dx", "window", "bump", "t", "x"],
    ),
    "scenario": _command_schema(
        {
            **_CAVITY,
            **_DETECTORS,
            "T2": _GRID,
            "variants": {"type": "array", "items": _VARIANT, "minItems": 1},
        },
        ["length", "n_modes"] + _DETECTOR_KEYS[:-1] + ["T2"],
    ),
    "sweep": _command_schema(
        {
            **_CAVITY,
            **_DETECTORS,
            "T2": _POS,
            "parameter": {"enum": ["T2", "receiver_position", "sender_init"]},
            "values": {"type": "array", "minItems": 1},
        },
        ["length", "n_modes"] + _DETECTOR_KEYS[:-1] + ["T2", "parameter", "values"],
    ),
    "oracle": _command_schema(
        {
            "length": _POS,
            "gap_over_pi": _POS,
            "coupling": _NONNEG,
            "position": _NONNEG,
            "n_max": {"type": "integer", "minimum": 8},
            "t0": _NONNEG,
            "t1": _NONNEG,
            "step": {"oneOf": [_POS, {"type": "null"}]},
            "mean": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2},
            "squeeze": _NONNEG,
            "angle": _NUM,
        },
        ["length", "gap_over_pi", "coupling", "position", "n_max", "t0", "t1", "mean", "squeeze", "angle"],
    ),
}
SCHEMAS["sweep"]["allOf"] = [
    {
        "if": {"properties": {"parameter": {"const": "sender_init"}}, "required": ["parameter"]},
        "then": {"properties": {"values": {"items": _SENDER_STATE}}},
        "else": {"properties": {"values": {"items": _NUM}}},
    }
]


def grid_values(spec):
    """Expand a grid given as a list or as ``{start, stop, num}``."""
    if isinstance(spec, dict):
        n = spec["num"]
        if n == 1:
            return [float(spec["start"])]
        h = (spec["stop"] - spec["start"]) / (n - 1)
        return [spec["start"] + k * h for k in range(n)]
    return [float(v) for v in spec]


def _where(error):
    path = "/".join(str(p) for p in error.absolute_path)
    return path or "<root>"


def _semantic_errors(command, p):
    errors = []
    length = p.get("length", 1.0)

    def inside(key, x):
        if not 0 <= x <= length:
            errors.append(f"{key}: position {x} lies outside the cavity [0, {length}]")

    if command in ("scenario", "sweep"):
        s, r = p["sender"], p["receiver"]
        inside("sender/position", s["position"])
        inside("receiver/position", r["position"])
        if s["t_on"] > s["t_off"]:
            errors.append(f"sender: t_on {s['t_on']} is after t_off {s['t_off']}")
        if s["t_off"] > r["t_on"]:
            errors.append(
                f"receiver/t_on: receiver switches on at {r['t_on']} before the sender "
                f"switches off at {s['t_off']}"
            )
        for k, v in enumerate(p.get("variants", [])):
            for key in ("sender_position", "receiver_position"):
                if key in v:
                    inside(f"variants/{k}/{key}", v[key])
        T2s = grid_values(p["T2"]) if command == "scenario" else [p["T2"]]
        if command == "sweep" and p["parameter"] == "T2":
            T2s = p["values"]
        if command == "sweep" and p["parameter"] == "receiver_position":
            for k, x in enumerate(p["values"]):
                inside(f"values/{k}", x)
        if min(T2s) < r["t_on"]:
            errors.append(f"T2: {min(T2s)} is before the receiver switch-on {r['t_on']}")
    elif command == "commutator":
        inside("x1", p["x1"])
        xs = grid_values(p["x"])
        if min(xs) < 0 or max(xs) > length:
            errors.append(f"x: grid leaves the cavity [0, {length}]")
    elif command == "total-energy":
        if min(grid_values(p["omega_T"])) <= 0:
            errors.append("omega_T: every entry must be positive")
    elif command == "oracle":
        inside("position", p["position"])
        if p["t0"] > p["t1"]:
            errors.append(f"t1: window end {p['t1']} is before its start {p['t0']}")
    elif command == "classical-demo":
        lo, hi = p["window"]
        if not lo < hi:
            errors.append("window: lower edge must be below the upper edge")
        elif p["dx"] > (hi - lo) / 2:
            errors.append("dx: grid spacing too coarse for the window")
        if min(grid_values(p["t"])) < 0:
            errors.append("t: times must be non-negative")
    return errors


def validate(data):
    """Return the list of problems with a decoded configuration (empty if valid)."""
    if not isinstance(data, dict):
        return ["<root>: configuration must be a JSON object"]
    command = data.get("command")
    if command not in SCHEMAS:
        return [f"command: expected one of {', '.join(COMMANDS)}, got {command!r}"]
    validator = jsonschema.Draft202012Validator(SCHEMAS[command])
    errors = sorted(validator.iter_errors(data), key=lambda e: (list(e.absolute_path), e.message))
    messages = [f"{_where(e)}: {e.message}" for e in errors]
    if messages:
        return messages
    params = {k: v for k, v in data.items() if k != "command"}
    return _semantic_errors(command, params)


def parse_config(text):
    """Parse and validate JSON configuration text into a RunConfig."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if not text.strip():
        raise ConfigError(["<root>: empty document"])
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from None
    errors = validate(data)
    if errors:
        raise ConfigError(errors)
    return RunConfig(data["command"], {k: v for k, v in data.items() if k != "command"})


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


# ---------------------------------------------------------------- presets

def _cavity_run(command, **params):
    return RunConfig(command, {"length": 1.0, "n_modes": 200, **params})


def _signal(sender_state, T2, variants=None, sender=None, receiver=None, gap_over_pi=10.0,
            coupling=0.075):
    params = {
        "gap_over_pi": gap_over_pi,
        "coupling": coupling,
        "sender": sender or {"position": 0.5, "t_on": 0.0, "t_off": 0.3},
        "receiver": receiver or {"position": 0.6, "t_on": 0.46},
        "sender_state": sender_state,
        "T2": T2,
    }
    if variants:
        params["variants"] = variants
    return _cavity_run("scenario", **params)


_P = {"kind": "displaced", "mean": [0.0, 1.0]}
_Q = {"kind": "displaced", "mean": [1.0, 0.0]}
_POSITIONS = [
    {"label": "antinode-antinode", "sender_position": 0.45, "receiver_position": 0.55},
    {"label": "node-node", "sender_position": 0.5, "receiver_position": 0.6},
    {"label": "node-antinode", "sender_position": 0.5, "receiver_position": 0.55},
]
_APPA_T2 = {"start": 0.46, "stop": 4.0, "num": 355}
_APPB = {
    "sender": {"position": 0.45, "t_on": 0.0, "t_off": 0.4},
    "receiver": {"position": 0.55, "t_on": 0.51},
    "gap_over_pi": 1.0,
    "coupling": 0.01,
}
_APPB_T2 = {"start": 0.51, "stop": 2.0, "num": 150}
_FIG4_T2 = {"start": 0.46, "stop": 1.2, "num": 149}


def _presets():
    return {
        "fig1": RunConfig(
            "energy-density",
            {
                "gap": 1.0,
                "coupling": 1.0,
                "duration": 25.0,
                "excited_weights": [1.0, 0.0],
                "t": 30.0,
                "x": {"start": -40.0, "stop": 40.0, "num": 1601},
            },
        ),
        "fig2": RunConfig(
            "total-energy",
            {
                "gap": 1.0,
                "coupling": 1.0,
                "excited_weights": [1.0, 0.0],
                "omega_T": {"start": 0.1, "stop": 100.0, "num": 1000},
            },
        ),
        "fig3": _cavity_run(
            "commutator",
            form="closed",
            t1=0.0,
            x1=0.3,
            t={"start": -3.0, "stop": 3.0, "num": 241},
            x={"start": 0.0, "stop": 1.0, "num": 81},
        ),
        "fig4": _signal(_P, _FIG4_T2),
        "fig5": _signal(_P, _FIG4_T2),
        "fig6": _signal({"kind": "thermal", "gap_over_temperature": 6e-3}, _FIG4_T2),
        "appA_vacuumPe": _signal(
            {"kind": "displaced", "mean": [0.0, 0.0]},
            {"start": 0.02, "stop": 4.0, "num": 200},
            variants=[
                {"label": "antinode", "receiver_position": 0.55},
                {"label": "node", "receiver_position": 0.6},
            ],
            sender={"position": 0.5, "t_on": 0.0, "t_off": 0.0},
            receiver={"position": 0.55, "t_on": 0.0},
        ),
        "appA_meanP": _signal(_P, _APPA_T2, variants=_POSITIONS),
        "appA_meanQ": _signal(_Q, _APPA_T2, variants=_POSITIONS),
        "appA_thermal": _signal(
            {"kind": "thermal", "gap_over_temperature": 6e-3}, _APPA_T2, variants=_POSITIONS
        ),
        "appB_mean": _signal(
            _P,
            _APPB_T2,
            variants=[{"label": "p", "sender_state": _P}, {"label": "q", "sender_state": _Q}],
            **_APPB,
        ),
        "appB_thermal": _signal(
            {"kind": "thermal", "gap_over_temperature": 4e-3}, _APPB_T2, **_APPB
        ),
    }


PRESET_NAMES = tuple(_presets())

PRESET_NOTES = {
    "fig3": "x1 = 0.3 L is a representative choice; the source point is not fixed by the figure",
    "appA_vacuumPe": "the sender window is empty, so every row is a sender-free run",
}


def preset(name):
    """Fresh RunConfig for a built-in preset."""
    table = _presets()
    if name not in table:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    return table[name]


def gap_from(params):
    return params["gap_over_pi"] * math.pi / params["length"]
