import json
import subprocess
import sys
import time

import numpy as np
import pytest

from timelike_signals import cli
from timelike_signals.config import (
    PRESET_NAMES,
    ConfigError,
    RunConfig,
    grid_values,
    parse_config,
    preset,
)


def small_scenario(**over):
    data = preset("fig5").to_dict()
    data.update(n_modes=20, T2=[0.5, 0.6, 0.7])
    data.update(over)
    return data


def write(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data, encoding="utf-8")
    return str(path)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_presets_round_trip(name):
    rc = preset(name)
    again = parse_config(rc.to_text())
    assert again == rc
    assert isinstance(again, RunConfig)


def test_fig5_preset_is_verbatim():
    p = preset("fig5").params
    assert p["sender"] == {"position": 0.5, "t_on": 0.0, "t_off": 0.3}
    assert p["receiver"] == {"position": 0.6, "t_on": 0.46}
    assert p["gap_over_pi"] == 10.0 and p["coupling"] == 0.075 and p["n_modes"] == 200
    assert p["sender_state"]["mean"] == [0.0, 1.0]
    assert preset("fig4") == preset("fig5")


def test_unknown_preset():
    with pytest.raises(KeyError):
        preset("fig99")


def test_negative_coupling_names_the_key():
    data = preset("fig5").to_dict()
    data["coupling"] = -0.1
    with pytest.raises(ConfigError) as exc:
        parse_config(json.dumps(data))
    assert any(e.startswith("coupling") for e in exc.value.errors)


@pytest.mark.parametrize("text", ["", "   \n", "{}", "[]", '{"command": "scenario"}'])
def test_empty_or_bare_documents_are_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_syntax_error_reports_position():
    with pytest.raises(ConfigError) as exc:
        parse_config('{\n  "command": "scenario",\n  "length": 1.0,,\n}')
    assert "line 3" in str(exc.value)


def test_all_problems_reported_together():
    data = preset("fig5").to_dict()
    data["coupling"] = -1
    data["n_modes"] = 0
    data["colour"] = "red"
    with pytest.raises(ConfigError) as exc:
        parse_config(json.dumps(data))
    assert len(exc.value.errors) >= 3
    assert any("colour" in e for e in exc.value.errors)


def test_cross_field_checks():
    data = preset("fig5").to_dict()
    data["sender"]["t_off"] = 0.5
    data["receiver"]["position"] = 1.5
    with pytest.raises(ConfigError) as exc:
        parse_config(json.dumps(data))
    text = str(exc.value)
    assert "receiver/t_on" in text and "receiver/position" in text


def test_sweep_value_types_follow_parameter():
    data = small_scenario(T2=0.7, parameter="sender_init", values=[1.0])
    data.pop("variants", None)
    with pytest.raises(ConfigError):
        parse_config(json.dumps({**data, "command": "sweep"}))


def test_grid_values():
    assert grid_values({"start": 0.0, "stop": 1.0, "num": 3}) == [0.0, 0.5, 1.0]
    assert grid_values({"start": 2.0, "stop": 5.0, "num": 1}) == [2.0]
    assert grid_values([1, 2]) == [1.0, 2.0]


def test_csv_format():
    table = cli.Table(["a", "b", "c"], [[1.0 / 3.0, -0.0, "x"], [12345678912.0, 2, True]], ["note"])
    text = cli.to_csv_text(table)
    assert "\r" not in text
    lines = text.split("\n")
    assert lines[0] == "# note"
    assert lines[1] == "a,b,c"
    assert lines[2] == "0.333333333,0,x"
    assert lines[3] == "1.23456789e+10,2,1"


def run_main(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_energy_density_preset(tmp_path, capsys):
    out = tmp_path / "fig1.csv"
    code, _, _ = run_main(["energy-density", "--preset", "fig1", "--out", str(out)], capsys)
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == "excited_weight,x,density"
    assert len(lines) == 2 + 2 * 1601


def test_commutator_preset_carries_sign_note(capsys):
    code, out, _ = run_main(["commutator", "--preset", "fig3"], capsys)
    assert code == 0
    assert "minus sign" in out.splitlines()[0]
    body = [l for l in out.splitlines() if not l.startswith("#")]
    assert body[0] == "t,x,value"
    values = {float(l.split(",")[2]) for l in body[1:]}
    assert values <= {0.0, 0.5, -0.5, 1.0, -1.0}


def test_total_energy_and_dump_config(capsys):
    code, out, _ = run_main(["total-energy", "--preset", "fig2", "--dump-config"], capsys)
    assert code == 0
    assert parse_config(out) == preset("fig2")


def test_scenario_from_config_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, small_scenario())
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert cli.main(["scenario", "--config", path, "--out", str(a)]) == 0
    assert cli.main(["scenario", "--config", path, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[1].split(",") == cli.SCENARIO_COLUMNS
    assert len(lines) == 5


def test_variants_get_a_label_column(tmp_path, capsys):
    data = small_scenario(
        variants=[
            {"label": "p", "sender_state": {"kind": "displaced", "mean": [0.0, 1.0]}},
            {"label": "q", "sender_state": {"kind": "displaced", "mean": [1.0, 0.0]}},
            {"label": "far", "receiver_position": 0.7},
        ]
    )
    code, out, _ = run_main(["scenario", "--config", write(tmp_path, data), "--threads", "2"], capsys)
    assert code == 0
    rows = [l.split(",") for l in out.splitlines() if not l.startswith("#")]
    assert rows[0][0] == "variant"
    assert [r[0] for r in rows[1:]] == ["p"] * 3 + ["q"] * 3 + ["far"] * 3


def test_modes_override(tmp_path, capsys):
    path = write(tmp_path, small_scenario(T2=[0.6]))
    code, out, _ = run_main(["scenario", "--config", path, "--modes", "10", "--dump-config"], capsys)
    assert code == 0 and json.loads(out)["n_modes"] == 10
    code, _, err = run_main(["energy-density", "--preset", "fig1", "--modes", "10"], capsys)
    assert code == 2 and "--modes" in err


def test_preset_for_wrong_subcommand(capsys):
    code, _, err = run_main(["scenario", "--preset", "fig1"], capsys)
    assert code == 2 and "energy-density" in err


def test_bad_config_file_exit_code(tmp_path, capsys):
    code, _, err = run_main(["scenario", "--config", write(tmp_path, "{")], capsys)
    assert code == 2 and "line 1" in err
    code, _, _ = run_main(["scenario", "--config", str(tmp_path / "missing.json")], capsys)
    assert code == 2


def test_module_errors_exit_nonzero(tmp_path, capsys):
    data = small_scenario(coupling=10.0, step=0.2, n_modes=40)
    code, _, err = run_main(["scenario", "--config", write(tmp_path, data)], capsys)
    assert code == 1 and "symplecticity" in err


def test_sweep_subcommand(tmp_path, capsys):
    base = small_scenario(T2=0.7)
    data = {**base, "command": "sweep", "parameter": "receiver_position", "values": [0.7, 0.65]}
    code, out, _ = run_main(["sweep", "--config", write(tmp_path, data), "--threads", "2"], capsys)
    assert code == 0
    rows = [l.split(",") for l in out.splitlines() if not l.startswith("#")]
    assert rows[0][0] == "receiver_position"
    assert [r[0] for r in rows[1:]] == ["0.7", "0.65"]
    states = [{"kind": "thermal", "gap_over_temperature": 0.5}, {"kind": "displaced", "mean": [0, 1]}]
    data = {**base, "command": "sweep", "parameter": "sender_init", "values": states}
    code, out, _ = run_main(["sweep", "--config", write(tmp_path, data)], capsys)
    assert code == 0
    assert "thermal(0.5)" in out and "displaced(0,1)" in out


def test_classical_demo(tmp_path, capsys):
    data = {
        "command": "classical-demo",
        "dx": 0.01,
        "window": [-3.0, 3.0],
        "bump": {"field": "pi", "center": 0.0, "width": 0.2, "height": 1.0},
        "t": [0.0, 2.0],
        "x": {"start": -2.0, "stop": 2.0, "num": 5},
    }
    code, out, _ = run_main(["classical-demo", "--config", write(tmp_path, data)], capsys)
    assert code == 0
    rows = [l.split(",") for l in out.splitlines() if not l.startswith("#")]
    assert rows[0] == ["t", "x", "phi", "energy_density"]
    late = {float(r[1]): (float(r[2]), float(r[3])) for r in rows[1:] if r[0] == "2"}
    # inside the cone the amplitude sits on a plateau but carries no energy
    assert late[0.0][0] == pytest.approx(0.5 * 0.2 * np.sqrt(2 * np.pi), rel=1e-6)
    assert abs(late[0.0][1]) < 1e-30


def test_oracle_subcommand(tmp_path, capsys):
    data = {
        "command": "oracle",
        "length": 1.0,
        "gap_over_pi": 1.0,
        "coupling": 0.05,
        "position": 0.5,
        "n_max": 10,
        "t0": 0.0,
        "t1": 0.5,
        "step": 0.01,
        "mean": [0.0, 1.0],
        "squeeze": 0.0,
        "angle": 0.0,
    }
    code, out, _ = run_main(["oracle", "--config", write(tmp_path, data)], capsys)
    assert code == 0
    rows = [l.split(",") for l in out.splitlines()]
    assert rows[0] == ["quantity", "fock", "symplectic", "abs_diff"]
    assert max(float(r[3]) for r in rows[1:]) < 1e-3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "timelike_signals", "total-energy", "--preset", "fig2"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.splitlines()[0] == "excited_weight,omega_T,energy"


def test_all_presets_end_to_end_within_budget(tmp_path):
    start = time.perf_counter()
    for name in PRESET_NAMES:
        out = tmp_path / f"{name}.csv"
        assert cli.main([preset(name).command, "--preset", name, "--out", str(out)]) == 0
        assert out.read_text().count("\n") > 2
    assert time.perf_counter() - start < 600
