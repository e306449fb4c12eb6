import filecmp
import os

import numpy as np
import pytest

from bressim.cli import main as cli_main
from bressim.errors import ConfigError, ConfigSyntax, NonFiniteState, UnknownKey
from bressim.harness import (
    load_config,
    resolve_config_path,
    run_l_limit_scan,
    run_simulation,
    write_series_csv,
    write_table_csv,
)
from bressim.state import ForcingSet


def test_load_section51_preset():
    cfg = load_config(resolve_config_path("paper-5.1"))
    assert cfg.params.l == 0.1
    assert cfg.params.k2 == 4.0
    assert cfg.params.lam == 1.0
    assert cfg.probes == (2.0, 6.0)
    assert cfg.model == "bresse"
    assert cfg.t_end == 10.0


def test_load_section52_preset():
    cfg = load_config(resolve_config_path("paper-5.2"))
    assert (cfg.params.l, cfg.params.k1, cfg.params.k2) == (0.1, 0.4, 0.1)


def test_empty_ic_forcing_defaults(tmp_path):
    cfg_text = MINIMAL
    path = tmp_path / "c.cfg"
    path.write_text(cfg_text)
    cfg = load_config(str(path))
    assert cfg.ic == {}
    assert cfg.forcing == ForcingSet()


MINIMAL = """
[params]
rho1=1
rho2=1
beta1=2
beta2=2
k1=1
k2=4
sigma=2
nu1=4
nu2=8
alpha1=1
alpha2=1
gamma=1
delta=1
mu=1
lambda=1
l=0.1
L=10
L0=4
[grid]
n_per_unit=10
"""


def test_unknown_key_is_hard_error(tmp_path):
    path = tmp_path / "c.cfg"
    path.write_text(MINIMAL + "\n[params]\nrho3=1\n")
    with pytest.raises(UnknownKey) as err:
        load_config(str(path))
    assert err.value.name == "rho3"


def test_missing_param_reported(tmp_path):
    path = tmp_path / "c.cfg"
    path.write_text(MINIMAL.replace("sigma=2\n", ""))
    with pytest.raises(ConfigError) as err:
        load_config(str(path))
    assert "sigma" in str(err.value)


def test_bad_expression_points_at_line(tmp_path):
    path = tmp_path / "c.cfg"
    path.write_text(MINIMAL + "[ic]\nphi0 = sin(x\n")
    with pytest.raises(ConfigSyntax):
        load_config(str(path))


def test_unknown_section_and_stray_line(tmp_path):
    path = tmp_path / "c.cfg"
    path.write_text("[nonsense]\nfoo=1\n")
    with pytest.raises(ConfigSyntax):
        load_config(str(path))
    path.write_text("foo=1\n")
    with pytest.raises(ConfigSyntax):
        load_config(str(path))


# --- CSV contract ----------------------------------------------------------


def test_series_csv_golden_bytes(tmp_path):
    path = tmp_path / "t.csv"
    write_series_csv(str(path), ["t", "value"], [[0.0, 0.1], [0.5, 2.0]])
    assert path.read_bytes() == b"t,value\n0.0,0.1\n0.5,2.0\n"


def test_shortest_round_trip_formatting(tmp_path):
    path = tmp_path / "t.csv"
    write_series_csv(str(path), ["t", "v"], [[0.1, 1 / 3]])
    body = path.read_text()
    assert "0.1," in body
    assert repr(1 / 3) in body


def test_csv_refuses_nan(tmp_path):
    with pytest.raises(NonFiniteState):
        write_series_csv(str(tmp_path / "t.csv"), ["t", "v"], [[0.0, float("nan")]])


def test_series_csv_requires_t_or_x_leader(tmp_path):
    with pytest.raises(ValueError):
        write_series_csv(str(tmp_path / "t.csv"), ["value", "t"], [[1.0, 0.0]])
    write_table_csv(str(tmp_path / "ok.csv"), ["l", "d"], [[0.1, 1.0]])


def test_ragged_rows_rejected(tmp_path):
    with pytest.raises(ValueError):
        write_series_csv(str(tmp_path / "t.csv"), ["t", "v"], [[0.0]])


# --- runs --------------------------------------------------------------------


def test_zero_run_writes_zero_columns(tmp_path):
    cfg = load_config(resolve_config_path("paper-5.1")).with_(
        ic={}, forcing=ForcingSet(), t_end=0.2, outdir=str(tmp_path / "z"))
    run_simulation(cfg)
    data = np.genfromtxt(tmp_path / "z" / "probe_x2_transversal.csv", delimiter=",", names=True)
    assert np.all(data["transversal"] == 0.0)
    diagnostics = (tmp_path / "z" / "diagnostics.csv").read_text().splitlines()
    for line in diagnostics[1:]:
        cells = [float(c) for c in line.split(",")[1:]]
        assert all(c == 0.0 for c in cells)


def test_timoshenko_model_forces_zero_curvature(tmp_path):
    cfg = load_config(resolve_config_path("paper-5.1")).with_(
        model="timoshenko", t_end=0.05, outdir=str(tmp_path / "t"))
    res = run_simulation(cfg, write=False)
    assert res.summary.model == "timoshenko"


def test_run_outputs_are_deterministic(tmp_path):
    cfg = load_config(resolve_config_path("paper-5.1")).with_(t_end=0.2)
    run_simulation(cfg.with_(outdir=str(tmp_path / "a")))
    run_simulation(cfg.with_(outdir=str(tmp_path / "b")))
    for name in sorted(os.listdir(tmp_path / "a")):
        assert filecmp.cmp(tmp_path / "a" / name, tmp_path / "b" / name, shallow=False), name


def test_probe_off_grid_rejected(tmp_path):
    cfg = load_config(resolve_config_path("paper-5.1")).with_(probes=(2.05,), t_end=0.05)
    with pytest.raises(Exception):
        run_simulation(cfg, write=False)


def test_l_scan_self_comparison_and_determinism(tmp_path):
    cfg = load_config(resolve_config_path("paper-5.1")).with_(
        t_end=0.2, outdir=str(tmp_path / "scan"))
    table = run_l_limit_scan(cfg, [0.0])
    assert len(table.rows) == 1
    assert all(d == 0.0 for d in table.rows[0][1])

    table2 = run_l_limit_scan(cfg, [0.05, 0.05])
    assert table2.rows[0][1] == table2.rows[1][1]


def test_snapshot_files_written(tmp_path):
    cfg = load_config(resolve_config_path("paper-5.1")).with_(
        t_end=0.1, outdir=str(tmp_path / "s"), snapshot_every=1)
    run_simulation(cfg)
    snaps = [f for f in os.listdir(tmp_path / "s") if f.startswith("snapshot_")]
    assert len(snaps) >= 2
    first = (tmp_path / "s" / sorted(snaps)[0]).read_text().splitlines()
    assert first[0] == "x,transversal,shear,longitudinal,temp_longitudinal,temp_vertical"
    # undamped rows carry empty temperature cells
    assert first[-1].endswith(",,")


# --- CLI ----------------------------------------------------------------------


def test_cli_validate_ok(capsys):
    assert cli_main(["validate", "--config", "paper-5.1"]) == 0
    out = capsys.readouterr().out
    assert "attractor_condition: False" in out


def test_cli_validate_bad_params(tmp_path, capsys):
    path = tmp_path / "bad.cfg"
    path.write_text(MINIMAL.replace("k1=1", "k1=0"))
    assert cli_main(["validate", "--config", str(path)]) == 2


def test_cli_missing_config():
    assert cli_main(["run", "--config", "no-such-file.cfg"]) == 2


def test_cli_run_and_overrides(tmp_path, capsys):
    rc = cli_main(["run", "--config", "paper-5.1", "--t-end", "0.05",
                   "--out", str(tmp_path / "o")])
    assert rc == 0
    assert (tmp_path / "o" / "diagnostics.csv").exists()


def test_cli_cfl_violation_exit_code(tmp_path):
    cfg = resolve_config_path("paper-5.1")
    text = open(cfg).read().replace("safety = 0.9", "safety = 3.6")
    bad = tmp_path / "cfl.cfg"
    bad.write_text(text)
    rc = cli_main(["run", "--config", str(bad), "--t-end", "5", "--out", str(tmp_path / "x")])
    assert rc == 3


def test_stability_envelope_to_t20():
    # the full experiment setup stays finite over [0, 20] at safety 0.9
    cfg = load_config(resolve_config_path("paper-5.1")).with_(t_end=20.0)
    res = run_simulation(cfg, write=False)
    assert res.state.is_finite()
    assert np.isfinite(res.samples[-1].energy.total)


def test_decay_zero_initial_data_reports_zero_times():
    from bressim.harness import run_decay

    cfg = load_config(resolve_config_path("paper-5.1")).with_(
        ic={}, forcing=ForcingSet(), t_end=0.1)
    rep = run_decay(cfg, write=False)
    assert np.all(rep.gap == 0.0)
    assert all(t == 0.0 for t in rep.threshold_times.values())
