"""Configuration layer and experiment drivers.

Config files are line-oriented sectioned key=value text:

    [params]   rho1=1 ... lambda=1 l=0.1 L=10 L0=4   (all 18 keys required)
    [grid]     n_per_unit=10
    [time]     t_end=10 safety=0.9 output_stride=10
    [model]    kind=bresse | timoshenko | vonkarman
    [ic]       phi0=-3/16*x^2 + 3/4*x ...            (missing keys mean 0)
    [forcing]  p1=sin(x) ...                         (missing keys mean 0)
    [probes]   positions=2, 6
    [output]   outdir=out snapshot_every=0

Unknown sections or keys are hard errors.  Expression values go through
the expression parser.  Four experiment kinds run on top: a single
simulation, the curvature-limit scan, the double-limit (chi) scan, and
the decay study.  All outputs are deterministic CSV (LF, '.' decimal,
shortest round-trip floats).
"""

from __future__ import annotations

import math
import os
import time as _time
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import diagnostics as diag
from . import exprs
from ._kernels import BACKEND, advance_bresse, advance_vonkarman
from .errors import ConfigError, ConfigSyntax, HeatSourcePresent, NonFiniteState, UnknownKey
from .grid import Grid, build_grid
from .interface import require_interface_stencil_room
from .params import PhysicalParams, ensure_valid
from .state import IC_KEYS, ForcingSet, sample_initial_state
from .stepping import stable_dt
from .vonkarman import (
    ChiScanConfig,
    chi_scaled_params,
    consistency_fields,
    sample_vonkarman_state,
    vk_operators,
    vonkarman_energy,
)

__all__ = [
    "RunConfig", "RunSummary", "RunResult", "ConvergenceTable", "DecayReport",
    "load_config", "resolve_config_path", "run_simulation", "run_l_limit_scan",
    "run_chi_scan", "run_decay", "write_series_csv", "write_table_csv",
]

_PARAM_KEYS = ("rho1", "rho2", "beta1", "beta2", "k1", "k2", "sigma", "nu1", "nu2",
               "alpha1", "alpha2", "gamma", "delta", "mu", "lambda", "l", "L", "L0")
_FORCING_KEYS = ("p1", "r1", "q1", "h1", "h2", "p2", "r2", "q2")
_MODELS = ("bresse", "timoshenko", "vonkarman")

PROBE_FIELDS = ("transversal", "shear", "longitudinal")

_SCAN_OUTPUT_INTERVALS = 200  # common output grid for runs with differing dt


@dataclass
class RunConfig:
    params: PhysicalParams
    n_per_unit: int
    t_end: float = 10.0
    safety: float = 0.9
    output_stride: int = 10
    model: str = "bresse"
    ic: dict = field(default_factory=dict)
    forcing: ForcingSet = field(default_factory=ForcingSet)
    probes: tuple = (2.0, 6.0)
    outdir: str = "out"
    snapshot_every: int = 0

    def with_(self, **kw) -> "RunConfig":
        return replace(self, **kw)


# --- config file parsing ---------------------------------------------------


def resolve_config_path(name: str) -> str:
    """Accept a filesystem path or a packaged preset name (paper-5.1, paper-5.2)."""
    if os.path.exists(name):
        return name
    base = name if name.endswith(".cfg") else name + ".cfg"
    preset = os.path.join(os.path.dirname(__file__), "presets", base)
    if os.path.exists(preset):
        return preset
    raise ConfigError(f"config file not found: {name!r}")


def load_config(path: str) -> RunConfig:
    """Parse a config file; unknown keys are hard errors, every params key
    is required, ic/forcing keys default to zero."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    sections: dict[str, dict[str, tuple[str, int]]] = {}
    current = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigSyntax(lineno, f"malformed section header {line!r}")
            name = line[1:-1].strip().lower()
            if name not in ("params", "grid", "time", "model", "ic", "forcing", "probes", "output"):
                raise ConfigSyntax(lineno, f"unknown section [{name}]")
            current = sections.setdefault(name, {})
            continue
        if "=" not in line:
            raise ConfigSyntax(lineno, f"expected key=value, got {line!r}")
        if current is None:
            raise ConfigSyntax(lineno, "key=value before any [section] header")
        key, val = line.split("=", 1)
        current[key.strip()] = (val.strip(), lineno)

    def take(section: str, key: str):
        return sections.get(section, {}).pop(key, None)

    psec = sections.get("params", {})
    missing = [k for k in _PARAM_KEYS if k not in psec]
    if missing:
        raise ConfigError(f"[params] missing required keys: {', '.join(missing)}")
    pvals = {}
    for key in _PARAM_KEYS:
        val, lineno = psec.pop(key)
        try:
            pvals[key] = float(val)
        except ValueError:
            raise ConfigSyntax(lineno, f"{key}: not a number: {val!r}")
    pvals["lam"] = pvals.pop("lambda")
    params = PhysicalParams(**pvals)

    def fnum(section, key, default, conv=float):
        entry = take(section, key)
        if entry is None:
            return default
        val, lineno = entry
        try:
            return conv(val)
        except ValueError:
            raise ConfigSyntax(lineno, f"{key}: not a number: {val!r}")

    n_per_unit = fnum("grid", "n_per_unit", None, int)
    if n_per_unit is None:
        raise ConfigError("[grid] n_per_unit is required")
    t_end = fnum("time", "t_end", 10.0)
    safety = fnum("time", "safety", 0.9)
    output_stride = fnum("time", "output_stride", 10, int)

    model = "bresse"
    entry = take("model", "kind")
    if entry is not None:
        model, lineno = entry[0].lower(), entry[1]
        if model not in _MODELS:
            raise ConfigSyntax(lineno, f"kind must be one of {_MODELS}, got {model!r}")

    ic = {}
    for key in list(sections.get("ic", {})):
        val, lineno = sections["ic"].pop(key)
        if key not in IC_KEYS:
            raise UnknownKey(key, lineno)
        ic[key] = _parse_expr_at(val, lineno)

    fvals = {}
    for key in list(sections.get("forcing", {})):
        val, lineno = sections["forcing"].pop(key)
        if key not in _FORCING_KEYS:
            raise UnknownKey(key, lineno)
        fvals[key] = _parse_expr_at(val, lineno)
    forcing = ForcingSet(**fvals)

    probes = (2.0, 6.0)
    entry = take("probes", "positions")
    if entry is not None:
        val, lineno = entry
        try:
            probes = tuple(float(tok) for tok in val.split(",") if tok.strip())
        except ValueError:
            raise ConfigSyntax(lineno, f"positions: not a comma list of numbers: {val!r}")

    entry = take("output", "outdir")
    outdir = entry[0] if entry is not None else "out"
    snapshot_every = fnum("output", "snapshot_every", 0, int)

    for name, sec in sections.items():
        for key, (_, lineno) in sec.items():
            raise UnknownKey(key, lineno)

    return RunConfig(params=params, n_per_unit=n_per_unit, t_end=t_end, safety=safety,
                     output_stride=output_stride, model=model, ic=ic, forcing=forcing,
                     probes=probes, outdir=outdir, snapshot_every=snapshot_every)


def _parse_expr_at(src: str, lineno: int):
    try:
        return exprs.parse(src)
    except Exception as exc:
        raise ConfigSyntax(lineno, f"bad expression {src!r}: {exc}")


# --- CSV output --------------------------------------------------------------


def _fmt_cell(v) -> str:
    if isinstance(v, str):
        return _quote(v)
    x = float(v)
    if not math.isfinite(x):
        raise NonFiniteState(where="CSV output")
    return repr(x)


def _quote(s: str) -> str:
    if any(c in s for c in ',"\n'):
        return '"' + s.replace('"', '""') + '"'
    return s


def write_series_csv(path: str, header: list, rows) -> None:
    """Deterministic CSV: LF endings, '.' decimal, shortest round-trip
    floats; first column must be t or x; NaN/Inf refused."""
    if not header or header[0] not in ("t", "x"):
        raise ValueError(f"series CSV must lead with a t or x column, got {header!r}")
    _write_csv(path, header, rows)


def write_table_csv(path: str, header: list, rows) -> None:
    """Same format as write_series_csv without the t/x leading-column rule."""
    _write_csv(path, header, rows)


def _write_csv(path: str, header: list, rows) -> None:
    ncol = len(header)
    out = [",".join(_quote(str(hdr)) for hdr in header)]
    for row in rows:
        if len(row) != ncol:
            raise ValueError(f"ragged CSV row: expected {ncol} cells, got {len(row)}")
        out.append(",".join(_fmt_cell(v) for v in row))
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(out) + "\n")


# --- single simulation --------------------------------------------------------


@dataclass
class RunSummary:
    model: str
    n_steps: int
    dt: float
    final_energy: float
    max_continuity_residual: float
    max_flux_residual: float
    wall_time_s: float
    backend: str = BACKEND


@dataclass
class RunResult:
    summary: RunSummary
    grid: Grid
    times: np.ndarray
    probe_series: dict                   # (pos, field) -> samples array
    samples: list                        # TrajectorySample | dict (vonkarman)
    residuals: list                      # TransmissionResidual per sample ([] for vonkarman)
    balance_residual: Optional[np.ndarray]
    consistency_norms: Optional[tuple]   # per-sample L2 norms (damped, undamped)
    gap: np.ndarray
    lyapunov: Optional[np.ndarray]
    state: object                        # final state


def _snap_dt(t_end: float, dt0: float) -> tuple[float, int]:
    """Largest dt <= dt0 that lands exactly on t_end."""
    n = max(1, math.ceil(t_end / dt0 - 1e-9))
    return t_end / n, n


def _probe_values(state, g: Grid, idx: int, model: str) -> dict:
    vals = {
        "transversal": float(state.trans[idx]),
        "longitudinal": float(state.longi[idx]),
    }
    if model == "vonkarman":
        vals["shear"] = float(-(state.trans[idx + 1] - state.trans[idx - 1]) / (2 * g.h))
    else:
        vals["shear"] = float(state.shear[idx])
    if idx <= g.interface_index:
        vals["temp_longitudinal"] = float(state.xi[idx])
        vals["temp_vertical"] = float(state.theta[idx])
    return vals


def _snapshot_rows(state, g: Grid, vk: bool) -> list:
    rows = []
    nd = g.nd
    for i in range(g.n_total):
        if vk:
            shear = 0.0
            if 0 < i < g.n_total - 1:
                shear = float(-(state.trans[i + 1] - state.trans[i - 1]) / (2 * g.h))
        else:
            shear = float(state.shear[i])
        row = [float(g.x[i]), float(state.trans[i]), shear, float(state.longi[i])]
        if i < nd:
            row += [float(state.xi[i]), float(state.theta[i])]
        else:
            row += ["", ""]
        rows.append(row)
    return rows


def run_simulation(cfg: RunConfig, write: bool = True,
                   dt_override: Optional[float] = None,
                   output_interval: Optional[float] = None) -> RunResult:
    """Build the grid, sample initial data, step to t_end, record probe
    series and diagnostics, and (optionally) write the CSV set.

    output_interval, when given, fixes the sample spacing in time; dt is
    snapped down to divide it exactly (the chi scan uses this so runs
    with different stability bounds share output times).
    """
    ensure_valid(cfg.params)
    g = build_grid(cfg.params.L, cfg.params.L0, cfg.n_per_unit)
    require_interface_stencil_room(g)
    p = cfg.params
    model = cfg.model
    if model == "timoshenko":
        p = p.with_(l=0.0)
    probe_idx = {pos: g.node_at(pos) for pos in cfg.probes}

    dt0 = dt_override if dt_override is not None else stable_dt(p, g, cfg.safety, model)
    if output_interval is not None:
        n_sub = max(1, math.ceil(output_interval / dt0 - 1e-9))
        dt = output_interval / n_sub
        stride = n_sub
        n_steps = max(1, round(cfg.t_end / output_interval)) * n_sub
    else:
        dt, n_steps = _snap_dt(cfg.t_end, dt0)
        stride = max(1, min(cfg.output_stride, n_steps))

    fs = cfg.forcing.sample(g)
    vk = model == "vonkarman"
    if vk:
        state = sample_vonkarman_state(g, cfg.ic)
        ops = vk_operators(p, g)
    else:
        state = sample_initial_state(g, cfg.ic)
        ops = None

    probe_series: dict = {}
    samples: list = []
    residuals: list = []
    gaps: list = []
    lyaps: list = []
    cons_d: list = []
    cons_u: list = []
    times: list = []
    snapshots: list = []  # (step, rows)
    heat_free = fs.heat_free

    def record(step: int, sample_no: int):
        t = step * dt
        times.append(t)
        for pos, idx in probe_idx.items():
            for fieldname, val in _probe_values(state, g, idx, model).items():
                probe_series.setdefault((pos, fieldname), []).append(val)
        if vk:
            e = vonkarman_energy(state, p, g, ops)
            e["dissipation_rate"] = _vk_dissipation(state, p, g)
            samples.append({"t": t, **e})
            gaps.append(math.sqrt(2.0 * (e["kinetic"] + e["thermal"])))
        else:
            rep = diag.total_energy(state, p, g)
            samples.append(diag.TrajectorySample(
                t=t, energy=rep,
                forcing_power=diag.forcing_power(state, fs, g),
                heat_power=diag.heat_source_power(state, fs, g),
            ))
            residuals.append(diag.transmission_residual(state, p, g))
            gaps.append(diag.stationarity_gap(state, p, g))
            if heat_free:
                lyaps.append(rep.total - diag.forcing_displacement_product(state, fs, g))
            dfield, ufield = consistency_fields(state, g)
            cons_d.append(math.sqrt(float(np.trapezoid(dfield**2, dx=g.h))))
            cons_u.append(math.sqrt(float(np.trapezoid(ufield**2, dx=g.h))))
        if cfg.snapshot_every > 0 and sample_no % cfg.snapshot_every == 0:
            snapshots.append((step, _snapshot_rows(state, g, vk)))

    t_start = _time.perf_counter()
    if cfg.snapshot_every == 0:
        snapshots.append((0, _snapshot_rows(state, g, vk)))
    record(0, 0)
    step = 0
    sample_no = 0
    while step < n_steps:
        block = min(stride, n_steps - step)
        if vk:
            status = advance_vonkarman(state, p, fs, g, dt, block, ops)
        else:
            status = advance_bresse(state, p, fs, g, dt, block, curved=(model == "bresse"))
        step += block
        state.t = step * dt
        if status >= 0:
            raise NonFiniteState(step=step - block + status, t=state.t)
        sample_no += 1
        record(step, sample_no)
    wall = _time.perf_counter() - t_start
    if cfg.snapshot_every == 0 or snapshots[-1][0] != n_steps:
        snapshots.append((n_steps, _snapshot_rows(state, g, vk)))

    balance = diag.energy_balance_residual(samples) if (not vk and len(samples) > 1) else None
    if vk:
        final_e = samples[-1]["total"]
        max_cont = max_flux = 0.0
    else:
        final_e = samples[-1].energy.total
        max_cont = max(r.max_continuity() for r in residuals)
        max_flux = max(r.max_flux() for r in residuals)

    summary = RunSummary(model=model, n_steps=n_steps, dt=dt, final_energy=final_e,
                         max_continuity_residual=max_cont, max_flux_residual=max_flux,
                         wall_time_s=wall)
    result = RunResult(summary=summary, grid=g, times=np.array(times),
                       probe_series={k: np.array(v) for k, v in probe_series.items()},
                       samples=samples, residuals=residuals, balance_residual=balance,
                       consistency_norms=(np.array(cons_d), np.array(cons_u)) if cons_d else None,
                       gap=np.array(gaps), lyapunov=np.array(lyaps) if lyaps else None,
                       state=state)
    if write:
        _write_run_outputs(cfg, result, snapshots)
    return result


def _vk_dissipation(state, p, g) -> float:
    xi_x = np.gradient(state.xi, g.h, edge_order=2)
    th_x = np.gradient(state.theta, g.h, edge_order=2)
    return float(np.trapezoid(p.mu * xi_x**2 + p.lam * th_x**2, dx=g.h))


def _write_run_outputs(cfg: RunConfig, result: RunResult, snapshots) -> None:
    out = cfg.outdir
    times = result.times
    for (pos, fieldname), series in sorted(result.probe_series.items()):
        path = os.path.join(out, f"probe_x{pos:g}_{fieldname}.csv")
        write_series_csv(path, ["t", fieldname], list(zip(times, series)))

    vk = cfg.model == "vonkarman"
    header = ["t", "total", "kinetic", "thermal", "potential", "dissipation_rate"]
    if vk:
        header += ["stationarity_gap"]
    else:
        if result.lyapunov is not None:
            header.append("lyapunov")
        header += ["stationarity_gap", "balance_residual",
                   "cont_trans", "cont_shear", "cont_longi",
                   "flux_shear", "flux_moment", "flux_axial"]
    rows = []
    for i, smp in enumerate(result.samples):
        if vk:
            rows.append([times[i], smp["total"], smp["kinetic"], smp["thermal"],
                         smp["potential"], smp["dissipation_rate"], result.gap[i]])
        else:
            e = smp.energy
            row = [times[i], e.total, e.kinetic, e.thermal, e.potential, e.dissipation_rate]
            if result.lyapunov is not None:
                row.append(result.lyapunov[i])
            r = result.residuals[i]
            row += [result.gap[i], result.balance_residual[i],
                    r.cont_trans, r.cont_shear, r.cont_longi,
                    r.flux_shear, r.flux_moment, r.flux_axial]
            rows.append(row)
    write_series_csv(os.path.join(out, "diagnostics.csv"), header, rows)

    for step, snap_rows in snapshots:
        path = os.path.join(out, f"snapshot_step{step:08d}.csv")
        write_series_csv(path, ["x", "transversal", "shear", "longitudinal",
                                "temp_longitudinal", "temp_vertical"], snap_rows)


# --- scans ---------------------------------------------------------------------


@dataclass
class ConvergenceTable:
    param_name: str
    columns: list
    rows: list  # (value, [diffs...])

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([r[1][j] for r in self.rows])

    def write(self, path: str) -> None:
        header = [self.param_name] + self.columns
        write_table_csv(path, header, [[v] + list(d) for v, d in self.rows])


def _sup_diff(a: RunResult, b: RunResult, pos: float, fieldname: str) -> float:
    sa = a.probe_series[(pos, fieldname)]
    sb = b.probe_series[(pos, fieldname)]
    if len(sa) != len(sb):
        raise ValueError("probe series have mismatched sampling; use a common output grid")
    return float(np.max(np.abs(sa - sb)))


def run_l_limit_scan(cfg: RunConfig, l_values) -> ConvergenceTable:
    """Run the curved model at each l against the straight-beam reference
    (l=0), on the identical grid and dt, and tabulate sup-over-t probe
    differences.  l=0 entries mean the straight-beam model itself."""
    base = cfg.with_(outdir=os.path.join(cfg.outdir, "l-scan"))
    dt_common = stable_dt(base.params, build_grid(base.params.L, base.params.L0, base.n_per_unit),
                          base.safety, "bresse")
    ref_cfg = base.with_(model="timoshenko", outdir=os.path.join(base.outdir, "l_0"))
    ref = run_simulation(ref_cfg, dt_override=dt_common)

    columns = [f"x={pos:g}:{fieldname}" for pos in cfg.probes for fieldname in PROBE_FIELDS]
    rows = []
    for l in l_values:
        if l == 0.0:
            run = run_simulation(ref_cfg.with_(outdir=os.path.join(base.outdir, "l_0_check")),
                                 dt_override=dt_common)
        else:
            sub = base.with_(model="bresse", params=base.params.with_(l=float(l)),
                             outdir=os.path.join(base.outdir, f"l_{l:g}"))
            run = run_simulation(sub, dt_override=dt_common)
        diffs = [_sup_diff(run, ref, pos, fieldname)
                 for pos in cfg.probes for fieldname in PROBE_FIELDS]
        rows.append((float(l), diffs))
    table = ConvergenceTable("l", columns, rows)
    table.write(os.path.join(base.outdir, "l_scan_table.csv"))
    return table


def run_chi_scan(cfg: RunConfig, chi_cfg: Optional[ChiScanConfig] = None) -> ConvergenceTable:
    """Run the curved model at each chi of the double-limit protocol
    against one von Karman reference run, on a common output time grid,
    and tabulate probe differences plus the constraint-consistency norms."""
    chi_cfg = chi_cfg or ChiScanConfig()
    outdir = os.path.join(cfg.outdir, "chi-scan")
    base_params = cfg.params.with_(l=chi_cfg.base_l, k1=chi_cfg.base_k1, k2=chi_cfg.base_k2)
    interval = cfg.t_end / _SCAN_OUTPUT_INTERVALS

    ref_cfg = cfg.with_(model="vonkarman", params=base_params,
                        outdir=os.path.join(outdir, "vonkarman"))
    ref = run_simulation(ref_cfg, output_interval=interval)

    compare = [(pos, fieldname) for pos in cfg.probes for fieldname in ("transversal", "longitudinal")]
    columns = [f"x={pos:g}:{fieldname}" for pos, fieldname in compare]
    columns += ["consistency_shear", "consistency_longitudinal"]
    rows = []
    for chi in chi_cfg.chi_values:
        sub = cfg.with_(model="bresse", params=chi_scaled_params(base_params, chi),
                        outdir=os.path.join(outdir, f"chi_{chi:g}"))
        run = run_simulation(sub, output_interval=interval)
        diffs = [_sup_diff(run, ref, pos, fieldname) for pos, fieldname in compare]
        cons_d, cons_u = run.consistency_norms
        diffs += [float(np.max(cons_d)), float(np.max(cons_u))]
        rows.append((float(chi), diffs))
    table = ConvergenceTable("chi", columns, rows)
    table.write(os.path.join(outdir, "chi_scan_table.csv"))
    return table


# --- decay study -----------------------------------------------------------------


@dataclass
class DecayReport:
    threshold_times: dict            # fraction -> first time gap <= fraction*gap(0), or None
    lyapunov_monotone: bool
    max_step_increase: float         # worst one-step Lyapunov increase observed
    tolerance: float                 # allowed per-step increase (1e-10 * E(0))
    times: np.ndarray
    gap: np.ndarray
    lyapunov: np.ndarray
    energy: np.ndarray


def run_decay(cfg: RunConfig, fractions=(0.1, 0.01, 0.001),
              strict_until: Optional[float] = None, write: bool = True,
              stop_when_below: Optional[float] = None) -> DecayReport:
    """Long-horizon decay study with the Lyapunov monotonicity check.

    Requires h1 = h2 = 0 (HeatSourcePresent otherwise).  The Lyapunov
    value is evaluated after every single step up to strict_until
    (default: the whole run) and per output stride afterwards; the gap
    thresholds are measured on the recorded samples.  stop_when_below
    ends the run early once the gap falls to that fraction of its initial
    value (so the report ends on the descending crossing).
    """
    if cfg.model == "vonkarman":
        raise ConfigError("decay study applies to the bresse/timoshenko models")
    ensure_valid(cfg.params)
    g = build_grid(cfg.params.L, cfg.params.L0, cfg.n_per_unit)
    require_interface_stencil_room(g)
    p = cfg.params if cfg.model != "timoshenko" else cfg.params.with_(l=0.0)
    fs = cfg.forcing.sample(g)
    if not fs.heat_free:
        raise HeatSourcePresent()

    dt0 = stable_dt(p, g, cfg.safety, cfg.model)
    dt, n_steps = _snap_dt(cfg.t_end, dt0)
    stride = max(1, min(cfg.output_stride, n_steps))
    strict_steps = n_steps if strict_until is None else min(n_steps, math.ceil(strict_until / dt))

    state = sample_initial_state(g, cfg.ic)
    curved = cfg.model == "bresse"

    def lyap_of() -> tuple[float, float]:
        rep = diag.total_energy(state, p, g)
        return rep.total, rep.total - diag.forcing_displacement_product(state, fs, g)

    E0, L0val = lyap_of()
    tol = 1e-10 * max(abs(E0), 1e-300)
    gap0 = diag.stationarity_gap(state, p, g)

    times = [0.0]
    gaps = [gap0]
    lyaps = [L0val]
    energies = [E0]
    max_increase = 0.0
    prev_L = L0val
    step = 0
    while step < n_steps:
        if step < strict_steps:
            block = 1
        else:
            block = min(stride - step % stride if step % stride else stride, n_steps - step)
        status = advance_bresse(state, p, fs, g, dt, block, curved=curved)
        step += block
        state.t = step * dt
        if status >= 0:
            raise NonFiniteState(step=step - block + status, t=state.t)
        E, L = lyap_of()
        max_increase = max(max_increase, L - prev_L)
        prev_L = L
        if step % stride == 0 or step == n_steps:
            times.append(step * dt)
            gap_now = diag.stationarity_gap(state, p, g)
            gaps.append(gap_now)
            lyaps.append(L)
            energies.append(E)
            if stop_when_below is not None and gap_now <= stop_when_below * gap0:
                break

    gaps_arr = np.array(gaps)
    thresholds = {}
    for frac in fractions:
        target = frac * gap0
        below = np.nonzero(gaps_arr <= target)[0]
        thresholds[frac] = float(np.array(times)[below[0]]) if below.size else None

    report = DecayReport(
        threshold_times=thresholds,
        lyapunov_monotone=max_increase <= tol,
        max_step_increase=max_increase,
        tolerance=tol,
        times=np.array(times), gap=gaps_arr, lyapunov=np.array(lyaps), energy=np.array(energies),
    )
    if write:
        rows = list(zip(report.times, report.energy, report.lyapunov, report.gap))
        write_series_csv(os.path.join(cfg.outdir, "decay.csv"),
                         ["t", "total", "lyapunov", "stationarity_gap"], rows)
        trows = [[f"{frac:g}", "" if t is None else t] for frac, t in thresholds.items()]
        write_table_csv(os.path.join(cfg.outdir, "decay_thresholds.csv"),
                        ["fraction", "first_time"], trows)
    return report
