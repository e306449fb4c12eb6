"""Command-line entry point.

Subcommands: run, l-scan, chi-scan, decay, validate.  Exit codes:
0 success, 2 configuration error, 3 numerical failure (non-finite
state), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import BressimError, ConfigError, NonFiniteState
from .harness import (
    load_config,
    resolve_config_path,
    run_chi_scan,
    run_decay,
    run_l_limit_scan,
    run_simulation,
)
from .params import validate_params
from .vonkarman import ChiScanConfig


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", required=True, help="config file path or preset name (paper-5.1, paper-5.2)")
    sp.add_argument("--out", help="output directory (overrides the config)")
    sp.add_argument("--t-end", type=float, help="final time (overrides the config)")
    sp.add_argument("--n-per-unit", type=int, help="grid nodes per unit length (overrides the config)")


def _load(args) -> "RunConfig":
    cfg = load_config(resolve_config_path(args.config))
    if args.out is not None:
        cfg = cfg.with_(outdir=args.out)
    if args.t_end is not None:
        cfg = cfg.with_(t_end=args.t_end)
    if args.n_per_unit is not None:
        cfg = cfg.with_(n_per_unit=args.n_per_unit)
    return cfg


def _floats(text: str) -> list:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="bressim",
                                 description="two-material thermoelastic arch-beam simulator")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("run", help="single simulation with CSV outputs")
    _add_common(sp)

    sp = sub.add_parser("l-scan", help="curvature singular-limit scan against the straight beam")
    _add_common(sp)
    sp.add_argument("--l-values", default="0.1,0.01,0.001", help="comma list, decreasing; 0 means the straight model")

    sp = sub.add_parser("chi-scan", help="double-limit scan against the von Karman model")
    _add_common(sp)
    sp.add_argument("--chi-values", default="1,10,100", help="comma list of scale factors >= 1")

    sp = sub.add_parser("decay", help="long-horizon decay study (requires zero heat sources)")
    _add_common(sp)

    sp = sub.add_parser("validate", help="check the parameter set and report the attractor condition")
    _add_common(sp)

    args = ap.parse_args(argv)
    try:
        cfg = _load(args)
        if args.command == "validate":
            report = validate_params(cfg.params)
            for err in report.errors:
                print(f"error: {err}")
            print(f"attractor_condition: {report.attractor_condition}")
            if report.errors:
                return 2
            print("parameters valid")
            return 0
        if args.command == "run":
            result = run_simulation(cfg)
            s = result.summary
            print(f"model={s.model} steps={s.n_steps} dt={s.dt:.6g} E(T)={s.final_energy:.6g} "
                  f"flux_residual={s.max_flux_residual:.3g} wall={s.wall_time_s:.2f}s "
                  f"backend={s.backend} -> {cfg.outdir}")
            return 0
        if args.command == "l-scan":
            table = run_l_limit_scan(cfg, _floats(args.l_values))
            _print_table(table)
            return 0
        if args.command == "chi-scan":
            table = run_chi_scan(cfg, ChiScanConfig(chi_values=tuple(_floats(args.chi_values))))
            _print_table(table)
            return 0
        if args.command == "decay":
            report = run_decay(cfg)
            print(f"lyapunov monotone: {report.lyapunov_monotone} "
                  f"(worst step increase {report.max_step_increase:.3e}, tol {report.tolerance:.3e})")
            for frac, t in sorted(report.threshold_times.items(), reverse=True):
                where = "not reached" if t is None else f"t={t:g}"
                print(f"gap below {frac:g} of initial: {where}")
            return 0
    except NonFiniteState as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, BressimError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    raise AssertionError("unreachable")


def _print_table(table) -> None:
    print(f"{table.param_name:>10} | " + " | ".join(table.columns))
    for value, diffs in table.rows:
        print(f"{value:>10g} | " + " | ".join(f"{d:.6e}" for d in diffs))


if __name__ == "__main__":
    sys.exit(main())
