"""Benchmark the stepping kernels: compiled core vs pure-numpy fallback.

Usage: python -m bressim.benchmark [--steps N] [--n-per-unit N]
"""

from __future__ import annotations

import argparse
import time

from ._kernels import _core, py_backend
from .grid import build_grid
from .harness import load_config, resolve_config_path
from .state import sample_initial_state
from .stepping import stable_dt
from .vonkarman import sample_vonkarman_state, vk_constant_forces, vk_operators


def _time_it(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(steps: int, n_per_unit: int) -> None:
    rows = []
    for preset, model in (("paper-5.1", "bresse"), ("paper-5.2", "vonkarman")):
        cfg = load_config(resolve_config_path(preset)).with_(n_per_unit=n_per_unit)
        p = cfg.params
        g = build_grid(p.L, p.L0, cfg.n_per_unit)
        fs = cfg.forcing.sample(g)
        dt = stable_dt(p, g, 0.9, model)

        if model == "bresse":
            mk = lambda: sample_initial_state(g, cfg.ic)
            py = lambda s: py_backend.advance_bresse(s, p, fs, g, dt, steps)
            if _core is not None:
                def cy(s):
                    return _core.bresse_block(
                        s.trans, s.shear, s.longi, s.trans_t, s.shear_t, s.longi_t,
                        s.xi, s.theta, fs.p1, fs.r1, fs.q1, fs.h1, fs.h2,
                        fs.p2, fs.r2, fs.q2,
                        p.rho1, p.beta1, p.k1, p.nu1, p.rho2, p.beta2, p.k2, p.nu2,
                        p.sigma, p.alpha1, p.alpha2, p.gamma, p.delta, p.mu, p.lam,
                        p.l, g.n_total, g.interface_index, g.h, dt, steps)
        else:
            ops = vk_operators(p, g)
            f_trans, f_long = vk_constant_forces(p, fs, g)
            mk = lambda: sample_vonkarman_state(g, cfg.ic)
            py = lambda s: py_backend.advance_vonkarman(s, p, fs, g, dt, steps, ops)
            if _core is not None:
                def cy(s):
                    return _core.vonkarman_block(
                        s.trans, s.trans_t, s.longi, s.longi_t, s.xi, s.theta,
                        fs.h1, fs.h2, ops.mu_bend, ops.rho_node, ops.beta_cell,
                        f_trans, f_long,
                        p.sigma, p.alpha1, p.alpha2, p.gamma, p.delta, p.mu, p.lam,
                        g.n_total, g.interface_index, g.h, dt, steps)

        t_py = _time_it(lambda: py(mk()))
        t_cy = _time_it(lambda: cy(mk())) if _core is not None else float("nan")
        rows.append((model, g.n_total, t_py, t_cy))

    print(f"{'model':<12} {'nodes':>6} {'python':>12} {'cython':>12} {'speedup':>9}")
    for model, nodes, t_py, t_cy in rows:
        py_rate = steps / t_py
        if t_cy == t_cy:  # not NaN
            print(f"{model:<12} {nodes:>6} {py_rate:>9.0f}/s {steps / t_cy:>9.0f}/s "
                  f"{t_py / t_cy:>8.1f}x")
        else:
            print(f"{model:<12} {nodes:>6} {py_rate:>9.0f}/s {'n/a':>12} {'n/a':>9}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="kernel backend benchmark")
    ap.add_argument("--steps", type=int, default=5000)
    ap.add_argument("--n-per-unit", type=int, default=10)
    args = ap.parse_args(argv)
    run(args.steps, args.n_per_unit)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
