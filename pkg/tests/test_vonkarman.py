import numpy as np
import pytest

from bressim import exprs
from bressim._kernels import advance_vonkarman
from bressim.grid import build_grid
from bressim.state import ForcingSamples, ForcingSet, zero_state
from bressim.stepping import StepControl, stable_dt
from bressim.vonkarman import (
    ChiScanConfig,
    chi_scaled_params,
    consistency_fields,
    longitudinal_accel,
    sample_vonkarman_state,
    transversal_force,
    vk_operators,
    vonkarman_energy,
    vonkarman_step,
    zero_vk_state,
    _curvature,
)
from conftest import section51_params


def vk_params(**overrides):
    return section51_params(**overrides)


def section52_ic():
    p = exprs.parse
    return {
        "phi0": p("-13/640*x^4 + 9/40*x^3 - 23/40*x^2"),
        "phi1": p("-1/32*x^3 + 3/16*x^2"),
        "u0": p("41/2160*x^4 - 68/135*x^3 + 823/180*x^2 - 439/27*x + 520/27"),
        "u1": p("1/108*x^3 - 7/36*x^2 + 10/9*x - 25/27"),
        "omega0": p("0"), "omega1": p("3/5*x"),
        "w0": p("0"), "w1": p("-2/5*x + 4"),
        "xi0": p("x^2 - 4*x"), "theta0": p("x^3 - 8*x^2 + 16*x"),
    }


def test_zero_state_is_fixed_point():
    p = vk_params()
    g = build_grid(10.0, 4.0, 10)
    s = zero_vk_state(g)
    ctl = StepControl(dt=0.004, t_end=1.0)
    out = vonkarman_step(s, p, ForcingSet(), g, ctl)
    for arr in out.arrays():
        assert np.all(arr == 0.0)


def test_chi_scaling():
    base = vk_params(l=0.1, k1=0.4, k2=0.1)
    same = chi_scaled_params(base, 1.0)
    assert (same.l, same.k1, same.k2) == (0.1, 0.4, 0.1)
    ten = chi_scaled_params(base, 10.0)
    assert (ten.l, ten.k1, ten.k2) == (pytest.approx(0.01), pytest.approx(4.0), pytest.approx(1.0))
    thou = chi_scaled_params(base, 1000.0)
    assert (thou.l, thou.k1, thou.k2) == (pytest.approx(1e-4), pytest.approx(400.0), pytest.approx(100.0))
    with pytest.raises(ValueError):
        chi_scaled_params(base, 0.5)


def test_chi_scaling_is_monoid_action():
    base = vk_params(l=0.1, k1=0.4, k2=0.1)
    a = chi_scaled_params(chi_scaled_params(base, 5.0), 20.0)
    b = chi_scaled_params(base, 100.0)
    assert a.l == pytest.approx(b.l, rel=1e-14)
    assert a.k1 == pytest.approx(b.k1, rel=1e-14)
    assert a.k2 == pytest.approx(b.k2, rel=1e-14)
    assert ChiScanConfig().chi_values == (1.0, 10.0, 100.0, 1000.0)


def test_section52_initial_polynomials():
    g = build_grid(10.0, 4.0, 10)
    s = sample_vonkarman_state(g, section52_ic())
    # -13/640*16 + 9/40*8 - 23/40*4 = -0.825
    assert s.phi[g.node_at(2.0)] == pytest.approx(-0.825, abs=1e-13)
    # both segments meet at zero displacement and unit slope at the interface
    assert s.phi[-1] == pytest.approx(0.0, abs=1e-12)
    du = (s.u[1] - s.phi[-2]) / (2 * g.h)
    assert du == pytest.approx(1.0, abs=2e-2)  # central stencil, O(h^2)
    assert s.trans[0] == 0.0 and s.trans[-1] == 0.0


def test_consistency_fields():
    p = vk_params()
    g = build_grid(10.0, 4.0, 20)
    s = zero_state(g)
    d, u = consistency_fields(s, g)
    assert np.all(d == 0.0) and np.all(u == 0.0)

    # an exact pair psi = -phi_x leaves only the stencil truncation
    s.trans[: g.nd] = np.sin(g.xd)
    s.shear[: g.nd] = -np.cos(g.xd)
    d, _ = consistency_fields(s, g)
    assert np.max(np.abs(d)) < 2e-3  # O(h^2) at h=0.05

    ic = section52_ic()
    s2 = zero_state(g)
    s2.trans[: g.nd] = np.asarray(exprs.evaluate(ic["phi0"], g.xd), dtype=float)
    s2.shear[: g.nd] = np.asarray(
        exprs.evaluate(exprs.parse("-(-13/160*x^3 + 27/40*x^2 - 23/20*x)"), g.xd), dtype=float)
    d2, _ = consistency_fields(s2, g)
    assert np.max(np.abs(d2[1:-1])) < 5e-3


def test_forces_are_gradients_of_discrete_energy():
    p = vk_params(rho1=1.3, rho2=0.8, beta1=2.0, beta2=1.5)
    g = build_grid(10.0, 4.0, 5)
    ops = vk_operators(p, g)
    rng = np.random.default_rng(0)
    n = g.n_total
    y = rng.normal(size=n) * 0.3
    z = rng.normal(size=n) * 0.3
    y[0] = y[-1] = z[0] = z[-1] = 0.0
    xi = np.zeros(g.nd)
    th = np.zeros(g.nd)
    fs = ForcingSamples.zeros(g)

    def V(yv, zv):
        h = g.h
        kap = _curvature(yv, h)
        Dy = np.diff(yv) / h
        Zc = np.diff(zv) / h + 0.5 * Dy * Dy
        return 0.5 * h * float(np.sum(ops.mu_bend * kap**2)) + 0.5 * p.sigma * h * float(np.sum(Zc**2))

    F = transversal_force(y, z, xi, th, p, fs, g, ops)
    a_long = longitudinal_accel(y, z, xi, p, fs, g, ops)
    eps = 1e-6
    for j in range(1, n - 1):
        yp, ym = y.copy(), y.copy()
        yp[j] += eps
        ym[j] -= eps
        fd = -(V(yp, z) - V(ym, z)) / (2 * eps)
        assert F[j - 1] == pytest.approx(fd, abs=2e-5)
        zp, zm = z.copy(), z.copy()
        zp[j] += eps
        zm[j] -= eps
        fd = -(V(y, zp) - V(y, zm)) / (2 * eps)
        assert a_long[j] * g.h * ops.rho_node[j] == pytest.approx(fd, abs=2e-5)


def test_energy_drift_without_thermal_coupling():
    # Hamiltonian structure: with the thermal channel off and no forcing the
    # discrete mechanical energy drifts by far less than 1e-3 relative over
    # t in [0, 1] at the working resolution
    p = vk_params(alpha1=1e-300, alpha2=1e-300)
    g = build_grid(10.0, 4.0, 10)
    ic = {k: v for k, v in section52_ic().items() if k not in ("xi0", "theta0")}
    s = sample_vonkarman_state(g, ic)
    ops = vk_operators(p, g)
    fs = ForcingSamples.zeros(g)
    dt = stable_dt(p, g, 0.9, model="vonkarman")
    e0 = vonkarman_energy(s, p, g, ops)["mechanical"]
    worst = 0.0
    for _ in range(10):
        status = advance_vonkarman(s, p, fs, g, dt, max(1, int(0.1 / dt)), ops)
        assert status == -1
        worst = max(worst, abs(vonkarman_energy(s, p, g, ops)["mechanical"] - e0))
    assert worst / e0 < 1e-3


def test_invariants_preserved_each_step():
    p = vk_params()
    g = build_grid(10.0, 4.0, 10)
    s = sample_vonkarman_state(g, section52_ic())
    f = ForcingSet.from_strings(p1="sin(x)", r1="x+4", q1="sin(x)", h1="x",
                                p2="cos(x)", r2="2*x", q2="cos(x)")
    ctl = StepControl(dt=stable_dt(p, g, 0.9, model="vonkarman"), t_end=1.0)
    for _ in range(20):
        s = vonkarman_step(s, p, f, g, ctl)  # check_invariants runs inside
    assert s.xi[0] == 0.0 and s.xi[-1] == 0.0
    assert s.theta[0] == 0.0 and s.theta[-1] == 0.0


def test_single_beam_reduces_to_monolithic_oracle():
    # equal coefficients across the interface, thermal channel off, equal
    # loads: the transmission rows collapse to interior stencils, so the
    # trajectory must match an independently coded no-interface beam
    p = vk_params(rho1=1.0, rho2=1.0, beta1=2.0, beta2=2.0, nu1=4.0, nu2=4.0,
                  alpha1=1e-300, alpha2=1e-300)
    g = build_grid(10.0, 4.0, 10)
    n, h = g.n_total, g.h
    x = g.x

    ic = {
        "phi0": exprs.parse("x^2*(10-x)^2/500"), "u0": exprs.parse("x^2*(10-x)^2/500"),
        "phi1": exprs.parse("0"), "u1": exprs.parse("0"),
        "omega0": exprs.parse("x*(10-x)/50"), "w0": exprs.parse("x*(10-x)/50"),
        "omega1": exprs.parse("0"), "w1": exprs.parse("0"),
    }
    f = ForcingSet.from_strings(p1="sin(x)", p2="sin(x)", r1="x/5", r2="x/5",
                                q1="cos(x)", q2="cos(x)")
    s = sample_vonkarman_state(g, ic)
    fs = f.sample(g)
    dt = 0.8 * stable_dt(p, g, 0.9, model="vonkarman")
    nsteps = 50
    status = advance_vonkarman(s, p, fs, g, dt, nsteps)
    assert status == -1

    # --- independent monolithic integrator (dense algebra, no interface) ---
    rho, beta, nu, sig = 1.0, 2.0, 4.0, p.sigma
    y = np.zeros(n)
    y[:] = x**2 * (10 - x) ** 2 / 500
    z = x * (10 - x) / 50.0
    y[0] = y[-1] = z[0] = z[-1] = 0.0
    yt = np.zeros(n)
    zt = np.zeros(n)
    pay = np.sin(x)
    ray = x / 5.0
    qay = np.cos(x)

    M = np.zeros((n - 2, n - 2))
    for jj in range(n - 2):
        M[jj, jj] = rho * h + 2 * beta / h
        if jj + 1 < n - 2:
            M[jj, jj + 1] = -beta / h
            M[jj + 1, jj] = -beta / h

    def accel(yv, zv):
        # classical clamped-beam 5-point fourth derivative with reflection
        # ghosts y(-h)=y(h), y(L+h)=y(L-h)
        Y = np.concatenate(([yv[1]], yv, [yv[-2]]))
        d4 = (Y[:-4] - 4 * Y[1:-3] + 6 * Y[2:-2] - 4 * Y[3:-1] + Y[4:]) / h**4
        F = -nu * h * d4
        Dy = np.diff(yv) / h
        Zc = np.diff(zv) / h + 0.5 * Dy * Dy
        fmem = sig * Dy * Zc
        F = F + (fmem[1:] - fmem[:-1]) + h * pay[1:-1] + 0.5 * (ray[2:] - ray[:-2])
        a = np.zeros(n)
        a[1:-1] = np.linalg.solve(M, F)
        az = np.zeros(n)
        az[1:-1] = (sig * (Zc[1:] - Zc[:-1]) + h * qay[1:-1]) / (rho * h)
        return a, az

    ay, az = accel(y, z)
    for _ in range(nsteps):
        y = y + dt * yt + 0.5 * dt * dt * ay
        z = z + dt * zt + 0.5 * dt * dt * az
        ay2, az2 = accel(y, z)
        yt = yt + 0.5 * dt * (ay + ay2)
        zt = zt + 0.5 * dt * (az + az2)
        ay, az = ay2, az2

    assert np.max(np.abs(s.trans - y)) <= 1e-8
    assert np.max(np.abs(s.longi - z)) <= 1e-8
    assert np.max(np.abs(s.trans_t - yt)) <= 1e-8


def test_heat_coupling_dissipates():
    # with the thermal channel on, zero sources, the total energy decreases
    p = vk_params()
    g = build_grid(10.0, 4.0, 10)
    s = sample_vonkarman_state(g, section52_ic())
    fs = ForcingSamples.zeros(g)
    ops = vk_operators(p, g)
    e0 = vonkarman_energy(s, p, g, ops)["total"]
    dt = stable_dt(p, g, 0.9, model="vonkarman")
    advance_vonkarman(s, p, fs, g, dt, int(2.0 / dt), ops)
    e1 = vonkarman_energy(s, p, g, ops)["total"]
    assert e1 < e0
