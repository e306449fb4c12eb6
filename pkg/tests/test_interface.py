import numpy as np
import pytest

from bressim.grid import build_grid
from bressim.interface import interface_matrix, interface_traces, solve_interface
from bressim.diagnostics import transmission_residual
from bressim.state import zero_state
from conftest import compatible_interface_fields, section51_params


def sampled_state(g, fns):
    phi, psi, omega, u, v, w = fns
    s = zero_state(g)
    s.trans[: g.nd] = phi(g.xd)
    s.shear[: g.nd] = psi(g.xd)
    s.longi[: g.nd] = omega(g.xd)
    ii = g.interface_index
    s.trans[ii + 1:] = u(g.xu[1:])
    s.shear[ii + 1:] = v(g.xu[1:])
    s.longi[ii + 1:] = w(g.xu[1:])
    return s


def test_flat_field_is_fixed_point():
    p = section51_params(k1=2.0, k2=2.0, nu1=3.0, nu2=3.0)
    g = build_grid(10.0, 4.0, 10)
    s = zero_state(g)
    for arr, c in ((s.trans, 0.7), (s.shear, -1.2), (s.longi, 0.4)):
        arr[:] = c
    out = solve_interface(s, p, g)
    ii = g.interface_index
    assert out.trans[ii] == pytest.approx(0.7, abs=1e-14)
    assert out.shear[ii] == pytest.approx(-1.2, abs=1e-14)
    assert out.longi[ii] == pytest.approx(0.4, abs=1e-14)


def test_linear_profile_exact():
    # one-sided second-order stencils are exact on linear data
    p = section51_params(k1=3.0, k2=3.0, l=0.0)
    g = build_grid(10.0, 4.0, 10)
    s = zero_state(g)
    a = 0.37
    s.trans[:] = a * g.x
    s.trans[g.interface_index] = 123.0  # clobber the trace; the solve must restore it
    out = solve_interface(s, p, g)
    assert out.trans[g.interface_index] == pytest.approx(a * 4.0, abs=1e-13)


def test_trace_report():
    p = section51_params()
    g = build_grid(10.0, 4.0, 10)
    s = sampled_state(g, compatible_interface_fields(p))
    out = solve_interface(s, p, g)
    tr = interface_traces(out, g)
    assert tr.phi == tr.u and tr.psi == tr.v and tr.omega == tr.w


def test_idempotent():
    p = section51_params()
    g = build_grid(10.0, 4.0, 10)
    s = sampled_state(g, compatible_interface_fields(p))
    once = solve_interface(s, p, g)
    twice = solve_interface(once, p, g)
    for a, b in zip(once.arrays(), twice.arrays()):
        assert np.array_equal(a, b)


def test_velocity_traces_also_solved():
    p = section51_params()
    g = build_grid(10.0, 4.0, 10)
    s = sampled_state(g, compatible_interface_fields(p))
    s.trans_t[:] = np.sin(0.5 * g.x)
    s.trans_t[g.interface_index] = 99.0
    out = solve_interface(s, p, g)
    assert abs(out.trans_t[g.interface_index]) < 10.0  # reconciled, not the stale 99


def test_flux_residual_second_order_on_compatible_fields():
    p = section51_params()
    res = []
    for npu in (10, 20, 40):
        g = build_grid(10.0, 4.0, npu)
        s = sampled_state(g, compatible_interface_fields(p))
        out = solve_interface(s, p, g)
        r = transmission_residual(out, p, g)
        assert r.max_continuity() <= 1e-13
        res.append((r.flux_shear, r.flux_moment, r.flux_axial))
    for j in range(3):
        assert res[0][j] / res[1][j] > 3.0
        assert res[1][j] / res[2][j] > 3.0


def test_incompatible_fields_have_first_order_trace_shift():
    # the sin/cos/x^2/20 fields violate the continuous moment condition
    # (nu1 != nu2): the solved trace shifts by O(h) and the independent-stencil
    # flux residual converges at second order to a nonzero limit
    p = section51_params()
    shifts = []
    fluxes = []
    for npu in (10, 20, 40):
        g = build_grid(10.0, 4.0, npu)
        s = zero_state(g)
        s.trans[:] = np.sin(g.x)
        s.shear[:] = np.cos(g.x)
        s.longi[:] = g.x**2 / 20.0
        out = solve_interface(s, p, g)
        shifts.append(out.shear[g.interface_index] - np.cos(4.0))
        fluxes.append(transmission_residual(out, p, g).flux_moment)
    assert shifts[0] / shifts[1] == pytest.approx(2.0, rel=0.1)
    assert shifts[1] / shifts[2] == pytest.approx(2.0, rel=0.1)
    # Richardson order estimate of the residual's approach to its limit
    order = np.log2((fluxes[0] - fluxes[1]) / (fluxes[1] - fluxes[2]))
    assert order == pytest.approx(2.0, abs=0.5)


def test_matrix_is_reducible_block_triangular():
    p = section51_params()
    g = build_grid(10.0, 4.0, 10)
    A = interface_matrix(p, g)
    a = 1.5 / g.h
    # ordering: (psi, v), (omega, w), (phi, u); everything above each 2x2
    # diagonal block vanishes
    assert np.all(A[0:2, 2:] == 0.0)
    assert np.all(A[2:4, 4:] == 0.0) and np.all(A[2:4, 0:2] == 0.0)
    dets = [np.linalg.det(A[0:2, 0:2]), np.linalg.det(A[2:4, 2:4]), np.linalg.det(A[4:6, 4:6])]
    assert dets[0] == pytest.approx((p.nu1 + p.nu2) * a)
    assert dets[1] == pytest.approx(2.0 * a)
    assert dets[2] == pytest.approx((p.k1 + p.k2) * a)
    # the bound quoted for the section-5.1 coefficients
    assert min(map(abs, dets)) >= min(p.k1, p.k2, p.nu1, p.nu2, p.sigma) * a * 2 - 1e-9


def test_solve_agrees_with_dense_6x6():
    p = section51_params()
    g = build_grid(10.0, 4.0, 10)
    s = sampled_state(g, compatible_interface_fields(p))
    rng = np.random.default_rng(11)
    for arr in (s.trans, s.shear, s.longi):
        arr += 0.01 * rng.normal(size=arr.shape)
    ii, h = g.interface_index, g.h
    A = interface_matrix(p, g)
    cl = lambda f: (-4.0 * f[ii - 1] + f[ii - 2]) / (2 * h)
    cr = lambda f: (4.0 * f[ii + 1] - f[ii + 2]) / (2 * h)
    b = np.array([
        0.0, p.nu2 * cr(s.shear) - p.nu1 * cl(s.shear),
        0.0, cr(s.longi) - cl(s.longi),
        0.0, p.k2 * cr(s.trans) - p.k1 * cl(s.trans),
    ])
    dense = np.linalg.solve(A, b)  # (psi_I, v_I, omega_I, w_I, phi_I, u_I)
    out = solve_interface(s, p, g)
    assert out.shear[ii] == pytest.approx(dense[0], rel=1e-12)
    assert out.longi[ii] == pytest.approx(dense[2], rel=1e-12)
    assert out.trans[ii] == pytest.approx(dense[4], rel=1e-12)
    assert dense[0] == pytest.approx(dense[1]) and dense[4] == pytest.approx(dense[5])


def test_manufactured_discontinuity_reported():
    # duck-typed per-segment arrays with a deliberate jump at the interface
    p = section51_params()
    g = build_grid(10.0, 4.0, 10)

    class Two:
        pass

    s = Two()
    s.phi = np.sin(g.xd)
    s.psi = np.cos(g.xd)
    s.omega = g.xd / 10
    s.u = np.sin(g.xu)
    s.u[0] += 0.1
    s.v = np.cos(g.xu)
    s.w = g.xu / 10
    r = transmission_residual(s, p, g)
    assert r.cont_trans == pytest.approx(0.1, abs=1e-12)
    assert r.cont_shear == 0.0
