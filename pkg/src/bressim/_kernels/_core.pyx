# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled stepping kernels: C loops mirroring the numpy backend.

Both blocks advance the state arrays in place and return -1 on success or
nsteps when a non-finite value is detected at the end of the block.
"""

import numpy as np

cimport cython
from libc.math cimport isfinite


cdef inline void iface_solve(double[::1] trans, double[::1] shear, double[::1] longi,
                             int ii, double h, double k1, double k2,
                             double nu1, double nu2, double l) noexcept nogil:
    cdef double a = 1.5 / h
    cdef double cl, cr, s_i, w_i, t_i
    cl = (-4.0 * shear[ii - 1] + shear[ii - 2]) / (2.0 * h)
    cr = (4.0 * shear[ii + 1] - shear[ii + 2]) / (2.0 * h)
    s_i = (nu2 * cr - nu1 * cl) / ((nu1 + nu2) * a)
    cl = (-4.0 * longi[ii - 1] + longi[ii - 2]) / (2.0 * h)
    cr = (4.0 * longi[ii + 1] - longi[ii + 2]) / (2.0 * h)
    w_i = (cr - cl) / (2.0 * a)
    cl = (-4.0 * trans[ii - 1] + trans[ii - 2]) / (2.0 * h)
    cr = (4.0 * trans[ii + 1] - trans[ii + 2]) / (2.0 * h)
    t_i = (k2 * cr - k1 * cl + (k2 - k1) * (s_i + l * w_i)) / ((k1 + k2) * a)
    shear[ii] = s_i
    longi[ii] = w_i
    trans[ii] = t_i


cdef void bresse_accel(double[::1] P, double[::1] S, double[::1] W,
                       double[::1] Xi, double[::1] Th,
                       double[::1] fp1, double[::1] fr1, double[::1] fq1,
                       double[::1] fp2, double[::1] fr2, double[::1] fq2,
                       double rho1, double beta1, double k1, double nu1,
                       double rho2, double beta2, double k2, double nu2,
                       double sigma, double alpha1, double alpha2, double l,
                       int n, int ii, double h,
                       double[::1] at, double[::1] ash, double[::1] al) noexcept nogil:
    cdef int i, j
    cdef double h2 = h * h
    cdef double px, sx, wx, pxx, sxx, wxx, thx, xix, axial, shear_q
    for i in range(1, ii):
        px = (P[i + 1] - P[i - 1]) / (2.0 * h)
        sx = (S[i + 1] - S[i - 1]) / (2.0 * h)
        wx = (W[i + 1] - W[i - 1]) / (2.0 * h)
        pxx = (P[i + 1] - 2.0 * P[i] + P[i - 1]) / h2
        sxx = (S[i + 1] - 2.0 * S[i] + S[i - 1]) / h2
        wxx = (W[i + 1] - 2.0 * W[i] + W[i - 1]) / h2
        thx = (Th[i + 1] - Th[i - 1]) / (2.0 * h)
        xix = (Xi[i + 1] - Xi[i - 1]) / (2.0 * h)
        axial = wx - l * P[i]
        shear_q = px + S[i] + l * W[i]
        at[i] = (k1 * (pxx + sx + l * wx) + l * sigma * axial
                 + 0.5 * sigma * l * S[i] * S[i] - l * alpha1 * Xi[i] + fp1[i]) / rho1
        ash[i] = (nu1 * sxx - k1 * shear_q - alpha2 * thx - sigma * S[i] * axial
                  + alpha1 * S[i] * Xi[i] - 0.5 * sigma * S[i] * S[i] * S[i] + fr1[i]) / beta1
        al[i] = (sigma * (wxx - l * px) - l * k1 * shear_q
                 + sigma * S[i] * sx - alpha1 * xix + fq1[i]) / rho1
    for i in range(ii + 1, n - 1):
        j = i - ii
        px = (P[i + 1] - P[i - 1]) / (2.0 * h)
        sx = (S[i + 1] - S[i - 1]) / (2.0 * h)
        wx = (W[i + 1] - W[i - 1]) / (2.0 * h)
        pxx = (P[i + 1] - 2.0 * P[i] + P[i - 1]) / h2
        sxx = (S[i + 1] - 2.0 * S[i] + S[i - 1]) / h2
        wxx = (W[i + 1] - 2.0 * W[i] + W[i - 1]) / h2
        axial = wx - l * P[i]
        shear_q = px + S[i] + l * W[i]
        at[i] = (k2 * (pxx + sx + l * wx) + l * sigma * axial
                 + 0.5 * sigma * l * S[i] * S[i] + fp2[j]) / rho2
        ash[i] = (nu2 * sxx - k2 * shear_q - sigma * S[i] * axial
                  - 0.5 * sigma * S[i] * S[i] * S[i] + fr2[j]) / beta2
        al[i] = (sigma * (wxx - l * px) - l * k2 * shear_q
                 + sigma * S[i] * sx + fq2[j]) / rho2


def bresse_block(double[::1] trans, double[::1] shear, double[::1] longi,
                 double[::1] vt, double[::1] vs, double[::1] vl,
                 double[::1] xi, double[::1] theta,
                 double[::1] fp1, double[::1] fr1, double[::1] fq1,
                 double[::1] fh1, double[::1] fh2,
                 double[::1] fp2, double[::1] fr2, double[::1] fq2,
                 double rho1, double beta1, double k1, double nu1,
                 double rho2, double beta2, double k2, double nu2,
                 double sigma, double alpha1, double alpha2,
                 double gamma, double delta, double mu, double lam,
                 double l, int n, int ii, double h, double dt, int nsteps):
    cdef double[::1] at = np.zeros(n)
    cdef double[::1] ash = np.zeros(n)
    cdef double[::1] al = np.zeros(n)
    cdef double[::1] at2 = np.zeros(n)
    cdef double[::1] ash2 = np.zeros(n)
    cdef double[::1] al2 = np.zeros(n)
    cdef double[::1] hx = np.zeros(ii + 1)
    cdef double[::1] ht = np.zeros(ii + 1)
    cdef int step, i
    cdef double h2 = h * h
    cdef double half_dt = 0.5 * dt
    cdef double half_dt2 = 0.5 * dt * dt
    cdef double wtx, vsx, xixx, thxx, acc

    with nogil:
        trans[0] = 0.0; shear[0] = 0.0; longi[0] = 0.0
        vt[0] = 0.0; vs[0] = 0.0; vl[0] = 0.0
        trans[n - 1] = 0.0; shear[n - 1] = 0.0; longi[n - 1] = 0.0
        vt[n - 1] = 0.0; vs[n - 1] = 0.0; vl[n - 1] = 0.0
        xi[0] = 0.0; xi[ii] = 0.0
        theta[0] = 0.0; theta[ii] = 0.0
        iface_solve(trans, shear, longi, ii, h, k1, k2, nu1, nu2, l)
        iface_solve(vt, vs, vl, ii, h, k1, k2, nu1, nu2, l)
        bresse_accel(trans, shear, longi, xi, theta, fp1, fr1, fq1, fp2, fr2, fq2,
                     rho1, beta1, k1, nu1, rho2, beta2, k2, nu2,
                     sigma, alpha1, alpha2, l, n, ii, h, at, ash, al)
        for step in range(nsteps):
            # heat rates with the current velocities
            for i in range(1, ii):
                wtx = (vl[i + 1] - vl[i - 1]) / (2.0 * h)
                vsx = (vs[i + 1] - vs[i - 1]) / (2.0 * h)
                xixx = (xi[i + 1] - 2.0 * xi[i] + xi[i - 1]) / h2
                thxx = (theta[i + 1] - 2.0 * theta[i] + theta[i - 1]) / h2
                hx[i] = (mu * xixx - alpha1 * (wtx - l * vt[i]) - alpha1 * vs[i] * shear[i] + fh1[i]) / gamma
                ht[i] = (lam * thxx - alpha2 * vsx + fh2[i]) / delta
            for i in range(n):
                trans[i] += dt * vt[i] + half_dt2 * at[i]
                shear[i] += dt * vs[i] + half_dt2 * ash[i]
                longi[i] += dt * vl[i] + half_dt2 * al[i]
            for i in range(ii + 1):
                xi[i] += dt * hx[i]
                theta[i] += dt * ht[i]
            iface_solve(trans, shear, longi, ii, h, k1, k2, nu1, nu2, l)
            bresse_accel(trans, shear, longi, xi, theta, fp1, fr1, fq1, fp2, fr2, fq2,
                         rho1, beta1, k1, nu1, rho2, beta2, k2, nu2,
                         sigma, alpha1, alpha2, l, n, ii, h, at2, ash2, al2)
            for i in range(n):
                vt[i] += half_dt * (at[i] + at2[i])
                vs[i] += half_dt * (ash[i] + ash2[i])
                vl[i] += half_dt * (al[i] + al2[i])
            iface_solve(vt, vs, vl, ii, h, k1, k2, nu1, nu2, l)
            for i in range(n):
                at[i] = at2[i]
                ash[i] = ash2[i]
                al[i] = al2[i]
        acc = 0.0
        for i in range(n):
            acc += trans[i] + shear[i] + longi[i] + vt[i] + vs[i] + vl[i]
        for i in range(ii + 1):
            acc += xi[i] + theta[i]
    if not isfinite(acc):
        return nsteps
    return -1


# --- limit model -------------------------------------------------------------


cdef void vk_accel(double[::1] y, double[::1] z, double[::1] xi, double[::1] theta,
                   double[::1] mu_bend, double[::1] rho_node, double[::1] beta_cell,
                   double[::1] f_trans, double[::1] f_long,
                   double sigma, double alpha1, double alpha2,
                   int n, int ii, double h,
                   double[::1] kap, double[::1] dy, double[::1] zc,
                   double[::1] F, double[::1] cp,
                   double[::1] a_t, double[::1] a_l) noexcept nogil:
    cdef int i, c, j
    cdef double h2 = h * h
    cdef double fl, fr_, diag0, piv, md
    # curvature with clamp reflection ghosts; zb stored back into kap
    kap[0] = 2.0 * y[1] / h2
    kap[n - 1] = 2.0 * y[n - 2] / h2
    for i in range(1, n - 1):
        kap[i] = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / h2
    for i in range(n):
        kap[i] = mu_bend[i] * kap[i]
    for c in range(n - 1):
        dy[c] = (y[c + 1] - y[c]) / h
        zc[c] = (z[c + 1] - z[c]) / h + 0.5 * dy[c] * dy[c]
    for j in range(1, n - 1):
        F[j - 1] = -(kap[j - 1] - 2.0 * kap[j] + kap[j + 1]) / h \
                   + sigma * (dy[j] * zc[j] - dy[j - 1] * zc[j - 1]) + f_trans[j - 1]
    F[0] -= kap[0] / h
    F[n - 3] -= kap[n - 1] / h
    # thermal fluxes on damped cells (theta[ii] = xi[ii] = 0)
    for j in range(1, n - 1):
        fl = 0.0
        fr_ = 0.0
        if j - 1 < ii:
            fl = alpha2 * (theta[j] - theta[j - 1]) / h \
                 + alpha1 * dy[j - 1] * 0.5 * (xi[j - 1] + xi[j])
        if j < ii:
            fr_ = alpha2 * (theta[j + 1] - theta[j]) / h \
                  + alpha1 * dy[j] * 0.5 * (xi[j] + xi[j + 1])
        F[j - 1] -= fr_ - fl
    # Thomas solve of the tridiagonal mass matrix (rows 1..n-2)
    diag0 = rho_node[1] * h + (beta_cell[0] + beta_cell[1]) / h
    cp[0] = -beta_cell[1] / h / diag0
    F[0] = F[0] / diag0
    for j in range(1, n - 2):
        md = rho_node[j + 1] * h + (beta_cell[j] + beta_cell[j + 1]) / h
        piv = md - (-beta_cell[j] / h) * cp[j - 1]
        if j < n - 3:
            cp[j] = -beta_cell[j + 1] / h / piv
        F[j] = (F[j] - (-beta_cell[j] / h) * F[j - 1]) / piv
    a_t[0] = 0.0
    a_t[n - 1] = 0.0
    a_t[n - 2] = F[n - 3]
    for j in range(n - 4, -1, -1):
        F[j] = F[j] - cp[j] * F[j + 1]
        a_t[j + 1] = F[j]
    # longitudinal fields, explicit
    a_l[0] = 0.0
    a_l[n - 1] = 0.0
    for j in range(1, n - 1):
        fl = sigma * zc[j - 1]
        fr_ = sigma * zc[j]
        if j - 1 < ii:
            fl -= alpha1 * 0.5 * (xi[j - 1] + xi[j])
        if j < ii:
            fr_ -= alpha1 * 0.5 * (xi[j] + xi[j + 1])
        a_l[j] = (fr_ - fl + f_long[j - 1]) / (h * rho_node[j])


def vonkarman_block(double[::1] y, double[::1] yt, double[::1] z, double[::1] zt,
                    double[::1] xi, double[::1] theta,
                    double[::1] fh1, double[::1] fh2,
                    double[::1] mu_bend, double[::1] rho_node, double[::1] beta_cell,
                    double[::1] f_trans, double[::1] f_long,
                    double sigma, double alpha1, double alpha2,
                    double gamma, double delta, double mu, double lam,
                    int n, int ii, double h, double dt, int nsteps):
    cdef double[::1] kap = np.zeros(n)
    cdef double[::1] dy = np.zeros(n - 1)
    cdef double[::1] zc = np.zeros(n - 1)
    cdef double[::1] F = np.zeros(n - 2)
    cdef double[::1] cp = np.zeros(n - 2)
    cdef double[::1] a_t = np.zeros(n)
    cdef double[::1] a_l = np.zeros(n)
    cdef double[::1] a_t2 = np.zeros(n)
    cdef double[::1] a_l2 = np.zeros(n)
    cdef double[::1] hx = np.zeros(ii + 1)
    cdef double[::1] ht = np.zeros(ii + 1)
    cdef int step, i
    cdef double h2 = h * h
    cdef double half_dt = 0.5 * dt
    cdef double half_dt2 = 0.5 * dt * dt
    cdef double ztx, yx, ytx, xixx, thxx, ytxx, acc

    with nogil:
        vk_accel(y, z, xi, theta, mu_bend, rho_node, beta_cell, f_trans, f_long,
                 sigma, alpha1, alpha2, n, ii, h, kap, dy, zc, F, cp, a_t, a_l)
        for step in range(nsteps):
            for i in range(1, ii):
                ztx = (zt[i + 1] - zt[i - 1]) / (2.0 * h)
                yx = (y[i + 1] - y[i - 1]) / (2.0 * h)
                ytx = (yt[i + 1] - yt[i - 1]) / (2.0 * h)
                xixx = (xi[i + 1] - 2.0 * xi[i] + xi[i - 1]) / h2
                thxx = (theta[i + 1] - 2.0 * theta[i] + theta[i - 1]) / h2
                ytxx = (yt[i + 1] - 2.0 * yt[i] + yt[i - 1]) / h2
                hx[i] = (mu * xixx - alpha1 * (ztx + yx * ytx) + fh1[i]) / gamma
                ht[i] = (lam * thxx + alpha2 * ytxx + fh2[i]) / delta
            for i in range(n):
                y[i] += dt * yt[i] + half_dt2 * a_t[i]
                z[i] += dt * zt[i] + half_dt2 * a_l[i]
            for i in range(ii + 1):
                xi[i] += dt * hx[i]
                theta[i] += dt * ht[i]
            vk_accel(y, z, xi, theta, mu_bend, rho_node, beta_cell, f_trans, f_long,
                     sigma, alpha1, alpha2, n, ii, h, kap, dy, zc, F, cp, a_t2, a_l2)
            for i in range(n):
                yt[i] += half_dt * (a_t[i] + a_t2[i])
                zt[i] += half_dt * (a_l[i] + a_l2[i])
            for i in range(n):
                a_t[i] = a_t2[i]
                a_l[i] = a_l2[i]
        acc = 0.0
        for i in range(n):
            acc += y[i] + yt[i] + z[i] + zt[i]
        for i in range(ii + 1):
            acc += xi[i] + theta[i]
    if not isfinite(acc):
        return nsteps
    return -1
