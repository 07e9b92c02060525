# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the oracle's scalar loops; mirrors ``_kernels_py``."""
from libc.math cimport sqrt

import numpy as np

cdef double INV_PHI = (sqrt(5.0) - 1.0) / 2.0


cdef inline double _energy(double beta, double omega, double epsilon, double n, double g) nogil:
    cdef double g_beta = 2.0 * g * beta * sqrt(n - beta * beta) / n
    cdef double omega_a = sqrt((omega - 2.0 * g_beta) * (omega + 2.0 * g_beta))
    return -2.0 * g_beta * g_beta / (omega_a + omega) + epsilon * beta * beta


def energy_shifted(double beta, double omega, double epsilon, double n, double g):
    return _energy(beta, omega, epsilon, n, g)


def energy_scan(betas, double omega, double epsilon, double n, double g):
    cdef double[::1] b = np.ascontiguousarray(betas, dtype=np.float64)
    out = np.empty(b.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(b.shape[0]):
            o[i] = _energy(b[i], omega, epsilon, n, g)
    return out


def golden_section_min(double lo, double hi, double tol,
                       double omega, double epsilon, double n, double g):
    cdef double a = lo, b = hi
    cdef double c = b - INV_PHI * (b - a)
    cdef double d = a + INV_PHI * (b - a)
    cdef double fc = _energy(c, omega, epsilon, n, g)
    cdef double fd = _energy(d, omega, epsilon, n, g)
    with nogil:
        while b - a > tol:
            if fc < fd:
                b = d
                d = c
                fd = fc
                c = b - INV_PHI * (b - a)
                fc = _energy(c, omega, epsilon, n, g)
            else:
                a = c
                c = d
                fc = fd
                d = a + INV_PHI * (b - a)
                fd = _energy(d, omega, epsilon, n, g)
    return 0.5 * (a + b)


def rk4_covariance(double sxx, double spp, double sxp, double omega, double g_beta,
                   double dt, long n_steps, long stride):
    cdef double u = omega - 2.0 * g_beta
    cdef double v = omega + 2.0 * g_beta
    cdef double h = 0.5 * dt
    cdef double k1x, k1p, k1q, k2x, k2p, k2q, k3x, k3p, k3q, k4x, k4p, k4q
    cdef double x2, p2, q2, x3, p3, q3, x4, p4, q4
    cdef long k, row = 1
    out = np.empty((n_steps // stride + 1, 3))
    cdef double[:, ::1] o = out
    o[0, 0] = sxx
    o[0, 1] = spp
    o[0, 2] = sxp
    with nogil:
        for k in range(1, n_steps + 1):
            k1x = 2.0 * u * sxp
            k1p = -2.0 * v * sxp
            k1q = u * spp - v * sxx
            x2 = sxx + h * k1x
            p2 = spp + h * k1p
            q2 = sxp + h * k1q
            k2x = 2.0 * u * q2
            k2p = -2.0 * v * q2
            k2q = u * p2 - v * x2
            x3 = sxx + h * k2x
            p3 = spp + h * k2p
            q3 = sxp + h * k2q
            k3x = 2.0 * u * q3
            k3p = -2.0 * v * q3
            k3q = u * p3 - v * x3
            x4 = sxx + dt * k3x
            p4 = spp + dt * k3p
            q4 = sxp + dt * k3q
            k4x = 2.0 * u * q4
            k4p = -2.0 * v * q4
            k4q = u * p4 - v * x4
            sxx = sxx + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            spp = spp + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
            sxp = sxp + dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
            if k % stride == 0:
                o[row, 0] = sxx
                o[row, 1] = spp
                o[row, 2] = sxp
                row += 1
    return out
