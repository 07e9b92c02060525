"""Pure-Python kernels. Same signatures and arithmetic as ``_kernels.pyx``."""
import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def energy_shifted(beta, omega, epsilon, n, g):
    """Ground-state energy plus eps*N/2.

    ``(omega_a - omega)/2`` is written as ``-2 g_beta^2 / (omega_a + omega)``
    so that the result keeps full relative precision when beta is small.
    """
    g_beta = 2.0 * g * beta * math.sqrt(n - beta * beta) / n
    omega_a = math.sqrt((omega - 2.0 * g_beta) * (omega + 2.0 * g_beta))
    return -2.0 * g_beta * g_beta / (omega_a + omega) + epsilon * beta * beta


def energy_scan(betas, omega, epsilon, n, g):
    out = np.empty(len(betas))
    for i, beta in enumerate(betas):
        out[i] = energy_shifted(float(beta), omega, epsilon, n, g)
    return out


def golden_section_min(lo, hi, tol, omega, epsilon, n, g):
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = energy_shifted(c, omega, epsilon, n, g)
    fd = energy_shifted(d, omega, epsilon, n, g)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = energy_shifted(c, omega, epsilon, n, g)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = energy_shifted(d, omega, epsilon, n, g)
    return 0.5 * (a + b)


def rk4_covariance(sxx, spp, sxp, omega, g_beta, dt, n_steps, stride):
    """RK4 for the quadrature covariance under dX/dt = u P, dP/dt = -v X.

    Returns the states at steps 0, stride, 2*stride, ..., shape (n, 3).
    """
    u = omega - 2.0 * g_beta
    v = omega + 2.0 * g_beta
    h = 0.5 * dt
    out = np.empty((n_steps // stride + 1, 3))
    out[0] = (sxx, spp, sxp)
    row = 1
    for k in range(1, n_steps + 1):
        k1x, k1p, k1q = 2.0 * u * sxp, -2.0 * v * sxp, u * spp - v * sxx
        x2, p2, q2 = sxx + h * k1x, spp + h * k1p, sxp + h * k1q
        k2x, k2p, k2q = 2.0 * u * q2, -2.0 * v * q2, u * p2 - v * x2
        x3, p3, q3 = sxx + h * k2x, spp + h * k2p, sxp + h * k2q
        k3x, k3p, k3q = 2.0 * u * q3, -2.0 * v * q3, u * p3 - v * x3
        x4, p4, q4 = sxx + dt * k3x, spp + dt * k3p, sxp + dt * k3q
        k4x, k4p, k4q = 2.0 * u * q4, -2.0 * v * q4, u * p4 - v * x4
        sxx += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        spp += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        sxp += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        if k % stride == 0:
            out[row] = (sxx, spp, sxp)
            row += 1
    return out
