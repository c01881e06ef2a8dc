"""Compiled inner loops for piecewise propagation and the reminiscence sums.

Same API and summation order as ``_kernels_py``.
"""
import numpy as np

from libc.math cimport exp, expm1

# exp(x) is exactly 0.0 in double precision below this
cdef double EXP_UNDERFLOW = -745.2


def propagate(const double[::1] lam, const double[::1] rho_s, double dt, double rho0):
    cdef Py_ssize_t n = lam.shape[0], j
    cdef double r = rho0, x, d, em
    rho = np.empty(n + 1)
    integral = np.empty(n)
    cdef double[::1] rho_v = rho
    cdef double[::1] int_v = integral
    rho_v[0] = r
    for j in range(n):
        x = lam[j] * dt
        if x == 0.0:
            int_v[j] = r * dt
        else:
            d = r - rho_s[j]
            em = expm1(x)
            int_v[j] = rho_s[j] * dt + d * dt * (em / x)
            r = rho_s[j] + exp(x) * d
        rho_v[j + 1] = r
    return rho, integral


def nonadiabatic_sums(const double[::1] A, const double[::1] lam, const double[::1] rho_s,
                      double dt, double d1):
    cdef Py_ssize_t n = lam.shape[0], j, q
    cdef double e, acc, g3 = 0.0
    phi0 = np.empty(n)
    psi = np.empty(n)
    cdef double[::1] phi_v = phi0
    cdef double[::1] psi_v = psi
    cdef double[::1] ratio = np.empty(n)
    cdef double[::1] x = np.empty(n)
    cdef double[::1] em = np.empty(n)
    for j in range(n):
        ratio[j] = A[j] / lam[j]
        x[j] = lam[j] * dt
        em[j] = expm1(x[j])

    e = 0.0
    for j in range(n):
        phi_v[j] = d1 * ratio[j] * exp(e) * em[j]
        e += x[j]

    for j in range(n):
        acc = 0.0
        e = 0.0
        for q in range(j + 1, n):
            e += x[q - 1]
            if e < EXP_UNDERFLOW:
                break
            acc += ratio[q] * exp(e) * em[q]
        psi_v[j] = ratio[j] * exp(x[j]) + acc

    for j in range(n):
        g3 += phi_v[j]
    for j in range(1, n - 1):
        g3 += (rho_s[j - 1] - rho_s[j]) * psi_v[j]
    if n >= 2:
        g3 += (rho_s[n - 2] - rho_s[n - 1]) * ratio[n - 1] * exp(x[n - 1])
    return phi0, psi, g3
