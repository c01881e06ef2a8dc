"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``."""
import math

import numpy as np

_EXP_UNDERFLOW = -745.2


def propagate(lam, rho_s, dt, rho0):
    """Closed-form population recursion over piecewise-constant intervals.

    Returns ``(rho, integral)``: the ground population at the ``n + 1``
    interval boundaries and its time integral over each interval.
    """
    n = len(lam)
    rho = np.empty(n + 1)
    integral = np.empty(n)
    r = rho0
    rho[0] = r
    for j in range(n):
        x = lam[j] * dt
        if x == 0.0:
            integral[j] = r * dt
        else:
            d = r - rho_s[j]
            integral[j] = rho_s[j] * dt + d * dt * (math.expm1(x) / x)
            r = rho_s[j] + math.exp(x) * d
        rho[j + 1] = r
    return rho, integral


def nonadiabatic_sums(A, lam, rho_s, dt, d1):
    """Reminiscence terms ``phi0``, ``psi`` and their total for one bath.

    Exponents are accumulated as sums of ``Lambda * dt`` starting at each
    row's own interval, never as products of exponentials.
    """
    A = np.asarray(A, dtype=float)
    lam = np.asarray(lam, dtype=float)
    rho_s = np.asarray(rho_s, dtype=float)
    n = len(lam)
    ratio = A / lam
    x = lam * dt
    em = np.expm1(x)

    e_from_start = np.concatenate(([0.0], np.cumsum(x[:-1])))
    phi0 = d1 * ratio * np.exp(e_from_start) * em

    psi = ratio * np.exp(x)
    for j in range(n - 1):
        e = np.cumsum(x[j : n - 1])
        keep = e >= _EXP_UNDERFLOW
        psi[j] += np.sum(ratio[j + 1 :][keep] * np.exp(e[keep]) * em[j + 1 :][keep])

    g3 = float(np.sum(phi0))
    if n >= 3:
        g3 += float(np.sum((rho_s[: n - 2] - rho_s[1 : n - 1]) * psi[1 : n - 1]))
    if n >= 2:
        g3 += (rho_s[n - 2] - rho_s[n - 1]) * ratio[n - 1] * math.exp(x[n - 1])
    return phi0, psi, g3
