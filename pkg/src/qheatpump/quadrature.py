"""Thin wrappers over QUADPACK and a polar Gauss-Legendre rule."""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .errors import QuadratureError


def adaptive(f, a, b, rtol=1e-9, atol=0.0, weight=None, wvar=None, limit=500, points=None):
    """``scipy.integrate.quad`` that raises instead of warning.

    A QUADPACK failure flag is tolerated when the reported error still
    meets ``max(atol, rtol*|I|)``; otherwise ``QuadratureError`` is raised.
    """
    kw = dict(epsabs=atol, epsrel=rtol, limit=limit, full_output=1)
    if weight is not None:
        kw.update(weight=weight, wvar=wvar)
    if points is not None:
        kw.update(points=points)
    res = integrate.quad(f, a, b, **kw)
    value, abserr = res[0], res[1]
    if len(res) > 3 and abserr > max(atol, rtol * abs(value)):
        raise QuadratureError(f"quadrature on [{a}, {b}] failed: {res[3]}", value, abserr)
    if not math.isfinite(value):
        raise QuadratureError(f"quadrature on [{a}, {b}] produced {value}", value, abserr)
    return value, abserr


def _gl_panels(a, b, panels, order):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def polar_disk(f, rtol=1e-8, order=8, max_level=9):
    """Integrate a vectorised ``f(r, alpha)`` over the unit disk, ``dA = r dr dalpha``.

    Composite Gauss-Legendre in radius and angle; the panel count is
    doubled in both directions until two successive estimates agree to
    ``rtol``. Returns ``(value, error_estimate)``.
    """
    prev = None
    for level in range(max_level):
        panels = 2**level
        r, wr = _gl_panels(0.0, 1.0, panels, order)
        a, wa = _gl_panels(0.0, 2.0 * math.pi, 4 * panels, order)
        R, A = np.meshgrid(r, a, indexing="ij")
        value = float(np.einsum("i,j,ij->", wr * r, wa, f(R, A)))
        if prev is not None:
            err = abs(value - prev)
            if err <= rtol * abs(value) or (value == 0.0 and prev == 0.0):
                return value, err
        prev = value
    raise QuadratureError("polar Gauss-Legendre did not converge", value, err)
