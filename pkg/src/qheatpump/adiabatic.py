"""Adiabatic currents for continuous (sinusoidal) temperature driving.

In the adiabatic limit the junction follows its instantaneous steady
state. The right-bath current then splits into a dynamical part (time
average of the steady current) and a geometric part, which can be written
either as a line integral along the cycle or, by Green's theorem, as a
surface integral over the area enclosed in the (T_L, T_R) plane.

Currents are returned in quanta per second (units of ``hbar*omega0``/s).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import quadrature
from .bath import BathParams, _ordered, bose_occupation, coupling_gamma
from .protocol import ModulationProtocol
from .units import DEFAULT_UNITS, UnitSystem, beta_tilde_from_kelvin

QUAD_RTOL = 1e-10
SURFACE_RTOL = 1e-8


@dataclass(frozen=True)
class AdiabaticResult:
    J1_R: float
    J2_R_line: float
    J2_R_surface: float
    quadrature_errors: dict = field(default_factory=dict)
    degenerate: bool = False


class _Cycle:
    """Markovian generator elements along a sinusoidal protocol.

    With the generator written as ``[[xi1, xi2], [xi3, xi4]]`` on
    ``(rho00, rho11)``, the diagonal entries are ``xi1 = -K_d`` and
    ``xi4 = -K_u``, and ``eta2 = -Gamma_v (1 + N_v)``, ``eta3 = Gamma_v N_v``
    are minus the counting-field derivatives of the off-diagonal ones
    (in units of ``hbar*omega0``).
    """

    def __init__(self, protocol, baths, units):
        bath_L, bath_R = _ordered(baths)
        self.p = protocol
        self.units = units
        self.gL = coupling_gamma(bath_L)
        self.gR = coupling_gamma(bath_R)

    def occupations(self, theta):
        T_L, T_R = self.p.at_phase(theta)
        b_L = beta_tilde_from_kelvin(T_L, self.units)
        b_R = beta_tilde_from_kelvin(T_R, self.units)
        N_L, N_R = bose_occupation(b_L), bose_occupation(b_R)
        dT_L, dT_R = self.p.phase_derivative(theta)
        # dN/dT = beta N (1 + N) / T
        dN_L = b_L * N_L * (1 + N_L) / T_L * dT_L
        dN_R = b_R * N_R * (1 + N_R) / T_R * dT_R
        return N_L, N_R, dN_L, dN_R

    def elements(self, theta, label):
        N_L, N_R, dN_L, dN_R = self.occupations(theta)
        xi1 = -(self.gL * N_L + self.gR * N_R)
        xi4 = -(self.gL * (1 + N_L) + self.gR * (1 + N_R))
        dxi = -(self.gL * dN_L + self.gR * dN_R)  # d(xi1)/dtheta == d(xi4)/dtheta
        g, N = (self.gR, N_R) if label == "R" else (self.gL, N_L)
        eta2 = -g * (1 + N)
        eta3 = g * N
        return xi1, xi4, dxi, eta2, eta3


def _floor(f, samples=64):
    # Absolute tolerance for integrals that cancel to zero, e.g. symmetric contours.
    theta = np.linspace(0.0, 2 * math.pi, samples, endpoint=False)
    return 1e-11 * float(np.mean(np.abs([f(t) for t in theta]))) + 1e-300


def dynamical_current_continuous(
    protocol: ModulationProtocol,
    baths: Sequence[BathParams],
    units: UnitSystem = DEFAULT_UNITS,
    label: str = "R",
    with_error: bool = False,
):
    """Cycle-averaged steady-state current into bath ``label``."""
    cyc = _Cycle(protocol, baths, units)

    def rate(theta):
        xi1, xi4, _, eta2, eta3 = cyc.elements(theta, label)
        return -(xi1 * eta2 + eta3 * xi4) / (xi1 + xi4)

    val, err = quadrature.adaptive(rate, 0.0, 2 * math.pi, rtol=QUAD_RTOL, atol=_floor(rate))
    scale = units.omega0_rad_per_s / (2 * math.pi)
    return (val * scale, err * scale) if with_error else val * scale


def geometric_current_line(
    protocol: ModulationProtocol,
    baths: Sequence[BathParams],
    units: UnitSystem = DEFAULT_UNITS,
    label: str = "R",
    with_error: bool = False,
):
    """Geometric pumping current as a line integral over one cycle.

    The phase derivative of the steady population is taken analytically
    through the protocol's chain rule.
    """
    cyc = _Cycle(protocol, baths, units)

    def integrand(theta):
        xi1, xi4, dxi, eta2, eta3 = cyc.elements(theta, label)
        s = xi1 + xi4
        d_steady = dxi * (xi1 - xi4) / s**2
        return (eta2 - eta3) / s * d_steady

    val, err = quadrature.adaptive(
        integrand, 0.0, 2 * math.pi, rtol=QUAD_RTOL, atol=_floor(integrand)
    )
    scale = protocol.Omega / (2 * math.pi)
    return (val * scale, err * scale) if with_error else val * scale


def geometric_current_surface(
    protocol: ModulationProtocol,
    baths: Sequence[BathParams],
    units: UnitSystem = DEFAULT_UNITS,
    label: str = "R",
    with_error: bool = False,
):
    """Geometric current as an area integral over the enclosed temperature region.

    The contour is an ellipse (a circle for the default protocol). The unit
    disk is mapped onto it linearly, so the orientation of the cycle enters
    through the sign of the map's determinant. A contour enclosing no area
    gives 0 with a ``RuntimeWarning``.
    """
    bath_L, bath_R = _ordered(baths)
    gL, gR = coupling_gamma(bath_L), coupling_gamma(bath_R)
    M = protocol.contour_matrix()
    det = float(np.linalg.det(M))
    if det == 0.0 or abs(det) < 1e-12 * max(protocol.dT_L**2, protocol.dT_R**2, 1e-300):
        warnings.warn("protocol contour encloses no area; geometric current is 0", RuntimeWarning)
        return (0.0, 0.0) if with_error else 0.0
    TW = units.hbar_omega0_over_kB_K

    def integrand(r, alpha):
        u, v = r * np.cos(alpha), r * np.sin(alpha)
        T_L = protocol.T0_L + M[0, 0] * u + M[0, 1] * v
        T_R = protocol.T0_R + M[1, 0] * u + M[1, 1] * v
        b_L, b_R = TW / T_L, TW / T_R
        N_L, N_R = 1.0 / np.expm1(b_L), 1.0 / np.expm1(b_R)
        K = gL * (1 + 2 * N_L) + gR * (1 + 2 * N_R)
        dn_L = b_L * N_L * (1 + N_L) / T_L
        dn_R = b_R * N_R * (1 + N_R) / T_R
        return 2 * gL * gR * (gL + gR) / K**3 * dn_L * dn_R

    val, err = quadrature.polar_disk(integrand, rtol=SURFACE_RTOL)
    sign = 1.0 if label == "R" else -1.0
    scale = sign * det * protocol.Omega / (2 * math.pi)
    return (val * scale, abs(err * scale)) if with_error else val * scale


def adiabatic_currents(
    protocol: ModulationProtocol, baths: Sequence[BathParams], units: UnitSystem = DEFAULT_UNITS
) -> AdiabaticResult:
    j1, e1 = dynamical_current_continuous(protocol, baths, units, with_error=True)
    jl, el = geometric_current_line(protocol, baths, units, with_error=True)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        js, es = geometric_current_surface(protocol, baths, units, with_error=True)
    return AdiabaticResult(
        j1, jl, js, {"J1_R": e1, "J2_R_line": el, "J2_R_surface": es}, degenerate=bool(caught)
    )
