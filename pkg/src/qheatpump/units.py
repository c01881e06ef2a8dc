"""Conversions between laboratory units and the scaled internal units.

Internally every energy is measured in units of the level splitting
``hbar*omega0``, every time in units of ``1/omega0`` and every rate in
units of ``omega0``, so that ``hbar = k_B = omega0 = 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

#: Boltzmann constant in meV/K.
K_B_MEV_PER_K = 8.617333e-2
#: Reduced Planck constant in meV*s.
HBAR_MEV_S = 6.582120e-13


@dataclass(frozen=True)
class UnitSystem:
    """Unit system fixed by the junction's level splitting.

    Parameters
    ----------
    hbar_omega0_meV : float
        Energy gap between the two levels in meV.
    """

    hbar_omega0_meV: float = 25.0

    def __post_init__(self):
        if not self.hbar_omega0_meV > 0:
            raise DomainError(f"hbar_omega0_meV must be positive, got {self.hbar_omega0_meV}")

    @property
    def omega0_rad_per_s(self) -> float:
        return self.hbar_omega0_meV / HBAR_MEV_S

    @property
    def hbar_omega0_over_kB_K(self) -> float:
        """Temperature (K) whose thermal energy equals ``hbar*omega0``."""
        return self.hbar_omega0_meV / K_B_MEV_PER_K

    @property
    def time_unit_ps(self) -> float:
        """Duration of one scaled time unit ``1/omega0`` in picoseconds."""
        return 1e12 / self.omega0_rad_per_s


DEFAULT_UNITS = UnitSystem(25.0)


def beta_tilde_from_kelvin(T, units: UnitSystem = DEFAULT_UNITS):
    """Scaled inverse temperature ``hbar*omega0 / (k_B T)``.

    Accepts scalars or arrays. ``T = inf`` maps to 0.
    """
    T_arr = np.asarray(T, dtype=float)
    if np.any(~(T_arr > 0)):
        raise DomainError(f"temperature must be positive, got {T!r}")
    out = units.hbar_omega0_over_kB_K / T_arr
    return float(out) if out.ndim == 0 else out


def kelvin_from_beta_tilde(beta_tilde, units: UnitSystem = DEFAULT_UNITS):
    b = np.asarray(beta_tilde, dtype=float)
    if np.any(~(b > 0)):
        raise DomainError(f"beta_tilde must be positive, got {beta_tilde!r}")
    out = units.hbar_omega0_over_kB_K / b
    return float(out) if out.ndim == 0 else out


def interval_duration(Omega: float, n: int) -> float:
    """Length in seconds of one of ``n`` equal intervals of the period ``2*pi/Omega``."""
    if not Omega > 0:
        raise DomainError(f"Omega must be positive, got {Omega}")
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    return 2.0 * math.pi / Omega / n


def scaled_time(t_seconds, units: UnitSystem = DEFAULT_UNITS):
    return np.multiply(t_seconds, units.omega0_rad_per_s)


def seconds_from_scaled(t_scaled, units: UnitSystem = DEFAULT_UNITS):
    return np.divide(t_scaled, units.omega0_rad_per_s)
