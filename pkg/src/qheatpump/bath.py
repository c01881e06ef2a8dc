"""Ohmic baths, Bose occupations and Markovian rate constants.

Symbols follow the rate-equation literature for this junction: the
ground-state population ``rho00`` is depleted at ``K_d = sum Gamma N`` and
refilled at ``K_u = sum Gamma (1 + N)``. Note that ``k_u`` carries the
``1 + N`` emission factor even though it feeds the *lower* level.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, ValidationError
from .units import DEFAULT_UNITS, UnitSystem, beta_tilde_from_kelvin

ArrayLike = Union[float, np.ndarray]

LABELS = ("L", "R")


@dataclass(frozen=True)
class BathParams:
    """One Ohmic bath, ``h(w) = s * w * exp(-w / omega_c)``.

    ``omega_c`` is given in units of ``omega0``.
    """

    label: str
    s: float = 0.01
    omega_c: float = 3.0

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValidationError(f"bath label must be 'L' or 'R', got {self.label!r}")
        if not self.s >= 0:
            raise ValidationError(f"coupling strength s must be >= 0, got {self.s}")
        if not self.omega_c > 0:
            raise ValidationError(f"cutoff omega_c must be > 0, got {self.omega_c}")

    def spectral_density(self, omega):
        omega = np.asarray(omega, dtype=float)
        return self.s * omega * np.exp(-omega / self.omega_c)


def reference_baths(s: float = 0.01, omega_c: float = 3.0) -> tuple[BathParams, BathParams]:
    """Symmetric pair of baths with the default weak-coupling parameters."""
    return BathParams("L", s, omega_c), BathParams("R", s, omega_c)


def bose_occupation(beta_tilde: ArrayLike) -> ArrayLike:
    """Mean boson number ``1/(exp(beta_tilde) - 1)`` at the level splitting."""
    b = np.asarray(beta_tilde, dtype=float)
    if np.any(~(b > 0)):
        raise DomainError(f"beta_tilde must be positive, got {beta_tilde!r}")
    with np.errstate(over="ignore"):
        out = 1.0 / np.expm1(b)
    return float(out) if out.ndim == 0 else out


def gibbs_ground_population(beta_tilde: ArrayLike) -> ArrayLike:
    """Thermal population of the lower level, ``e^b / (e^b + 1)``."""
    b = np.asarray(beta_tilde, dtype=float)
    if np.any(~(b > 0)):
        raise DomainError(f"beta_tilde must be positive, got {beta_tilde!r}")
    out = 1.0 / (1.0 + np.exp(-b))
    return float(out) if out.ndim == 0 else out


def coupling_gamma(bath: BathParams) -> float:
    """Golden-rule rate prefactor ``2*pi*h(omega0)`` in units of ``omega0``."""
    return 2.0 * math.pi * bath.s * math.exp(-1.0 / bath.omega_c)


@dataclass(frozen=True)
class IntervalRates:
    """Rate constants for one interval, or for many when fields are arrays.

    All rates are in units of ``omega0``. ``rho_s`` is the steady ground
    population ``K_u / (K_d + K_u)`` and ``Lambda = -(K_d + K_u)`` the
    relaxation rate towards it. With both couplings switched off ``Lambda``
    is 0 and ``rho_s`` is NaN.
    """

    gamma_L: float
    gamma_R: float
    N_L: ArrayLike
    N_R: ArrayLike

    @property
    def k_d_L(self):
        return self.gamma_L * self.N_L

    @property
    def k_d_R(self):
        return self.gamma_R * self.N_R

    @property
    def k_u_L(self):
        return self.gamma_L * (1.0 + self.N_L)

    @property
    def k_u_R(self):
        return self.gamma_R * (1.0 + self.N_R)

    @property
    def A_L(self):
        return -self.gamma_L * (1.0 + 2.0 * self.N_L)

    @property
    def A_R(self):
        return -self.gamma_R * (1.0 + 2.0 * self.N_R)

    @property
    def B_L(self):
        return -self.k_u_L

    @property
    def B_R(self):
        return -self.k_u_R

    @property
    def K_d(self):
        return self.k_d_L + self.k_d_R

    @property
    def K_u(self):
        return self.k_u_L + self.k_u_R

    @property
    def Lambda(self):
        return self.A_L + self.A_R

    @property
    def rho_s(self):
        with np.errstate(invalid="ignore", divide="ignore"):
            return -self.K_u / self.Lambda

    def A(self, label: str):
        return self.A_L if label == "L" else self.A_R

    def B(self, label: str):
        return self.B_L if label == "L" else self.B_R

    def __len__(self):
        return np.size(self.N_L)


def interval_rates(
    baths: Sequence[BathParams],
    temperatures: Sequence[ArrayLike],
    units: UnitSystem = DEFAULT_UNITS,
) -> IntervalRates:
    """Rates for bath temperatures ``(T_L, T_R)`` in kelvin.

    ``T_L`` and ``T_R`` may be arrays (one entry per interval), in which case
    every derived field is an array as well.
    """
    bath_L, bath_R = _ordered(baths)
    T_L, T_R = temperatures
    N_L = bose_occupation(beta_tilde_from_kelvin(T_L, units))
    N_R = bose_occupation(beta_tilde_from_kelvin(T_R, units))
    return IntervalRates(coupling_gamma(bath_L), coupling_gamma(bath_R), N_L, N_R)


def markov_generator(rates: IntervalRates, chi_derivative_bath: str) -> tuple:
    """Counting-field derivative coefficients ``(A, B)`` for one bath.

    The heat emitted into that bath during an interval is
    ``A * integral(rho00) - B * dt`` (in units of ``hbar*omega0``).
    """
    if chi_derivative_bath not in LABELS:
        raise ValidationError(f"bath must be 'L' or 'R', got {chi_derivative_bath!r}")
    return rates.A(chi_derivative_bath), rates.B(chi_derivative_bath)


def _ordered(baths: Sequence[BathParams]) -> tuple[BathParams, BathParams]:
    by_label = {b.label: b for b in baths}
    if len(baths) != 2 or set(by_label) != set(LABELS):
        raise ValidationError("expected exactly one 'L' and one 'R' bath")
    return by_label["L"], by_label["R"]
