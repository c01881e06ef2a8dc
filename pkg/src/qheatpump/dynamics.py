"""Piecewise-Markovian population dynamics and direct heat accumulation."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .bath import BathParams, IntervalRates, interval_rates
from .errors import ValidationError
from .protocol import DiscretizedSchedule
from .units import DEFAULT_UNITS, UnitSystem


@dataclass(frozen=True, eq=False)
class PopulationTrajectory:
    """Ground-state population at the interval boundaries ``t_0 .. t_n``.

    ``rho_s`` and ``Lambda`` (units of ``omega0``) are the per-interval
    steady population and relaxation rate; ``integrals`` holds the time
    integral of ``rho00`` over each interval in scaled time.
    """

    rho00: np.ndarray
    rho_s: np.ndarray
    Lambda: np.ndarray
    integrals: np.ndarray
    delta_t: float
    units: UnitSystem = DEFAULT_UNITS

    @property
    def n(self) -> int:
        return len(self.rho_s)

    def to_csv(self, path) -> None:
        """Write ``j,t_ps,rho00,rho_s_j,Lambda_j_per_ps``; row ``j`` is the state at ``t_j``.

        Interval columns are blank on the ``j = 0`` row (no interval ends there).
        """
        rate_to_per_ps = 1.0 / self.units.time_unit_ps
        dt_ps = self.delta_t * 1e12
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["j", "t_ps", "rho00", "rho_s_j", "Lambda_j_per_ps"])
            w.writerow([0, _fmt(0.0), _fmt(self.rho00[0]), "", ""])
            for j in range(1, self.n + 1):
                w.writerow(
                    [
                        j,
                        _fmt(j * dt_ps),
                        _fmt(self.rho00[j]),
                        _fmt(self.rho_s[j - 1]),
                        _fmt(self.Lambda[j - 1] * rate_to_per_ps),
                    ]
                )


@dataclass(frozen=True, eq=False)
class HeatRecord:
    """Heat emitted into each bath, in units of ``hbar*omega0``.

    ``duration`` is the accumulation time in seconds (one period unless
    several periods were requested); ``J_hat`` is the net left-to-right
    current ``(J_R - J_L) / (hbar*omega0 * duration)`` in 1/s.
    """

    q_L: np.ndarray
    q_R: np.ndarray
    duration: float

    @property
    def J_L(self) -> float:
        return float(np.sum(self.q_L))

    @property
    def J_R(self) -> float:
        return float(np.sum(self.q_R))

    @property
    def J_hat(self) -> float:
        return (self.J_R - self.J_L) / self.duration

    def total(self, label: str) -> float:
        return self.J_L if label == "L" else self.J_R


def schedule_rates(
    schedule: DiscretizedSchedule, baths: Sequence[BathParams], units: UnitSystem = DEFAULT_UNITS
) -> IntervalRates:
    """Per-interval rate arrays for a schedule; requires at least one coupled bath."""
    rates = interval_rates(baths, (schedule.T_L, schedule.T_R), units)
    if rates.gamma_L == 0 and rates.gamma_R == 0:
        raise ValidationError("at least one bath must have a non-zero coupling strength")
    return rates


def steady_current(rates: IntervalRates):
    """Steady-state heat current into ``R`` (minus that into ``L``), units of ``omega0``.

    Equals ``A_R rho_s - B_R`` but keeps full relative accuracy for nearly
    equal bath temperatures.
    """
    K = -np.asarray(rates.Lambda, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(K > 0, rates.gamma_L * rates.gamma_R * (rates.N_L - rates.N_R) / K, 0.0)
    return float(out) if out.ndim == 0 else out


def _check_probability(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"initial ground population must lie in [0, 1], got {p}")
    return float(p)


def propagate_population(
    schedule: DiscretizedSchedule,
    baths: Sequence[BathParams],
    rho00_initial: float,
    units: UnitSystem = DEFAULT_UNITS,
) -> PopulationTrajectory:
    rho0 = _check_probability(rho00_initial)
    rates = schedule_rates(schedule, baths, units)
    dt = schedule.delta_t * units.omega0_rad_per_s
    lam = np.asarray(rates.Lambda, dtype=float)
    rho_s = np.asarray(rates.rho_s, dtype=float)
    rho, integral = kernels.propagate(lam, rho_s, dt, rho0)
    return PopulationTrajectory(rho, rho_s, lam, integral, schedule.delta_t, units)


def interval_heat(rates: IntervalRates, rho00_start: float, delta_t: float) -> tuple[float, float]:
    """Heat ``(q_L, q_R)`` emitted during one interval of scaled length ``delta_t``.

    ``q = A * int(rho00) - B * dt`` is evaluated as the steady-state part
    plus the closed-form relaxation part, so equal bath temperatures give
    exactly zero at the steady population. When both couplings vanish no
    heat flows and ``(0.0, 0.0)`` is returned.
    """
    if not delta_t > 0:
        raise ValidationError(f"delta_t must be positive, got {delta_t}")
    rho0 = _check_probability(rho00_start)
    lam = float(rates.Lambda)
    if lam == 0.0:
        return 0.0, 0.0
    d = rho0 - float(rates.rho_s)
    x = lam * delta_t
    relax = d * delta_t * (math.expm1(x) / x)
    j_R = float(steady_current(rates))
    return -j_R * delta_t + float(rates.A_L) * relax, j_R * delta_t + float(rates.A_R) * relax


def accumulate_flux(
    schedule: DiscretizedSchedule,
    baths: Sequence[BathParams],
    rho00_initial: float,
    units: UnitSystem = DEFAULT_UNITS,
    period_count: int = 1,
) -> HeatRecord:
    """Sum the per-interval heat along the propagated trajectory.

    The system and baths are taken as factorized at the start of every
    interval, so each interval contributes its Markovian closed form.
    """
    if period_count != 1:
        schedule = schedule.repeat(period_count)
    traj = propagate_population(schedule, baths, rho00_initial, units)
    rates = schedule_rates(schedule, baths, units)
    dt = schedule.delta_t * units.omega0_rad_per_s
    relax = traj.integrals - traj.rho_s * dt
    j_R = steady_current(rates)
    q_L = -j_R * dt + rates.A_L * relax
    q_R = j_R * dt + rates.A_R * relax
    return HeatRecord(np.asarray(q_L), np.asarray(q_R), schedule.period)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")
