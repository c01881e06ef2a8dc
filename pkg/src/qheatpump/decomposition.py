"""Split the accumulated heat into dynamical, geometric and non-adiabatic parts.

For bath ``v`` the heat over the schedule (units of ``hbar*omega0``) is
exactly ``G1 + G2 + G3``:

* ``G1`` sums the steady-state current of every interval,
* ``G2`` sums the jumps of the steady population between intervals,
  weighted by ``A/Lambda`` of the later interval,
* ``G3`` collects the lag of the population behind its steady value, both
  from the initial state (``phi0``) and from every later jump (``psi``).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .bath import LABELS, BathParams
from .dynamics import _check_probability, accumulate_flux, schedule_rates, steady_current
from .protocol import DiscretizedSchedule
from .units import DEFAULT_UNITS, UnitSystem

#: Denominator floor for relative identity residuals, in units of hbar*omega0.
IDENTITY_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class BathDecomposition:
    label: str
    G1: float
    G2: float
    G3: float
    phi0: np.ndarray
    psi: np.ndarray
    direct_total: float

    @property
    def total(self) -> float:
        return self.G1 + self.G2 + self.G3

    @property
    def identity_residual(self) -> float:
        return abs(self.direct_total - self.total) / max(abs(self.direct_total), IDENTITY_FLOOR)


@dataclass(frozen=True, eq=False)
class FluxDecomposition:
    """Per-bath decomposition plus the net currents in 1/s.

    ``duration`` is the accumulation time in seconds.
    """

    L: BathDecomposition
    R: BathDecomposition
    duration: float

    def __getitem__(self, label: str) -> BathDecomposition:
        return self.L if label == "L" else self.R

    def _net(self, attr):
        return (getattr(self.R, attr) - getattr(self.L, attr)) / self.duration

    @property
    def J_dyn(self) -> float:
        return self._net("G1")

    @property
    def J_geo(self) -> float:
        return self._net("G2")

    @property
    def J_nonad(self) -> float:
        return self._net("G3")

    @property
    def J_hat(self) -> float:
        """Net current from the direct accumulation."""
        return self._net("direct_total")

    @property
    def phi0_hat(self) -> np.ndarray:
        return self.R.phi0 - self.L.phi0

    @property
    def identity_residual(self) -> float:
        return max(self.L.identity_residual, self.R.identity_residual)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["bath", "G1", "G2", "G3", "direct_total", "identity_residual"])
            for b in (self.L, self.R):
                w.writerow(
                    [b.label] + [_fmt(v) for v in (b.G1, b.G2, b.G3, b.direct_total, b.identity_residual)]
                )

    def profile_to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["j", "phi0_hat"])
            for j, v in enumerate(self.phi0_hat, start=1):
                w.writerow([j, _fmt(v)])


def _prepare(schedule, baths, units):
    rates = schedule_rates(schedule, baths, units)
    dt = schedule.delta_t * units.omega0_rad_per_s
    return rates, dt


def dynamical_part(
    schedule: DiscretizedSchedule, baths: Sequence[BathParams], units: UnitSystem = DEFAULT_UNITS
) -> dict[str, float]:
    """``G1`` per bath via ``Gamma_L Gamma_R (N_L - N_R) / K * dt``.

    This equals ``sum (A rho_s - B) dt`` but avoids the cancellation
    between the two terms when the baths are close in temperature.
    """
    rates, dt = _prepare(schedule, baths, units)
    g1_R = float(np.sum(steady_current(rates)) * dt)
    return {"L": -g1_R, "R": g1_R}


def dynamical_part_generic(
    schedule: DiscretizedSchedule, baths: Sequence[BathParams], units: UnitSystem = DEFAULT_UNITS
) -> dict[str, float]:
    """``G1`` per bath as ``sum_j (A(j) rho_s(j) - B(j)) dt``."""
    rates, dt = _prepare(schedule, baths, units)
    return {
        lab: float(np.sum(rates.A(lab) * rates.rho_s - rates.B(lab)) * dt) for lab in LABELS
    }


def geometric_part(
    schedule: DiscretizedSchedule, baths: Sequence[BathParams], units: UnitSystem = DEFAULT_UNITS
) -> dict[str, float]:
    """``G2`` per bath; zero for a single interval. Independent of ``delta_t``."""
    rates, _ = _prepare(schedule, baths, units)
    rho_s = np.asarray(rates.rho_s)
    lam = np.asarray(rates.Lambda)
    out = {}
    for lab in LABELS:
        A = np.asarray(rates.A(lab))
        out[lab] = float(np.sum(A[1:] / lam[1:] * np.diff(rho_s))) if schedule.n >= 2 else 0.0
    return out


def nonadiabatic_part(
    schedule: DiscretizedSchedule,
    baths: Sequence[BathParams],
    rho00_initial: float,
    units: UnitSystem = DEFAULT_UNITS,
) -> dict[str, tuple[float, np.ndarray, np.ndarray]]:
    """``(G3, phi0, psi)`` per bath.

    ``phi0[j-1]`` is the reminiscence of the initial state in interval
    ``j``; ``psi`` is returned for every interval although ``G3`` only
    uses its entries ``2 .. n``.
    """
    rho0 = _check_probability(rho00_initial)
    rates, dt = _prepare(schedule, baths, units)
    lam = np.asarray(rates.Lambda, dtype=float)
    rho_s = np.asarray(rates.rho_s, dtype=float)
    d1 = rho0 - rho_s[0]
    out = {}
    for lab in LABELS:
        phi0, psi, g3 = kernels.nonadiabatic_sums(rates.A(lab), lam, rho_s, dt, d1)
        out[lab] = (float(g3), phi0, psi)
    return out


def phi0_profile(
    schedule: DiscretizedSchedule,
    baths: Sequence[BathParams],
    rho00_initial: float,
    units: UnitSystem = DEFAULT_UNITS,
) -> np.ndarray:
    """``phi0_R(j) - phi0_L(j)`` for ``j = 1 .. n``."""
    parts = nonadiabatic_part(schedule, baths, rho00_initial, units)
    return parts["R"][1] - parts["L"][1]


def decompose(
    schedule: DiscretizedSchedule,
    baths: Sequence[BathParams],
    rho00_initial: float,
    units: UnitSystem = DEFAULT_UNITS,
    period_count: int = 1,
) -> FluxDecomposition:
    """Full decomposition alongside the direct accumulation it must reproduce."""
    if period_count != 1:
        schedule = schedule.repeat(period_count)
    g1 = dynamical_part(schedule, baths, units)
    g2 = geometric_part(schedule, baths, units)
    g3 = nonadiabatic_part(schedule, baths, rho00_initial, units)
    direct = accumulate_flux(schedule, baths, rho00_initial, units)
    parts = {
        lab: BathDecomposition(
            lab, g1[lab], g2[lab], g3[lab][0], g3[lab][1], g3[lab][2], direct.total(lab)
        )
        for lab in LABELS
    }
    return FluxDecomposition(parts["L"], parts["R"], schedule.period)


def geometric_net_current(
    schedule: DiscretizedSchedule, baths: Sequence[BathParams], units: UnitSystem = DEFAULT_UNITS
) -> float:
    """Net geometric current ``(G2_R - G2_L) / period`` in 1/s."""
    g2 = geometric_part(schedule, baths, units)
    return (g2["R"] - g2["L"]) / schedule.period


def _fmt(x: float) -> str:
    return format(float(x), ".17g")
