"""Temperature-modulation protocols and their piecewise-constant discretization."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ValidationError
from .units import interval_duration


@dataclass(frozen=True)
class ModulationProtocol:
    """Sinusoidal bath temperatures ``T0 + dT * cos(Omega * t + phase)``.

    Temperatures are in kelvin, phases in radians, ``Omega`` in rad/s.
    A sine waveform is a cosine with its phase shifted by ``-pi/2``.
    """

    T0_L: float
    T0_R: float
    dT_L: float
    dT_R: float
    phase_L: float
    phase_R: float
    Omega: float

    def __post_init__(self):
        for side, T0, dT in (("L", self.T0_L, self.dT_L), ("R", self.T0_R, self.dT_R)):
            if not T0 - abs(dT) > 0:
                raise ValidationError(
                    f"T_{side} reaches non-positive values: offset {T0} K, amplitude {dT} K"
                )
        if not self.Omega > 0:
            raise ValidationError(f"Omega must be positive, got {self.Omega}")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.Omega

    def at_phase(self, theta):
        """Temperatures at cycle phase ``theta = Omega * t``."""
        theta = np.asarray(theta, dtype=float)
        return (
            self.T0_L + self.dT_L * np.cos(theta + self.phase_L),
            self.T0_R + self.dT_R * np.cos(theta + self.phase_R),
        )

    def phase_derivative(self, theta):
        """``(dT_L/dtheta, dT_R/dtheta)`` at cycle phase ``theta``."""
        theta = np.asarray(theta, dtype=float)
        return (
            -self.dT_L * np.sin(theta + self.phase_L),
            -self.dT_R * np.sin(theta + self.phase_R),
        )

    def reversed(self) -> "ModulationProtocol":
        """Same contour traversed backwards (``t -> -t``)."""
        return ModulationProtocol(
            self.T0_L, self.T0_R, self.dT_L, self.dT_R, -self.phase_L, -self.phase_R, self.Omega
        )

    def with_omega(self, Omega: float) -> "ModulationProtocol":
        return ModulationProtocol(
            self.T0_L, self.T0_R, self.dT_L, self.dT_R, self.phase_L, self.phase_R, Omega
        )

    def contour_matrix(self) -> np.ndarray:
        """Linear map taking the unit circle onto the temperature contour.

        ``(T_L, T_R) = center + M @ (cos theta, sin theta)``; ``det(M)`` is
        positive for counter-clockwise traversal in the (T_L, T_R) plane.
        """
        return np.array(
            [
                [self.dT_L * math.cos(self.phase_L), -self.dT_L * math.sin(self.phase_L)],
                [self.dT_R * math.cos(self.phase_R), -self.dT_R * math.sin(self.phase_R)],
            ]
        )


def reference_protocol(Omega: float = 1e12) -> ModulationProtocol:
    """``T_L = 200 + 100 cos(Omega t + pi/4)``, ``T_R = 200 + 100 sin(Omega t + pi/4)``."""
    return ModulationProtocol(200.0, 200.0, 100.0, 100.0, math.pi / 4, -math.pi / 4, Omega)


def sample_protocol(p: ModulationProtocol, t):
    """Temperatures ``(T_L, T_R)`` in kelvin at time ``t`` (seconds)."""
    if np.any(np.asarray(t) < 0):
        raise DomainError("sampling time must be non-negative")
    return p.at_phase(np.multiply(p.Omega, t))


@dataclass(frozen=True, eq=False)
class DiscretizedSchedule:
    """``n`` intervals of length ``delta_t`` seconds, constant temperatures in each."""

    delta_t: float
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float, copy=True)
        if entries.ndim != 2 or entries.shape[1] != 2 or entries.shape[0] < 1:
            raise ValidationError("schedule entries must be a non-empty list of (T_L, T_R) pairs")
        if np.any(~(entries > 0)):
            raise ValidationError("schedule temperatures must all be positive")
        if not self.delta_t > 0:
            raise ValidationError(f"delta_t must be positive, got {self.delta_t}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def period(self) -> float:
        return self.n * self.delta_t

    @property
    def T_L(self) -> np.ndarray:
        return self.entries[:, 0]

    @property
    def T_R(self) -> np.ndarray:
        return self.entries[:, 1]

    def __eq__(self, other):
        if not isinstance(other, DiscretizedSchedule):
            return NotImplemented
        return self.delta_t == other.delta_t and np.array_equal(self.entries, other.entries)

    def repeat(self, periods: int) -> "DiscretizedSchedule":
        """The schedule run ``periods`` times back to back."""
        if int(periods) != periods or periods < 1:
            raise ValidationError(f"period count must be a positive integer, got {periods}")
        return DiscretizedSchedule(self.delta_t, np.tile(self.entries, (int(periods), 1)))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["j", "T_L_K", "T_R_K"])
            for j, (tl, tr) in enumerate(self.entries, start=1):
                w.writerow([j, format(tl, ".17g"), format(tr, ".17g")])

    @classmethod
    def from_csv(cls, path, delta_t: float) -> "DiscretizedSchedule":
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        if not rows:
            raise ValidationError(f"{path}: no schedule rows")
        try:
            rows.sort(key=lambda r: int(r["j"]))
            pairs = [(float(r["T_L_K"]), float(r["T_R_K"])) for r in rows]
        except (KeyError, ValueError) as exc:
            raise ValidationError(f"{path}: expected columns j,T_L_K,T_R_K ({exc})") from exc
        if [int(r["j"]) for r in rows] != list(range(1, len(rows) + 1)):
            raise ValidationError(f"{path}: interval indices must run 1..n")
        return cls(delta_t, pairs)


def tabulated_schedule(pairs: Iterable[Sequence[float]], Omega: float) -> DiscretizedSchedule:
    """Schedule from explicit ``(T_L, T_R)`` pairs spread evenly over one period."""
    pairs = np.asarray(list(pairs), dtype=float)
    return DiscretizedSchedule(interval_duration(Omega, len(pairs)), pairs)


def discretize(p: ModulationProtocol, n: int, sampling: str = "left") -> DiscretizedSchedule:
    """Sample ``p`` once per interval.

    ``sampling="left"`` uses ``t_{j-1} = (j-1) dt``; ``"midpoint"`` uses
    ``(j - 1/2) dt`` and exists for sensitivity studies.
    """
    dt = interval_duration(p.Omega, n)
    if sampling == "left":
        offset = 0.0
    elif sampling == "midpoint":
        offset = 0.5
    else:
        raise ValidationError(f"sampling must be 'left' or 'midpoint', got {sampling!r}")
    theta = 2.0 * math.pi * (np.arange(n) + offset) / n
    T_L, T_R = p.at_phase(theta)
    return DiscretizedSchedule(dt, np.column_stack([T_L, T_R]))


def swap_baths(schedule: DiscretizedSchedule) -> DiscretizedSchedule:
    return DiscretizedSchedule(schedule.delta_t, schedule.entries[:, ::-1])
