"""Experiment configuration: a flat ``key = value`` file in one ``[experiment]`` section.

Example::

    [experiment]
    kind = flux-sweep
    hbar_omega0_meV = 25
    s_L = 0.01
    s_R = 0.01
    omega_c_L = 3
    omega_c_R = 3
    T0_L_K = 200
    T0_R_K = 200
    dT_L_K = 100
    dT_R_K = 100
    phase_L_deg = 45
    phase_R_deg = -45
    omega_THz = 5
    omega_sweep_THz = 0.1, 5, 50
    n = 41
    beta_s = 0.1, 0.5, beta0, 3

Lists are comma separated. ``omega_sweep_THz`` and ``t_grid`` are
``start, stop, count`` triples with both endpoints included. ``beta0``
in ``beta_s`` starts the junction in the steady state of the first
interval. Frequencies in THz mean 1e12 rad/s.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .bath import BathParams, gibbs_ground_population
from .dynamics import schedule_rates
from .errors import ValidationError
from .protocol import DiscretizedSchedule, ModulationProtocol, discretize, swap_baths
from .units import UnitSystem, interval_duration

KINDS = ("flux-sweep", "decompose", "phi0-profile", "lambda-trace", "geometric")
SECTION = "experiment"
BETA0 = "beta0"


@dataclass
class ExperimentConfig:
    kind: str = "flux-sweep"
    hbar_omega0_meV: float = 25.0
    s_L: float = 0.01
    s_R: float = 0.01
    omega_c_L: float = 3.0
    omega_c_R: float = 3.0
    T0_L_K: float = 200.0
    T0_R_K: float = 200.0
    dT_L_K: float = 100.0
    dT_R_K: float = 100.0
    phase_L_deg: float = 45.0
    phase_R_deg: float = -45.0
    omega_THz: list = field(default_factory=lambda: [5.0])
    omega_sweep_THz: tuple | None = None
    n: int = 41
    beta_s: list = field(default_factory=lambda: [BETA0])
    sampling: str = "left"
    period_count: int = 1
    swap_baths: bool = False
    schedule_csv: str = ""
    t_grid: tuple = (0.01, 50.0, 500)
    settings: str = "reference"
    riemann_n: list = field(default_factory=lambda: [41, 101, 1001, 10001])
    trajectory_out: str = ""
    out: str = ""

    # ------------------------------------------------------------------ io
    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        parser.optionxform = str
        try:
            read = parser.read(path)
        except configparser.Error as exc:
            raise ValidationError(f"{path}: {exc}") from exc
        if not read:
            raise ValidationError(f"cannot read config file {path}")
        if not parser.has_section(SECTION):
            raise ValidationError(f"{path}: missing [{SECTION}] section")
        cfg = cls.from_mapping(dict(parser[SECTION]))
        if cfg.schedule_csv and not Path(cfg.schedule_csv).is_absolute():
            cfg.schedule_csv = str(Path(path).parent / cfg.schedule_csv)
        return cfg

    @classmethod
    def from_mapping(cls, raw: dict) -> "ExperimentConfig":
        known = {f.name: f for f in fields(cls)}
        unknown = sorted(set(raw) - set(known))
        if unknown:
            raise ValidationError(f"unknown config keys: {', '.join(unknown)}")
        kwargs = {}
        for key, text in raw.items():
            try:
                kwargs[key] = _PARSERS[key](text.strip())
            except (ValueError, TypeError) as exc:
                raise ValidationError(f"{key}: cannot parse {text!r} ({exc})") from exc
        cfg = cls(**kwargs)
        cfg.validate()
        return cfg

    def to_file(self, path) -> None:
        parser = configparser.ConfigParser()
        parser.optionxform = str
        parser[SECTION] = {f.name: _format_value(getattr(self, f.name)) for f in fields(self)}
        with open(path, "w") as fh:
            parser.write(fh)

    # ------------------------------------------------------------ validation
    def validate(self) -> None:
        errors = []
        if self.kind not in KINDS:
            errors.append(f"kind: must be one of {', '.join(KINDS)}, got {self.kind!r}")
        if not self.hbar_omega0_meV > 0:
            errors.append("hbar_omega0_meV: must be positive")
        for key in ("s_L", "s_R"):
            if not getattr(self, key) >= 0:
                errors.append(f"{key}: must be >= 0")
        if self.s_L == 0 and self.s_R == 0:
            errors.append("s_L, s_R: at least one bath must be coupled")
        for key in ("omega_c_L", "omega_c_R"):
            if not getattr(self, key) > 0:
                errors.append(f"{key}: must be positive")
        for side in ("L", "R"):
            T0, dT = getattr(self, f"T0_{side}_K"), getattr(self, f"dT_{side}_K")
            if not T0 - abs(dT) > 0:
                errors.append(f"T0_{side}_K, dT_{side}_K: temperature must stay positive over the cycle")
        if not self.omega_THz or any(not w > 0 for w in self.omega_THz):
            errors.append("omega_THz: needs one or more positive values")
        if self.omega_sweep_THz is not None:
            errors += _check_triple("omega_sweep_THz", self.omega_sweep_THz, positive=True)
        if self.n < 1:
            errors.append("n: must be >= 1")
        if not self.beta_s:
            errors.append("beta_s: needs at least one value")
        for b in self.beta_s:
            if b != BETA0 and not (isinstance(b, float) and b > 0):
                errors.append(f"beta_s: {b!r} is neither positive nor '{BETA0}'")
        if self.sampling not in ("left", "midpoint"):
            errors.append("sampling: must be 'left' or 'midpoint'")
        if self.period_count < 1:
            errors.append("period_count: must be >= 1")
        errors += _check_triple("t_grid", self.t_grid, positive=True)
        if self.settings != "reference":
            try:
                parse_settings(self.settings)
            except ValueError as exc:
                errors.append(f"settings: {exc}")
        if any(m < 1 for m in self.riemann_n):
            errors.append("riemann_n: values must be >= 1")
        if errors:
            raise ValidationError("invalid configuration:\n  " + "\n  ".join(errors))

    # -------------------------------------------------------------- builders
    def units(self) -> UnitSystem:
        return UnitSystem(self.hbar_omega0_meV)

    def baths(self) -> tuple[BathParams, BathParams]:
        return BathParams("L", self.s_L, self.omega_c_L), BathParams("R", self.s_R, self.omega_c_R)

    def protocol(self, omega_THz: float) -> ModulationProtocol:
        return ModulationProtocol(
            self.T0_L_K,
            self.T0_R_K,
            self.dT_L_K,
            self.dT_R_K,
            math.radians(self.phase_L_deg),
            math.radians(self.phase_R_deg),
            omega_THz * 1e12,
        )

    def omegas(self) -> list[float]:
        if self.omega_sweep_THz is not None:
            return list(_grid(self.omega_sweep_THz))
        return list(self.omega_THz)

    def schedule(self, omega_THz: float) -> DiscretizedSchedule:
        if self.schedule_csv:
            pairs = DiscretizedSchedule.from_csv(self.schedule_csv, 1.0).entries
            sched = DiscretizedSchedule(interval_duration(omega_THz * 1e12, len(pairs)), pairs)
        else:
            sched = discretize(self.protocol(omega_THz), self.n, self.sampling)
        return swap_baths(sched) if self.swap_baths else sched

    def initial_population(self, beta, schedule: DiscretizedSchedule) -> float:
        """Initial ground population for a ``beta_s`` entry."""
        if beta == BETA0:
            return float(schedule_rates(schedule, self.baths(), self.units()).rho_s[0])
        return float(gibbs_ground_population(beta))

    def time_grid(self) -> np.ndarray:
        return _grid(self.t_grid)

    def temperature_settings(self):
        return None if self.settings == "reference" else parse_settings(self.settings)


def parse_settings(text: str) -> dict[str, tuple[float, float]]:
    """``"100:200, 200:300"`` -> ``{"TL100_TR200": (100, 200), ...}``."""
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        left, _, right = item.partition(":")
        T_L, T_R = float(left), float(right)
        if not (T_L > 0 and T_R > 0):
            raise ValueError(f"temperatures must be positive in {item!r}")
        out[f"TL{left.strip()}_TR{right.strip()}"] = (T_L, T_R)
    if not out:
        raise ValueError("no temperature pairs given")
    return out


def _grid(triple) -> np.ndarray:
    start, stop, count = triple
    return np.linspace(float(start), float(stop), int(count))


def _check_triple(name, triple, positive=False):
    try:
        start, stop, count = triple
    except (TypeError, ValueError):
        return [f"{name}: expected 'start, stop, count'"]
    errs = []
    if int(count) != count or count < 1:
        errs.append(f"{name}: count must be a positive integer")
    if stop < start or (count > 1 and stop == start):
        errs.append(f"{name}: stop must exceed start")
    if positive and not start > 0:
        errs.append(f"{name}: start must be positive")
    return errs


def _floats(text):
    return [float(t) for t in text.split(",") if t.strip()]


def _ints(text):
    return [int(t) for t in text.split(",") if t.strip()]


def _triple(text):
    vals = _floats(text)
    if len(vals) != 3:
        raise ValueError("expected 'start, stop, count'")
    return (vals[0], vals[1], int(vals[2]) if vals[2] == int(vals[2]) else vals[2])


def _optional_triple(text):
    return _triple(text) if text else None


def _betas(text):
    out = []
    for tok in (t.strip() for t in text.split(",")):
        if tok:
            out.append(BETA0 if tok.lower() == BETA0 else float(tok))
    return out


def _bool(text):
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off", ""):
        return False
    raise ValueError("expected true/false")


_PARSERS = {
    "kind": str,
    "hbar_omega0_meV": float,
    "s_L": float,
    "s_R": float,
    "omega_c_L": float,
    "omega_c_R": float,
    "T0_L_K": float,
    "T0_R_K": float,
    "dT_L_K": float,
    "dT_R_K": float,
    "phase_L_deg": float,
    "phase_R_deg": float,
    "omega_THz": _floats,
    "omega_sweep_THz": _optional_triple,
    "n": int,
    "beta_s": _betas,
    "sampling": str,
    "period_count": int,
    "swap_baths": _bool,
    "schedule_csv": str,
    "t_grid": _triple,
    "settings": str,
    "riemann_n": _ints,
    "trajectory_out": str,
    "out": str,
}


def _format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ", ".join(_format_value(x) for x in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)
