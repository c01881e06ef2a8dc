"""Bath correlation functions and the time-dependent decay rate.

Before the Markovian limit is taken, the population relaxation rate of
the junction builds up over time as

    Lambda(t) = -int_0^t [V+(tau) + V-(tau)] dtau
              = -4 int_0^t cos(tau) sum_v Re Phi_v(tau) dtau

and approaches its Markovian value ``-sum_v Gamma_v (1 + 2 N_v)`` once the
bath correlations have decayed. All times are scaled by ``omega0``.
"""
from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import quadrature
from .bath import BathParams, _ordered, bose_occupation, coupling_gamma
from .errors import QuadratureError, ValidationError
from .protocol import reference_protocol, sample_protocol
from .units import DEFAULT_UNITS, UnitSystem, beta_tilde_from_kelvin

#: Upper frequency limit of the spectral integrals, in units of omega_c.
CUTOFF_MULTIPLE = 50.0
#: Largest allowed integrand at the upper limit relative to its peak.
TAIL_BOUND = 1e-12

PHI_RTOL = 1e-8
#: Absolute tolerance of the spectral integrals relative to ``s * omega_c**2``.
ABS_FLOOR = 1e-13
LAMBDA_RTOL = 1e-7
# inner tolerance used while Lambda(t) integrates Re Phi over time
_NESTED_PHI_RTOL = 1e-10


def _thermal_weight(bath: BathParams, beta: float):
    """``h(w) * coth(beta w / 2)`` with its finite ``w -> 0`` limit ``2 s / beta``."""
    s, wc = bath.s, bath.omega_c

    def f(w):
        x = 0.5 * beta * w
        if x < 1e-6:
            return 2.0 * s / beta * (1.0 + x * x / 3.0) * math.exp(-w / wc)
        return s * w * math.exp(-w / wc) / math.tanh(x)

    return f


def _check_tail(bath: BathParams, beta: float) -> float:
    w_max = CUTOFF_MULTIPLE * bath.omega_c
    f = _thermal_weight(bath, beta)
    peak = max(f(bath.omega_c), f(0.0))
    if peak > 0 and f(w_max) > TAIL_BOUND * peak:
        raise QuadratureError(f"spectral tail at {w_max} exceeds {TAIL_BOUND} of the peak")
    return w_max


def bath_correlation(bath: BathParams, beta_tilde: float, tau: float, rtol: float = PHI_RTOL) -> complex:
    """Correlation function ``Phi(tau)`` of one bath.

    ``int_0^inf h(w) [coth(beta w/2) cos(w tau) - i sin(w tau)] dw``, with
    the frequency integral truncated at ``50 * omega_c``.
    """
    if not beta_tilde > 0:
        raise ValidationError(f"beta_tilde must be positive, got {beta_tilde}")
    if bath.s == 0:
        return 0j
    w_max = _check_tail(bath, beta_tilde)
    f_re = _thermal_weight(bath, beta_tilde)
    s, wc = bath.s, bath.omega_c
    # roundoff floor once the correlation has decayed far below its tau = 0 size
    atol = ABS_FLOOR * s * wc * wc * (1.0 + 2.0 / (beta_tilde * wc))
    if tau == 0.0:
        re, _ = quadrature.adaptive(f_re, 0.0, w_max, rtol=rtol, atol=atol)
        return complex(re, 0.0)
    re, _ = quadrature.adaptive(f_re, 0.0, w_max, rtol=rtol, atol=atol, weight="cos", wvar=tau)
    im, _ = quadrature.adaptive(
        lambda w: s * w * math.exp(-w / wc), 0.0, w_max, rtol=rtol, atol=atol,
        weight="sin", wvar=tau,
    )
    return complex(re, -im)


def imag_correlation_exact(bath: BathParams, tau: float) -> float:
    """Closed form of ``Im Phi(tau)`` for the Ohmic density (any temperature)."""
    wc = bath.omega_c
    return -2.0 * bath.s * wc**3 * tau / (1.0 + (wc * tau) ** 2) ** 2


def _betas(beta_tildes) -> tuple[float, float]:
    b_L, b_R = (float(b) for b in beta_tildes)
    return b_L, b_R


def v_kernels(baths: Sequence[BathParams], beta_tildes, tau: float) -> tuple[float, float]:
    """``V+(tau), V-(tau) = sum_v 2 Re[Phi_v(tau) exp(-/+ i tau)]``."""
    bath_L, bath_R = _ordered(baths)
    b_L, b_R = _betas(beta_tildes)
    phi = bath_correlation(bath_L, b_L, tau) + bath_correlation(bath_R, b_R, tau)
    rot = complex(math.cos(tau), -math.sin(tau))
    return 2.0 * (phi * rot).real, 2.0 * (phi * rot.conjugate()).real


def _re_phi_sum(baths, beta_tildes, rtol):
    bath_L, bath_R = _ordered(baths)
    b_L, b_R = _betas(beta_tildes)

    def f(tau):
        return (
            bath_correlation(bath_L, b_L, tau, rtol).real
            + bath_correlation(bath_R, b_R, tau, rtol).real
        )

    return f


def _lambda_segment(re_phi, a: float, b: float, rtol: float) -> float:
    if b == a:
        return 0.0
    val, _ = quadrature.adaptive(
        re_phi, a, b, rtol=rtol, atol=1e-14, weight="cos", wvar=1.0, limit=1000
    )
    return -4.0 * val


def lambda_of_t(baths: Sequence[BathParams], beta_tildes, t: float, rtol: float = LAMBDA_RTOL) -> float:
    """Time-dependent decay rate ``Lambda(t)`` in units of ``omega0``."""
    if t < 0:
        raise ValidationError(f"t must be non-negative, got {t}")
    re_phi = _re_phi_sum(baths, beta_tildes, _NESTED_PHI_RTOL)
    return _lambda_segment(re_phi, 0.0, float(t), rtol)


def markov_lambda(baths: Sequence[BathParams], beta_tildes) -> float:
    """Markovian decay rate ``-sum_v Gamma_v (1 + 2 N_v)``."""
    return -sum(
        coupling_gamma(b) * (1.0 + 2.0 * bose_occupation(beta))
        for b, beta in zip(_ordered(baths), _betas(beta_tildes))
    )


@dataclass(frozen=True, eq=False)
class CorrelationTrace:
    """``Lambda(t)`` sampled on a grid for one temperature setting."""

    label: str
    temperatures: tuple
    tau_grid: np.ndarray
    phi_values: dict
    lambda_values: np.ndarray
    lambda_markov: float

    @property
    def rel_error(self) -> np.ndarray:
        return (self.lambda_values - self.lambda_markov) / self.lambda_markov

    def settling_time(self, threshold: float = 0.05) -> float:
        """First grid time after which ``|rel_error|`` stays within ``threshold``."""
        bad = np.nonzero(np.abs(self.rel_error) > threshold)[0]
        if len(bad) == 0:
            return float(self.tau_grid[0])
        if bad[-1] == len(self.tau_grid) - 1:
            return math.inf
        return float(self.tau_grid[bad[-1] + 1])


def reference_settings(units: UnitSystem = DEFAULT_UNITS) -> dict[str, tuple[float, float]]:
    """The three temperature settings used to judge the Markovian approximation."""
    T_L0, T_R0 = sample_protocol(reference_protocol(), 0.0)
    return {
        "TL100_TR200": (100.0, 200.0),
        "TL200_TR300": (200.0, 300.0),
        "TL0_TR0": (float(T_L0), float(T_R0)),
    }


def lambda_trace(
    baths: Sequence[BathParams],
    temperatures: tuple[float, float],
    t_grid,
    units: UnitSystem = DEFAULT_UNITS,
    label: str = "",
    with_phi: bool = True,
) -> CorrelationTrace:
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) == 0:
        raise ValidationError("time grid must be a non-empty 1-D sequence")
    if t_grid[0] <= 0 or np.any(np.diff(t_grid) <= 0):
        raise ValidationError("time grid must be strictly increasing and start above 0")
    betas = tuple(beta_tilde_from_kelvin(T, units) for T in temperatures)
    re_phi = _re_phi_sum(baths, betas, _NESTED_PHI_RTOL)
    lam = np.empty(len(t_grid))
    acc, prev = 0.0, 0.0
    for k, t in enumerate(t_grid):
        acc += _lambda_segment(re_phi, prev, t, LAMBDA_RTOL)
        lam[k] = acc
        prev = t
    phis = {}
    if with_phi:
        for b, beta in zip(_ordered(baths), betas):
            phis[b.label] = np.array([bath_correlation(b, beta, t) for t in t_grid])
    return CorrelationTrace(
        label, tuple(temperatures), t_grid, phis, lam, markov_lambda(baths, betas)
    )


def relative_error_trace(
    baths: Sequence[BathParams],
    settings: Mapping[str, tuple[float, float]] | None,
    t_grid,
    units: UnitSystem = DEFAULT_UNITS,
    threads: int = 1,
    with_phi: bool = False,
) -> list[CorrelationTrace]:
    """One ``CorrelationTrace`` per temperature setting, in the order given."""
    if settings is None:
        settings = reference_settings(units)
    items = list(settings.items())

    def run(item):
        label, temps = item
        return lambda_trace(baths, temps, t_grid, units, label, with_phi)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, items))
    return [run(it) for it in items]


def traces_to_csv(traces: Sequence[CorrelationTrace], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t_scaled", "lambda_t", "lambda_markov", "rel_error", "setting_label"])
        for tr in traces:
            for t, lam, err in zip(tr.tau_grid, tr.lambda_values, tr.rel_error):
                w.writerow([_fmt(t), _fmt(lam), _fmt(tr.lambda_markov), _fmt(err), tr.label])


def _fmt(x: float) -> str:
    return format(float(x), ".17g")
