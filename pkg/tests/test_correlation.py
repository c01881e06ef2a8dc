import math

import numpy as np
import pytest
from scipy.integrate import quad

from qheatpump import (
    BathParams,
    ValidationError,
    bath_correlation,
    lambda_of_t,
    markov_lambda,
    reference_baths,
    reference_settings,
    relative_error_trace,
    v_kernels,
)
from qheatpump.correlation import imag_correlation_exact, lambda_trace, traces_to_csv

from conftest import GAMMA_REF, T_OMEGA0_K


def _swapped_order_lambda(baths, betas, t):
    """Integrate over time first, analytically, then over frequency."""
    total = 0.0
    for b, beta in zip(baths, betas):

        def g(w):
            return b.spectral_density(w) / math.tanh(beta * w / 2) * (
                math.sin((w - 1) * t) / (w - 1) + math.sin((w + 1) * t) / (w + 1)
            )

        top = 50 * b.omega_c
        total += quad(g, 0, top, points=[1.0], limit=4000, epsabs=1e-14, epsrel=1e-11)[0]
    return -2 * total


@pytest.mark.parametrize("tau", [0.01, 0.3, 1.0, 4.0, 20.0])
def test_imaginary_part_closed_form(tau):
    b = BathParams("L")
    val = bath_correlation(b, 1.2, tau).imag
    assert val == pytest.approx(-2 * 0.01 * 27 * tau / (1 + 9 * tau**2) ** 2, rel=1e-7)
    assert imag_correlation_exact(b, tau) == pytest.approx(val, rel=1e-7)


def test_real_part_against_truncated_quadrature():
    b = BathParams("R", 0.02, 2.0)
    beta, tau = 0.8, 1.7
    ref = quad(
        lambda w: b.spectral_density(w) / math.tanh(beta * w / 2) * math.cos(w * tau),
        0, 120, limit=4000, epsabs=1e-15, epsrel=1e-12,
    )[0]
    assert bath_correlation(b, beta, tau).real == pytest.approx(ref, rel=1e-8)


def test_correlation_symmetry():
    b = BathParams("L")
    a, c = bath_correlation(b, 1.0, 0.9), bath_correlation(b, 1.0, -0.9)
    assert c == pytest.approx(a.conjugate(), rel=1e-8)


def test_zero_lag():
    b = BathParams("L")
    assert bath_correlation(b, 2.0, 0.0).imag == 0.0


def test_v_kernels_sum():
    baths = reference_baths()
    betas = (1.3, 2.9)
    v_plus, v_minus = v_kernels(baths, betas, 0.8)
    re_sum = sum(bath_correlation(b, be, 0.8).real for b, be in zip(baths, betas))
    assert v_plus + v_minus == pytest.approx(4 * math.cos(0.8) * re_sum, rel=1e-8)


@pytest.mark.parametrize("t", [0.3, 1.164, 3.0])
def test_lambda_matches_swapped_order(t):
    baths = reference_baths()
    betas = (T_OMEGA0_K / 100, T_OMEGA0_K / 200)
    assert lambda_of_t(baths, betas, t) == pytest.approx(
        _swapped_order_lambda(baths, betas, t), rel=1e-6
    )


def test_markov_limit_value():
    betas = (T_OMEGA0_K / 100, T_OMEGA0_K / 200)
    assert markov_lambda(reference_baths(), betas) == pytest.approx(-0.12285212115266394, rel=1e-12)
    N = 1 / math.expm1(T_OMEGA0_K / 300)
    assert markov_lambda(reference_baths(), (T_OMEGA0_K / 300,) * 2) == pytest.approx(
        -2 * GAMMA_REF * (1 + 2 * N), rel=1e-12
    )


def test_reference_settings():
    s = reference_settings()
    assert list(s) == ["TL100_TR200", "TL200_TR300", "TL0_TR0"]
    assert s["TL0_TR0"][0] == pytest.approx(200 + 100 / math.sqrt(2))


def test_trace_is_cumulative_and_consistent():
    baths = reference_baths()
    tr = lambda_trace(baths, (100.0, 200.0), [0.5, 1.0, 2.0], label="x")
    betas = (T_OMEGA0_K / 100, T_OMEGA0_K / 200)
    assert tr.lambda_values[-1] == pytest.approx(lambda_of_t(baths, betas, 2.0), rel=1e-7)
    assert set(tr.phi_values) == {"L", "R"}


def _settling(threshold, temps=(150.0, 250.0)):
    grid = np.linspace(0.02, 8.0, 400)
    out = []
    for wc in (2.0, 3.0, 5.0):
        (tr,) = relative_error_trace(reference_baths(omega_c=wc), {"s": temps}, grid)
        tail = float(np.max(np.abs(tr.rel_error[grid > 2.0])))
        out.append((tr.settling_time(threshold), tail))
    return out


def test_settling_at_one_percent_shrinks_with_cutoff():
    times, tails = zip(*_settling(0.01))
    assert times[0] >= times[1] >= times[2]
    assert tails[0] > tails[1] > tails[2]


@pytest.mark.xfail(
    strict=True,
    reason="the early transient crosses 5% later for omega_c = 5 than for omega_c = 3",
)
def test_settling_at_five_percent_shrinks_with_cutoff():
    times, _ = zip(*_settling(0.05))
    assert times[0] >= times[1] >= times[2]


def test_grid_validation():
    with pytest.raises(ValidationError):
        lambda_trace(reference_baths(), (100.0, 200.0), [])
    with pytest.raises(ValidationError):
        lambda_trace(reference_baths(), (100.0, 200.0), [1.0, 0.5])


def test_trace_csv(tmp_path):
    traces = relative_error_trace(
        reference_baths(), {"a": (100.0, 200.0), "b": (300.0, 300.0)}, [0.5, 1.0], threads=2
    )
    path = tmp_path / "t.csv"
    traces_to_csv(traces, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t_scaled,lambda_t,lambda_markov,rel_error,setting_label"
    assert [ln.split(",")[-1] for ln in lines[1:]] == ["a", "a", "b", "b"]
