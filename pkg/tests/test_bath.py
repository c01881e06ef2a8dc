import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qheatpump import (
    BathParams,
    DomainError,
    ValidationError,
    bose_occupation,
    coupling_gamma,
    gibbs_ground_population,
    interval_rates,
    markov_generator,
    reference_baths,
)

from conftest import GAMMA_REF, T_OMEGA0_K


def test_gamma():
    assert coupling_gamma(BathParams("L")) == pytest.approx(GAMMA_REF, rel=1e-14)


def test_occupation_100K():
    assert bose_occupation(T_OMEGA0_K / 100) == pytest.approx(0.058157500064579898, rel=1e-13)


def test_A_B_example():
    r = interval_rates(reference_baths(), (200.0, 200.0))
    N = 0.306229656660884575
    assert r.A_L == pytest.approx(-GAMMA_REF * (1 + 2 * N), rel=1e-13)
    assert r.B_L == pytest.approx(-GAMMA_REF * (1 + N), rel=1e-13)


def test_spectral_density():
    b = BathParams("R", 0.02, 2.0)
    assert b.spectral_density(1.0) == pytest.approx(0.02 * math.exp(-0.5))


@given(st.floats(0.01, 50))
def test_gibbs_is_detailed_balance(beta):
    N = bose_occupation(beta)
    g = gibbs_ground_population(beta)
    # rho_s = (1 + N) / (1 + 2N) for a single bath
    assert (1 + N) / (1 + 2 * N) == pytest.approx(g, rel=1e-12)


@given(st.floats(20, 2000), st.floats(20, 2000), st.floats(1e-3, 0.05), st.floats(1, 10))
def test_rate_relations(T_L, T_R, s, wc):
    r = interval_rates((BathParams("L", s, wc), BathParams("R", s, wc)), (T_L, T_R))
    assert r.Lambda == pytest.approx(r.A_L + r.A_R, rel=1e-13)
    assert r.K_u - r.K_d == pytest.approx(r.gamma_L + r.gamma_R, rel=1e-12)
    assert 0.5 <= r.rho_s <= 1.0
    # steady state: K_d * rho_s == K_u * (1 - rho_s)
    assert r.K_d * r.rho_s == pytest.approx(r.K_u * (1 - r.rho_s), rel=1e-12)


def test_equal_temperatures_give_gibbs():
    r = interval_rates(reference_baths(), (250.0, 250.0))
    assert r.rho_s == pytest.approx(gibbs_ground_population(T_OMEGA0_K / 250), rel=1e-13)


def test_array_fields():
    r = interval_rates(reference_baths(), (np.array([100.0, 200.0]), np.array([300.0, 200.0])))
    assert len(r) == 2
    assert np.shape(r.rho_s) == (2,)


def test_markov_generator():
    r = interval_rates(reference_baths(), (100.0, 300.0))
    assert markov_generator(r, "R") == (r.A_R, r.B_R)
    with pytest.raises(ValidationError):
        markov_generator(r, "X")


def test_bad_params():
    with pytest.raises(ValidationError):
        BathParams("L", s=-0.1)
    with pytest.raises(ValidationError):
        BathParams("L", omega_c=0)
    with pytest.raises(ValidationError):
        BathParams("Q")
    with pytest.raises(DomainError):
        bose_occupation(0.0)


def test_extreme_betas_finite():
    assert bose_occupation(800.0) == 0.0
    assert math.isfinite(bose_occupation(1e-10))
