import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qheatpump import (
    BathParams,
    DiscretizedSchedule,
    decompose,
    discretize,
    dynamical_part,
    geometric_net_current,
    geometric_part,
    gibbs_ground_population,
    reference_baths,
    reference_protocol,
    phi0_profile,
)
from qheatpump.decomposition import dynamical_part_generic
from qheatpump.dynamics import schedule_rates


@st.composite
def cases(draw):
    n = draw(st.integers(1, 40))
    pairs = draw(
        st.lists(st.tuples(st.floats(50, 500), st.floats(50, 500)), min_size=n, max_size=n)
    )
    baths = (
        BathParams("L", draw(st.floats(1e-3, 0.05)), draw(st.floats(1, 10))),
        BathParams("R", draw(st.floats(1e-3, 0.05)), draw(st.floats(1, 10))),
    )
    dt = draw(st.floats(1e-15, 1e-12))
    return DiscretizedSchedule(dt, pairs), baths, draw(st.floats(0, 1))


@given(cases())
def test_identity_holds(case):
    sched, baths, rho0 = case
    dec = decompose(sched, baths, rho0)
    assert dec.L.identity_residual < 1e-10
    assert dec.R.identity_residual < 1e-10


@given(cases())
def test_closed_form_g1_matches_generic(case):
    sched, baths, _ = case
    fast = dynamical_part(sched, baths)
    slow = dynamical_part_generic(sched, baths)
    scale = max(abs(slow["L"]), abs(slow["R"]), 1e-300)
    for lab in "LR":
        assert abs(fast[lab] - slow[lab]) <= 1e-10 * scale + 1e-14
    assert fast["L"] == -fast["R"]


def test_constant_protocol_has_no_geometric_part():
    sched = DiscretizedSchedule(1e-13, [(120.0, 310.0)] * 9)
    g2 = geometric_part(sched, reference_baths())
    assert g2 == {"L": 0.0, "R": 0.0}


def test_single_interval_geometric_zero():
    sched = DiscretizedSchedule(1e-13, [(120.0, 310.0)])
    assert geometric_part(sched, reference_baths()) == {"L": 0.0, "R": 0.0}


def test_geometric_current_linear_in_frequency():
    p = reference_protocol()
    base = geometric_net_current(discretize(p.with_omega(1e12), 41), reference_baths())
    for k in (0.1, 3.0, 5.0):
        val = geometric_net_current(discretize(p.with_omega(k * 1e12), 41), reference_baths())
        assert val == pytest.approx(k * base, rel=1e-12)


def test_steady_start_removes_reminiscence():
    sched = discretize(reference_protocol(5e12), 41)
    rho_s1 = float(schedule_rates(sched, reference_baths()).rho_s[0])
    dec = decompose(sched, reference_baths(), rho_s1)
    assert np.all(dec.L.phi0 == 0) and np.all(dec.R.phi0 == 0)


def test_phi0_profile_decays_and_sign():
    sched = discretize(reference_protocol(5e12), 41)
    prof = phi0_profile(sched, reference_baths(), gibbs_ground_population(3.0))
    # equal bath temperatures at t = 0: the first entry carries no net current
    assert prof[0] == 0.0
    assert prof[1] < 0
    assert np.all(prof[: len(prof) // 2] <= 0)
    assert abs(prof[-1]) < abs(prof[1])


def test_net_currents_add_up():
    sched = discretize(reference_protocol(5e12), 41)
    dec = decompose(sched, reference_baths(), 0.5)
    assert dec.J_dyn + dec.J_geo + dec.J_nonad == pytest.approx(dec.J_hat, rel=1e-12)
    assert dec.J_geo == pytest.approx(geometric_net_current(sched, reference_baths()), rel=1e-14)
    assert dec.identity_residual < 1e-12


def test_period_count(units):
    sched = discretize(reference_protocol(5e12), 11)
    a = decompose(sched, reference_baths(), 0.2, period_count=4)
    b = decompose(sched.repeat(4), reference_baths(), 0.2)
    assert a.J_hat == b.J_hat
    assert a.identity_residual < 1e-12


def test_csv_outputs(tmp_path):
    sched = discretize(reference_protocol(5e12), 6)
    dec = decompose(sched, reference_baths(), 0.4)
    dec.to_csv(tmp_path / "d.csv")
    dec.profile_to_csv(tmp_path / "p.csv")
    d = (tmp_path / "d.csv").read_text().splitlines()
    p = (tmp_path / "p.csv").read_text().splitlines()
    assert d[0] == "bath,G1,G2,G3,direct_total,identity_residual"
    assert [row.split(",")[0] for row in d[1:]] == ["L", "R"]
    assert p[0] == "j,phi0_hat" and len(p) == 7
