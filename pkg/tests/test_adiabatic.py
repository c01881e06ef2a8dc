import warnings

import numpy as np
import pytest

from qheatpump import (
    BathParams,
    ModulationProtocol,
    adiabatic_currents,
    discretize,
    dynamical_current_continuous,
    dynamical_part,
    geometric_current_line,
    geometric_current_surface,
    geometric_part,
    reference_baths,
    reference_protocol,
)

BIASED = ModulationProtocol(260.0, 200.0, 100.0, 100.0, np.pi / 4, -np.pi / 4, 5e12)


def test_line_equals_surface(protocol_5thz, baths):
    line = geometric_current_line(protocol_5thz, baths)
    surf = geometric_current_surface(protocol_5thz, baths)
    assert line > 0
    assert surf == pytest.approx(line, rel=1e-8)


def test_line_equals_surface_for_ellipse():
    p = ModulationProtocol(220.0, 180.0, 60.0, 90.0, 0.3, 2.0, 2e12)
    baths = (BathParams("L", 0.02, 2.0), BathParams("R", 0.005, 7.0))
    line = geometric_current_line(p, baths)
    assert geometric_current_surface(p, baths) == pytest.approx(line, rel=1e-7)


def test_reversal_flips_sign(protocol_5thz, baths):
    fwd = geometric_current_line(protocol_5thz, baths)
    rev = geometric_current_line(protocol_5thz.reversed(), baths)
    assert rev == pytest.approx(-fwd, rel=1e-9)
    assert geometric_current_surface(protocol_5thz.reversed(), baths) == pytest.approx(-fwd, rel=1e-8)


def test_geometric_current_linear_in_omega(baths):
    a = geometric_current_line(reference_protocol(1e12), baths)
    b = geometric_current_line(reference_protocol(4e12), baths)
    assert b == pytest.approx(4 * a, rel=1e-10)


def test_left_bath_is_opposite(protocol_5thz, baths):
    r = geometric_current_line(protocol_5thz, baths, label="R")
    l = geometric_current_line(protocol_5thz, baths, label="L")
    assert l == pytest.approx(-r, rel=1e-9)


def test_symmetric_circle_has_no_dynamical_current(protocol_5thz, baths):
    j1 = dynamical_current_continuous(protocol_5thz, baths)
    j2 = geometric_current_line(protocol_5thz, baths)
    assert abs(j1) < 1e-12 * j2


def test_biased_dynamical_current_matches_fine_riemann_sum(baths):
    j1 = dynamical_current_continuous(BIASED, baths)
    sched = discretize(BIASED, 2000)
    riemann = dynamical_part(sched, baths)["R"] / sched.period
    assert j1 > 0
    assert riemann == pytest.approx(j1, rel=1e-10)


def test_geometric_riemann_limit(protocol_5thz, baths):
    sched = discretize(protocol_5thz, 10001)
    riemann = geometric_part(sched, baths)["R"] / sched.period
    assert riemann == pytest.approx(geometric_current_line(protocol_5thz, baths), rel=1e-6)


def test_zero_area_contour():
    flat = ModulationProtocol(200.0, 200.0, 50.0, 50.0, 0.0, 0.0, 1e12)
    assert abs(geometric_current_line(flat, reference_baths())) < 1e-3
    with pytest.warns(RuntimeWarning):
        assert geometric_current_surface(flat, reference_baths()) == 0.0


def test_bundle(protocol_5thz, baths):
    res = adiabatic_currents(protocol_5thz, baths)
    assert not res.degenerate
    assert set(res.quadrature_errors) == {"J1_R", "J2_R_line", "J2_R_surface"}
    assert res.quadrature_errors["J2_R_line"] < 1e-8 * res.J2_R_line


def test_with_error_flag(protocol_5thz, baths):
    val, err = geometric_current_line(protocol_5thz, baths, with_error=True)
    assert err >= 0 and err < 1e-8 * abs(val)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        geometric_current_surface(protocol_5thz, baths)
