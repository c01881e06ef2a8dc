import math

import numpy as np
import pytest

from qheatpump import (
    DiscretizedSchedule,
    ModulationProtocol,
    ValidationError,
    discretize,
    reference_protocol,
    sample_protocol,
    swap_baths,
    tabulated_schedule,
)


def test_reference_protocol_start():
    T_L, T_R = sample_protocol(reference_protocol(), 0.0)
    assert T_L == pytest.approx(200 + 100 / math.sqrt(2))
    assert T_L == pytest.approx(T_R)


def test_period():
    assert reference_protocol(5e12).period == pytest.approx(2 * math.pi / 5e12)


def test_discretize_left_endpoint():
    p = reference_protocol(5e12)
    s = discretize(p, 41)
    assert s.n == 41
    assert s.period == pytest.approx(p.period)
    T_L, T_R = sample_protocol(p, 3 * s.delta_t)
    assert s.T_L[3] == pytest.approx(T_L, rel=1e-13)
    assert s.T_R[3] == pytest.approx(T_R, rel=1e-13)


def test_midpoint_sampling():
    p = reference_protocol(5e12)
    s = discretize(p, 10, "midpoint")
    T_L, _ = sample_protocol(p, 0.5 * s.delta_t)
    assert s.T_L[0] == pytest.approx(T_L)
    with pytest.raises(ValidationError):
        discretize(p, 10, "right")


def test_contour_orientation():
    assert np.linalg.det(reference_protocol().contour_matrix()) > 0
    assert np.linalg.det(reference_protocol().reversed().contour_matrix()) < 0


def test_phase_derivative_matches_finite_difference():
    p = reference_protocol()
    h = 1e-6
    num = (np.array(p.at_phase(0.7 + h)) - np.array(p.at_phase(0.7 - h))) / (2 * h)
    assert np.allclose(p.phase_derivative(0.7), num, rtol=1e-7)


def test_invalid_protocol():
    with pytest.raises(ValidationError):
        ModulationProtocol(100, 200, 150, 10, 0, 0, 1e12)
    with pytest.raises(ValidationError):
        ModulationProtocol(200, 200, 10, 10, 0, 0, 0.0)


def test_schedule_validation():
    with pytest.raises(ValidationError):
        DiscretizedSchedule(1e-13, [])
    with pytest.raises(ValidationError):
        DiscretizedSchedule(1e-13, [(100.0, -1.0)])
    with pytest.raises(ValidationError):
        DiscretizedSchedule(0.0, [(100.0, 100.0)])


def test_schedule_is_immutable():
    s = discretize(reference_protocol(), 8)
    with pytest.raises(ValueError):
        s.entries[0, 0] = 1.0


def test_csv_roundtrip(tmp_path):
    s = discretize(reference_protocol(3e12), 17)
    path = tmp_path / "sched.csv"
    s.to_csv(path)
    assert path.read_text().splitlines()[0] == "j,T_L_K,T_R_K"
    assert DiscretizedSchedule.from_csv(path, s.delta_t) == s


def test_csv_rejects_gaps(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("j,T_L_K,T_R_K\n1,100,200\n3,100,200\n")
    with pytest.raises(ValidationError):
        DiscretizedSchedule.from_csv(path, 1e-13)


def test_tabulated_and_repeat():
    s = tabulated_schedule([(100, 200), (200, 100)], 1e12)
    assert s.delta_t == pytest.approx(math.pi / 1e12)
    r = s.repeat(3)
    assert r.n == 6 and r.period == pytest.approx(3 * s.period)
    assert np.array_equal(swap_baths(s).T_L, s.T_R)
    with pytest.raises(ValidationError):
        s.repeat(0)
