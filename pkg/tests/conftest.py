import math

import pytest
from hypothesis import HealthCheck, settings

from qheatpump import DEFAULT_UNITS, reference_baths, reference_protocol

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

#: hbar*omega0 / k_B for 25 meV, evaluated with 30-digit arithmetic.
T_OMEGA0_K = 290.112961864186982213638488846
#: 2*pi*0.01*exp(-1/3).
GAMMA_REF = 0.0450209900273136569126130444735


@pytest.fixture
def baths():
    return reference_baths()


@pytest.fixture
def units():
    return DEFAULT_UNITS


@pytest.fixture
def protocol_5thz():
    return reference_protocol(5e12)


def beta0():
    return T_OMEGA0_K / (200.0 + 100.0 * math.cos(math.pi / 4))
