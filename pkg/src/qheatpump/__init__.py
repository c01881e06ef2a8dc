"""Quantum heat pumping through a two-level junction under piecewise temperature driving."""
from .adiabatic import (
    AdiabaticResult,
    adiabatic_currents,
    dynamical_current_continuous,
    geometric_current_line,
    geometric_current_surface,
)
from .bath import (
    BathParams,
    IntervalRates,
    bose_occupation,
    coupling_gamma,
    gibbs_ground_population,
    interval_rates,
    markov_generator,
    reference_baths,
)
from .correlation import (
    CorrelationTrace,
    bath_correlation,
    lambda_of_t,
    markov_lambda,
    reference_settings,
    relative_error_trace,
    v_kernels,
)
from .decomposition import (
    FluxDecomposition,
    decompose,
    dynamical_part,
    geometric_net_current,
    geometric_part,
    nonadiabatic_part,
    phi0_profile,
)
from .dynamics import (
    HeatRecord,
    PopulationTrajectory,
    accumulate_flux,
    interval_heat,
    propagate_population,
    steady_current,
)
from .errors import DomainError, QuadratureError, ValidationError
from .kernels import BACKEND
from .protocol import (
    DiscretizedSchedule,
    ModulationProtocol,
    discretize,
    reference_protocol,
    sample_protocol,
    swap_baths,
    tabulated_schedule,
)
from .units import (
    DEFAULT_UNITS,
    UnitSystem,
    beta_tilde_from_kelvin,
    interval_duration,
    kelvin_from_beta_tilde,
    scaled_time,
)

__version__ = "0.1.0"
