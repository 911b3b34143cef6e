"""Non-equilibrium torque on a magneto-optical body in a thermal bath.

Closed forms, temperature expansions and a quadrature oracle for the
torque on a stationary or slowly rotating body described by a damped
oscillator model in a magnetic field.  Energies are in eV (hbar = c = 1).
"""

__version__ = "0.1.0"

from ._core import BACKEND
from .errors import (AccuracyError, CapacityError, ConfigError, ConvergenceDomainError,
                     DomainError, PoleError, ResonanceSingularityError,
                     SingularReflectionError, TorqueError, UnsupportedModelError)
from .oracle import (QuadratureReport, sokhotski_plemelj_probe, torque1_quadrature,
                     torque_quadrature)
from .oscillator import OscillatorParams, susceptibility, xi_k
from .series import (SeriesResult, cpv_series, high_temp_series, low_temp_asymptotic,
                     resonance_series)
from .specfun import bernoulli, digamma, trigamma, zeta_int
from .torque import (Method, ThermalState, TorqueBreakdown, evaluate_stationary,
                     parity_decompose_beta, parity_decompose_field, to_si_torque,
                     torque_cpv_part, torque_eta_zero_limit, torque_resonance_part,
                     torque_rot1, torque_rot_hat1, torque_rotating, torque_stationary,
                     torque_stationary_linear)

__all__ = [
    "__version__", "BACKEND",
    "AccuracyError", "CapacityError", "ConfigError", "ConvergenceDomainError",
    "DomainError", "PoleError", "ResonanceSingularityError", "SingularReflectionError",
    "TorqueError", "UnsupportedModelError",
    "QuadratureReport", "sokhotski_plemelj_probe", "torque1_quadrature", "torque_quadrature",
    "OscillatorParams", "susceptibility", "xi_k",
    "SeriesResult", "cpv_series", "high_temp_series", "low_temp_asymptotic",
    "resonance_series",
    "bernoulli", "digamma", "trigamma", "zeta_int",
    "Method", "ThermalState", "TorqueBreakdown", "evaluate_stationary",
    "parity_decompose_beta", "parity_decompose_field", "to_si_torque", "torque_cpv_part",
    "torque_eta_zero_limit", "torque_resonance_part", "torque_rot1", "torque_rot_hat1",
    "torque_rotating", "torque_stationary", "torque_stationary_linear",
]
