"""Closed-form torque on a stationary or slowly rotating magneto-optical body.

All energies are in eV (natural units, hbar = c = 1); a torque in natural
units is an energy and is converted to N m only by :func:`to_si_torque`.

With ``s = beta xi / 2 pi`` the stationary torque is

    tau0 = C { pi wc (1/b - 1/b') - 2 eta wc log(b/b')
               + Im[xi^2 (psi(s) - psi(s'))] },      C = wp^2 V / (3 pi^2).

Writing ``psi(s) = log s - 1/(2s) + R(s)``, the first two brackets cancel the
logarithm and 1/s parts of psi exactly, leaving ``C Im[xi^2 (R(s) - R(s'))]``.
That remainder form is what :func:`torque_stationary` evaluates: it is exact
and does not lose digits at low temperature, where the torque is many
orders of magnitude smaller than the individual terms.  The rotational
terms are reduced the same way.
"""

import cmath
import math
import warnings
from dataclasses import dataclass
from enum import Enum

from . import _core
from .constants import J_PER_EV, kelvin_to_beta, volume_to_natural
from .errors import DomainError
from .specfun import digamma

__all__ = [
    "ThermalState", "Method", "TorqueBreakdown", "prefactor",
    "torque_stationary", "torque_cpv_part", "torque_resonance_part",
    "torque_eta_zero_limit", "parity_decompose_beta", "parity_decompose_field",
    "torque_rot_hat1", "torque_rot1", "torque_rotating", "to_si_torque",
    "torque_stationary_linear", "log_term_coefficient", "evaluate_stationary",
    "stationary_bracket_signed",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ThermalState:
    """Inverse temperatures (eV^-1) of environment and body, rotation rate (eV)."""

    beta: float
    beta_prime: float
    omega_rot: float = 0.0

    def __post_init__(self):
        for name in ("beta", "beta_prime", "omega_rot"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if not (self.beta > 0 and self.beta_prime > 0):
            raise DomainError(
                f"inverse temperatures must be positive, got beta={self.beta}, "
                f"beta_prime={self.beta_prime}")

    @classmethod
    def from_kelvin(cls, t_env, t_body, omega_rot=0.0):
        try:
            return cls(kelvin_to_beta(t_env), kelvin_to_beta(t_body), omega_rot)
        except ValueError as exc:
            raise DomainError(str(exc)) from exc

    def swapped(self):
        return ThermalState(self.beta_prime, self.beta, self.omega_rot)


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    SERIES_HIGH_T = "series_high_T"
    SERIES_LOW_T = "series_low_T"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class TorqueBreakdown:
    """Total stationary torque with its principal-value and resonance parts (eV)."""

    total: float
    cpv_part: float
    resonance_part: float
    method: Method
    error_estimate: float
    notes: str = ""


def prefactor(params):
    """omega_p^2 V / (3 pi^2) with V in eV^-3."""
    return params.omega_p ** 2 * volume_to_natural(params.volume) / (3.0 * math.pi ** 2)


def _check_state(params, state):
    params.require_metal()
    if not isinstance(state, ThermalState):
        raise DomainError("state must be a ThermalState")


def _bracket(eta, omega_c, beta, beta_p):
    # Im[xi^2 (R(s) - R(s'))], eta > 0
    xi = complex(eta, omega_c)
    tail = _core.digamma_tail
    d = tail(beta * xi / TWO_PI) - tail(beta_p * xi / TWO_PI)
    return (xi * xi * d).imag


def stationary_bracket_signed(eta, omega_c, beta, beta_p):
    """Curly bracket of the digamma closed form, evaluated literally.

    Accepts either sign of every argument (``beta`` and ``beta_p`` must share
    a sign), which gives the analytic continuation used by the parity
    decompositions.  Digamma at ``Re s < 0`` goes through the reflection
    formula.
    """
    if beta * beta_p <= 0:
        raise DomainError("beta and beta_prime must be nonzero with equal signs")
    xi = complex(eta, omega_c)
    s = beta * xi / TWO_PI
    s_p = beta_p * xi / TWO_PI
    return (math.pi * omega_c * (1.0 / beta - 1.0 / beta_p)
            - 2.0 * eta * omega_c * math.log(beta / beta_p)
            + (xi * xi * (digamma(s) - digamma(s_p))).imag)


def torque_stationary(params, state):
    """Stationary torque tau_z^0 (eV).

    ``eta = 0`` returns the eta -> 0+ limit (:func:`torque_eta_zero_limit`),
    which is nonzero in general even though the undamped integrand vanishes.
    """
    _check_state(params, state)
    if params.eta == 0.0:
        return torque_eta_zero_limit(params, state)
    if params.omega_c == 0.0 or state.beta == state.beta_prime:
        return 0.0
    return prefactor(params) * _bracket(params.eta, params.omega_c, state.beta, state.beta_prime)


def torque_stationary_linear(params, state):
    """Stationary torque truncated at first order in omega_c (eV)."""
    _check_state(params, state)
    eta = params.eta
    if not eta > 0:
        raise DomainError("the omega_c-linear form needs eta > 0")
    b, bp = state.beta, state.beta_prime
    a, a_p = b * eta / TWO_PI, bp * eta / TWO_PI
    r = _core.digamma_tail(a) - _core.digamma_tail(a_p)
    r1 = b * _core.trigamma_tail(a) - bp * _core.trigamma_tail(a_p)
    slope = 2.0 * eta * r.real + eta * eta / TWO_PI * r1.real
    return prefactor(params) * params.omega_c * slope


def _cot_pi_offset(s):
    # cot(pi s) + i sgn(Im s) = 2i sgn(Im s) q / (q - 1), q = e^{2 pi i s sgn(Im s)}
    sign = 1.0 if s.imag > 0 else -1.0
    q = cmath.exp(2j * math.pi * sign * s)
    return 2j * sign * q / (q - 1.0)


def torque_cpv_part(params, state):
    """Principal-value (continuous-spectrum) part: even under (b, b') -> (-b, -b').

    The psi(s) + psi(-s) combination is reduced by reflection to
    2 log s + 2 R(s) + pi cot(pi s); the logarithms cancel the explicit log
    term exactly, leaving
    C Im[xi^2 (R(s) - R(s'))] + (pi C / 2) Im[xi^2 (cot(pi s) - cot(pi s'))].
    """
    _check_state(params, state)
    eta, wc = params.eta, params.omega_c
    if not eta > 0:
        raise DomainError("torque_cpv_part needs eta > 0; its eta -> 0+ limit is 0")
    if wc == 0.0:
        return 0.0
    b, bp = state.beta, state.beta_prime
    xi = complex(eta, wc)
    cot_diff = _cot_pi_offset(b * xi / TWO_PI) - _cot_pi_offset(bp * xi / TWO_PI)
    bracket = _bracket(eta, wc, b, bp) + 0.5 * math.pi * (xi * xi * cot_diff).imag
    return prefactor(params) * bracket


def _cexpm1(w):
    x, y = w.real, w.imag
    em = math.expm1(x)
    half = math.sin(0.5 * y)
    return complex(em * math.cos(y) - 2.0 * half * half, (em + 1.0) * math.sin(y))


def _bose(w):
    """1/(e^w - 1) for complex w."""
    if w.real > 1.0:
        q = cmath.exp(-w)
        return q / (1.0 - q)
    return 1.0 / _cexpm1(w)


def _bose_real(x):
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)


def torque_resonance_part(params, state):
    """Resonance-mode part: odd under (b, b') -> (-b, -b').

    -(wp^2 V / 3 pi) Re[(wc + i eta)^2 (n(b z) - n(b' z))], z = wc + i eta,
    with n the Bose factor.  At ``eta = 0`` this is the zero-damping limit.
    """
    _check_state(params, state)
    if params.omega_c == 0.0:
        return 0.0
    z = complex(params.omega_c, params.eta)
    diff = _bose(state.beta * z) - _bose(state.beta_prime * z)
    coeff = params.omega_p ** 2 * volume_to_natural(params.volume) / (3.0 * math.pi)
    return -coeff * (z * z * diff).real


def torque_eta_zero_limit(params, state):
    """eta -> 0+ limit of the stationary torque (eV); carried by the resonance modes."""
    _check_state(params, state)
    wc = params.omega_c
    if wc == 0.0:
        return 0.0
    coeff = wc * wc * params.omega_p ** 2 * volume_to_natural(params.volume) / (3.0 * math.pi)
    return -coeff * (_bose_real(state.beta * wc) - _bose_real(state.beta_prime * wc))


def parity_decompose_beta(params, state):
    """(cpv, resonance) from the even/odd parts under (b, b') -> (-b, -b')."""
    _check_state(params, state)
    eta, wc = params.eta, params.omega_c
    if not eta > 0:
        raise DomainError("parity decomposition needs eta > 0")
    b, bp = state.beta, state.beta_prime
    plus = stationary_bracket_signed(eta, wc, b, bp)
    minus = stationary_bracket_signed(eta, wc, -b, -bp)
    c = prefactor(params)
    return 0.5 * c * (plus + minus), 0.5 * c * (plus - minus)


def parity_decompose_field(params, state):
    """(cpv, resonance) from the even/odd parts under (eta, wc) -> (-eta, -wc)."""
    _check_state(params, state)
    eta, wc = params.eta, params.omega_c
    if not eta > 0:
        raise DomainError("parity decomposition needs eta > 0")
    b, bp = state.beta, state.beta_prime
    plus = stationary_bracket_signed(eta, wc, b, bp)
    minus = stationary_bracket_signed(-eta, -wc, b, bp)
    c = prefactor(params)
    return 0.5 * c * (plus + minus), 0.5 * c * (plus - minus)


def _rot_terms(params, state):
    eta = params.eta
    if not eta > 0:
        raise DomainError("rotational torque needs eta > 0")
    xi = params.xi
    b, bp = state.beta, state.beta_prime
    s = b * xi / TWO_PI
    r = _core.digamma_tail(s) - _core.digamma_tail(bp * xi / TWO_PI)
    return xi, b, s, (xi * r).real


def torque_rot_hat1(params, state):
    """Auxiliary rotational coefficient hat-tau_z^1 (dimensionless in natural units).

    Closed form C {-pi (1/b - 1/b') + eta log(b/b') - Re[xi (psi(s) - psi(s'))]},
    evaluated as -C Re[xi (R(s) - R(s'))].
    """
    _check_state(params, state)
    _, _, _, re_xi_r = _rot_terms(params, state)
    return -prefactor(params) * re_xi_r


def torque_rot1(params, state):
    """First-order rotational coefficient tau_z^1 = (3 + b d/db) hat-tau_z^1."""
    _check_state(params, state)
    xi, b, s, re_xi_r = _rot_terms(params, state)
    deriv = b / TWO_PI * (xi * xi * _core.trigamma_tail(s)).real
    return prefactor(params) * (-3.0 * re_xi_r - deriv)


def torque_rotating(params, state):
    """tau_z = tau_z^0 + Omega tau_z^1 for a slowly rotating body (eV)."""
    _check_state(params, state)
    omega = state.omega_rot
    tau0 = torque_stationary(params, state)
    if omega == 0.0:
        return tau0
    scale = min(params.eta, 1.0 / state.beta, 1.0 / state.beta_prime)
    if abs(omega) > 0.1 * scale:
        warnings.warn(
            f"|Omega| = {abs(omega):.3g} eV is not small against "
            f"min(eta, T, T') = {scale:.3g} eV; first-order result may be inaccurate",
            RuntimeWarning, stacklevel=2)
    return tau0 + omega * torque_rot1(params, state)


def to_si_torque(value):
    """Natural-unit torque (eV) to N m."""
    return value * J_PER_EV


def log_term_coefficient(params):
    """|Coefficient of log(b/b')| in the closed form, C * 2 eta wc (eV)."""
    return prefactor(params) * 2.0 * params.eta * abs(params.omega_c)


def _closed_form_error(params, state):
    xi = params.xi
    mod = abs(xi)
    if mod == 0.0:
        return 0.0
    s, s_p = state.beta * mod / TWO_PI, state.beta_prime * mod / TWO_PI
    psi_scale = 2.0 + abs(math.log(s)) + abs(math.log(s_p)) + 1.0 / s + 1.0 / s_p
    return abs(prefactor(params)) * mod * mod * 1e-12 * psi_scale


def evaluate_stationary(params, state):
    """Stationary torque with its decomposition, as a :class:`TorqueBreakdown`."""
    _check_state(params, state)
    if params.eta == 0.0:
        limit = torque_eta_zero_limit(params, state)
        return TorqueBreakdown(
            total=limit, cpv_part=0.0, resonance_part=limit,
            method=Method.CLOSED_FORM, error_estimate=0.0,
            notes="eta = 0: eta -> 0+ limit (torque is discontinuous at eta = 0)")
    total = torque_stationary(params, state)
    resonance = torque_resonance_part(params, state)
    cpv = torque_cpv_part(params, state)
    return TorqueBreakdown(total=total, cpv_part=cpv, resonance_part=resonance,
                           method=Method.CLOSED_FORM,
                           error_estimate=_closed_form_error(params, state))
