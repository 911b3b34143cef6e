"""Damped-oscillator magneto-optical material model.

Susceptibility tensor, the polarizability components entering the torque,
and the coefficient family ``xi_k = Im[(eta + i omega_c)^k]``.

Energies are in eV and volumes in nm^3; polarizabilities are returned in
nm^3.
"""

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from math import comb

import numpy as np

from .constants import GOLD_ETA, GOLD_OMEGA_P, sphere_volume_nm3
from .errors import (DomainError, ResonanceSingularityError,
                     SingularReflectionError, UnsupportedModelError)
from .specfun import chebyshev_u

__all__ = [
    "OscillatorParams", "ComplexRate", "susceptibility", "re_alpha_xy",
    "re_alpha_yx", "im_alpha_xx", "im_alpha_yy", "xi_k", "xi_k_signed",
    "xi_k_binomial", "xi_k_chebyshev", "xi_k_eta_zero", "xi_sequence", "XI_K_MAX",
]

XI_K_MAX = 200


def _finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class OscillatorParams:
    """Material and field parameters of the oscillator model.

    Attributes
    ----------
    omega_p : float
        Plasma frequency (eV), > 0.
    eta : float
        Damping parameter (eV), >= 0.
    omega_c : float
        Signed cyclotron frequency (eV); its sign is the direction of B.
    omega_0 : float
        Free oscillation frequency (eV), >= 0.  Torque paths require 0.
    volume : float
        Body volume (nm^3), > 0.
    """

    omega_p: float
    eta: float
    omega_c: float
    omega_0: float = 0.0
    volume: float = sphere_volume_nm3(100.0)

    def __post_init__(self):
        for name in ("omega_p", "eta", "omega_c", "omega_0", "volume"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        if not self.omega_p > 0:
            raise DomainError(f"omega_p must be > 0, got {self.omega_p}")
        if self.eta < 0:
            raise DomainError(f"eta must be >= 0, got {self.eta}")
        if self.omega_0 < 0:
            raise DomainError(f"omega_0 must be >= 0, got {self.omega_0}")
        if not self.volume > 0:
            raise DomainError(f"volume must be > 0, got {self.volume}")

    @classmethod
    def gold(cls, omega_c=1e-4, radius_nm=100.0, **overrides):
        """Gold nanosphere at room temperature (omega_p = 9 eV, eta = 0.035 eV)."""
        kw = dict(omega_p=GOLD_OMEGA_P, eta=GOLD_ETA, omega_c=omega_c,
                  volume=sphere_volume_nm3(radius_nm))
        kw.update(overrides)
        return cls(**kw)

    def replace(self, **changes):
        return replace(self, **changes)

    @property
    def xi(self):
        return complex(self.eta, self.omega_c)

    @property
    def rate(self):
        return ComplexRate.from_params(self)

    def require_metal(self):
        if self.omega_0 != 0.0:
            raise UnsupportedModelError(
                f"torque formulas assume omega_0 = 0, got omega_0 = {self.omega_0}")


@dataclass(frozen=True)
class ComplexRate:
    """xi = eta + i omega_c with its modulus and phase."""

    xi: complex
    modulus: float
    theta: float

    @classmethod
    def from_params(cls, params):
        return cls(xi=params.xi, modulus=math.hypot(params.eta, params.omega_c),
                   theta=math.atan2(params.omega_c, params.eta))


def susceptibility(params, omega):
    """3x3 complex susceptibility tensor of the oscillator model.

    General ``omega_0`` is allowed here.

    Raises
    ------
    ResonanceSingularityError
        If a denominator vanishes (only possible for ``eta = 0`` or at
        ``omega = omega_0 = 0``).
    """
    w = _finite("omega", omega)
    p = params
    d = p.omega_0 ** 2 - w * w - 1j * w * p.eta
    den = d * d - (w * p.omega_c) ** 2
    scale = max(abs(d) ** 2, (w * p.omega_c) ** 2, 1e-300)
    if d == 0 or abs(den) <= 1e-14 * scale:
        raise ResonanceSingularityError(f"susceptibility is singular at omega = {w}")
    wp2 = p.omega_p ** 2
    chi = np.zeros((3, 3), dtype=complex)
    chi[0, 0] = chi[1, 1] = wp2 * d / den
    chi[0, 1] = wp2 * (-1j * w * p.omega_c) / den
    chi[1, 0] = -chi[0, 1]
    chi[2, 2] = wp2 / d
    return chi


def _resonance_guard(params, w):
    if params.eta == 0.0 and abs(w) == abs(params.omega_c):
        raise ResonanceSingularityError(
            f"undamped model evaluated on its resonance omega = {w}")


def re_alpha_xy(params, omega):
    """Re alpha_xy = omega_p^2 V Im[1/(omega^2 + xi^2)] in nm^3."""
    params.require_metal()
    w = _finite("omega", omega)
    _resonance_guard(params, w)
    xi = params.xi
    if w == 0.0 and xi == 0:
        raise ResonanceSingularityError("re_alpha_xy undefined for xi = 0 at omega = 0")
    return params.omega_p ** 2 * params.volume * (1.0 / (w * w + xi * xi)).imag


def re_alpha_yx(params, omega):
    return -re_alpha_xy(params, omega)


def im_alpha_xx(params, omega):
    """Im alpha_xx = (omega_p^2 V / omega) Re[xi/(omega^2 + xi^2)] in nm^3."""
    params.require_metal()
    w = _finite("omega", omega)
    if w == 0.0:
        raise DomainError("im_alpha_xx is undefined at omega = 0")
    _resonance_guard(params, w)
    xi = params.xi
    return params.omega_p ** 2 * params.volume / w * (xi / (w * w + xi * xi)).real


im_alpha_yy = im_alpha_xx


# --- xi_k ---------------------------------------------------------------
#
# eta and omega_c are binary floats, so with a common power-of-two scale
# eta = P / 2^e and omega_c = Q / 2^e the recurrence
#     X_k = 2 P X_{k-1} - (P^2 + Q^2) X_{k-2}
# runs in exact integers and xi_k = X_k / 2^(e k) is rounded once.

def _scaled_integers(eta, omega_c):
    pn, pd = float(eta).as_integer_ratio()
    qn, qd = float(omega_c).as_integer_ratio()
    e = max(pd.bit_length(), qd.bit_length()) - 1
    return pn << (e - pd.bit_length() + 1), qn << (e - qd.bit_length() + 1), e


@lru_cache(maxsize=512)
def _xi_integer_sequence(eta, omega_c, k_max):
    P, Q, e = _scaled_integers(eta, omega_c)
    two_p, m = 2 * P, P * P + Q * Q
    seq = [0, Q]
    for _ in range(2, k_max + 1):
        seq.append(two_p * seq[-1] - m * seq[-2])
    return tuple(seq[:k_max + 1]), m, e


def _to_float(num, den):
    try:
        return num / den
    except OverflowError:
        return math.copysign(math.inf, num) if den > 0 else math.copysign(math.inf, -num)


def xi_k_signed(eta, omega_c, k):
    """Im[(eta + i omega_c)^k] for any real ``eta``, ``omega_c`` and integer ``k``.

    Non-negative ``k`` uses the three-term recurrence; negative ``k`` uses
    the reflection ``xi_{-k} = -(eta^2 + omega_c^2)^{-k} xi_k``.  The result
    is correctly rounded.
    """
    eta = _finite("eta", eta)
    omega_c = _finite("omega_c", omega_c)
    if isinstance(k, bool) or int(k) != k:
        raise DomainError(f"k must be an integer, got {k!r}")
    k = int(k)
    if abs(k) > XI_K_MAX:
        raise DomainError(f"|k| must be <= {XI_K_MAX}, got {k}")
    if k < 0 and eta == 0.0 and omega_c == 0.0:
        raise SingularReflectionError("xi_k with k < 0 is singular for eta = omega_c = 0")
    seq, m, e = _xi_integer_sequence(eta, omega_c, abs(k) if k else 1)
    if k >= 0:
        return _to_float(seq[k], 1 << (e * k))
    j = -k
    return _to_float(-seq[j] << (e * j), m ** j)


def xi_k(params, k):
    """``xi_k = Im[xi^k]`` for the parameters' ``xi = eta + i omega_c``."""
    return xi_k_signed(params.eta, params.omega_c, k)


def xi_sequence(eta, omega_c, k_max):
    """List ``[xi_0, ..., xi_{k_max}]`` (floats)."""
    seq, _, e = _xi_integer_sequence(float(eta), float(omega_c), max(int(k_max), 1))
    return [_to_float(seq[k], 1 << (e * k)) for k in range(int(k_max) + 1)]


def xi_k_binomial(eta, omega_c, k):
    """xi_k from the multiple-angle binomial sum, evaluated exactly (k >= 1).

    sum_m (-1)^m C(k, 2m+1) eta^(k-1-2m) omega_c^(2m+1)
    """
    k = int(k)
    if k < 1:
        raise DomainError("binomial form needs k >= 1")
    P, Q, e = _scaled_integers(eta, omega_c)
    total = 0
    for m in range((k - 1) // 2 + 1):
        total += (-1) ** m * comb(k, 2 * m + 1) * P ** (k - 1 - 2 * m) * Q ** (2 * m + 1)
    return _to_float(total, 1 << (e * k))


def xi_k_chebyshev(eta, omega_c, k):
    """xi_k = |xi|^k sin(theta) U_{k-1}(cos theta) in floating point (k >= 1)."""
    k = int(k)
    if k < 1:
        raise DomainError("Chebyshev form needs k >= 1")
    mod = math.hypot(eta, omega_c)
    if mod == 0.0:
        return 0.0
    return mod ** k * (omega_c / mod) * chebyshev_u(k - 1, eta / mod)


def xi_k_eta_zero(omega_c, k):
    """Limit of xi_k as eta -> 0+: 0 for even k, (-1)^((k-1)/2) omega_c^k for odd k."""
    omega_c = _finite("omega_c", omega_c)
    k = int(k)
    if k % 2 == 0:
        return 0.0
    if k < 0 and omega_c == 0.0:
        raise SingularReflectionError("negative odd k is singular at omega_c = 0")
    sign = -1.0 if ((k - 1) // 2) % 2 else 1.0
    return sign * omega_c ** k
