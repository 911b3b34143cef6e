"""High- and low-temperature expansions of the stationary torque.

The high-temperature series is a power series in ``s = beta xi / 2 pi`` and
converges for ``|s| < 1`` at both temperatures.  Its even-``n`` terms form
the resonance (Bernoulli) series and its odd-``n`` terms the principal-value
series.  The low-temperature series is asymptotic and is truncated at its
smallest term.

Truncation uses a term envelope rather than the raw term: ``xi_k`` can be
accidentally tiny when ``k theta`` sits near a multiple of pi, so a bare
``|term| < tol |sum|`` test can stop early.  The envelope replaces
``|xi_k|`` by ``|xi|^k min(1, k |sin theta|)`` (and, for even ``k``, also by
``k |cos theta|``), which bounds every later term.
"""

import cmath
import math
from dataclasses import dataclass, field

from .constants import volume_to_natural
from .errors import ConvergenceDomainError, DomainError, SingularReflectionError
from .oscillator import xi_k_signed
from .specfun import BERNOULLI_KMAX, bernoulli, zeta_int
from .torque import _check_state, prefactor

__all__ = [
    "SeriesResult", "DEFAULT_TOL", "DEFAULT_MAX_TERMS", "high_temp_series",
    "cpv_series", "resonance_series", "low_temp_asymptotic", "high_temp_terms",
    "cpv_terms", "resonance_terms", "low_temp_terms", "series_radius",
]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_TERMS = 60
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SeriesResult:
    """Truncated series value with diagnostics (energies in eV).

    ``terms_used`` counts the summed terms of the infinite sum; analytic
    leading pieces (the ``pi omega_c`` and logarithmic terms) are always
    included and not counted.  ``partial_sums[j]`` is the value after
    ``j + 1`` counted terms.

    ``radius_ok`` flags the regime the expansion is built for: the
    convergence disc ``|beta xi / 2 pi| < 1`` (both temperatures) for the
    high-temperature series, and its exterior ``|beta xi / 2 pi| > 1`` for
    the low-temperature asymptotic series.
    """

    value: float
    terms_used: int
    last_term: float
    converged: bool
    radius_ok: bool
    partial_sums: tuple = field(default=(), repr=False)


def series_radius(params, state):
    """max(|beta xi|, |beta' xi|) / 2 pi; the high-T series needs this < 1."""
    mod = abs(params.xi)
    return max(state.beta, state.beta_prime) * mod / TWO_PI


def _asymptotic_regime(params, state):
    # low-T series needs |beta xi / 2 pi| > 1 at both temperatures
    return min(state.beta, state.beta_prime) * abs(params.xi) / TWO_PI > 1.0


def _xi_envelope(eta, omega_c, k):
    mod = math.hypot(eta, omega_c)
    if mod == 0.0:
        return 0.0
    factor = min(1.0, k * abs(omega_c) / mod)
    if k % 2 == 0:
        factor = min(factor, k * abs(eta) / mod)
    return mod ** k * factor


def _power_diff(beta, beta_p, p):
    try:
        return beta ** p - beta_p ** p
    except OverflowError:
        # only reachable far outside the disc; the sum stops on the first inf
        return math.inf if beta > beta_p else -math.inf


def _validate(params, state, max_terms, tol):
    _check_state(params, state)
    if isinstance(max_terms, bool) or int(max_terms) != max_terms or max_terms < 1:
        raise DomainError(f"max_terms must be a positive integer, got {max_terms!r}")
    tol = float(tol)
    if not (tol >= 0.0 and math.isfinite(tol)):
        raise DomainError(f"tol must be a finite non-negative number, got {tol!r}")
    return int(max_terms), tol


def _radius_check(params, state, strict):
    ok = series_radius(params, state) < 1.0
    if strict and not ok:
        raise ConvergenceDomainError(
            f"|beta xi / 2 pi| = {series_radius(params, state):.6g} >= 1: "
            "outside the high-temperature series disc")
    return ok


def _sum_terms(lead, terms, tol, ratio):
    """Accumulate (term, envelope) pairs, stopping on the tail bound."""
    total = lead
    partial = []
    last = 0.0
    converged = False
    tail_factor = 1.0 / (1.0 - ratio) if ratio < 1.0 else math.inf
    for term, envelope in terms:
        if not math.isfinite(term):
            break
        total += term
        last = term
        partial.append(total)
        bound = envelope * tail_factor
        if bound == 0.0 or bound <= tol * abs(total):
            converged = True
            break
    return SeriesResult(value=total, terms_used=len(partial), last_term=last,
                        converged=converged, radius_ok=ratio < 1.0,
                        partial_sums=tuple(partial))


# --- term generators ------------------------------------------------------

def _high_temp_term(params, state, n):
    # C (-1)^n zeta(n) / (2 pi)^(n-1) xi_{n+1} (b^(n-1) - b'^(n-1)), and its envelope
    eta, wc = params.eta, params.omega_c
    b, bp = state.beta, state.beta_prime
    c = prefactor(params)
    coeff = c * zeta_int(n) / TWO_PI ** (n - 1)
    diff = _power_diff(b, bp, n - 1)
    sign = -1.0 if n % 2 else 1.0
    term = sign * coeff * xi_k_signed(eta, wc, n + 1) * diff
    envelope = abs(coeff * diff) * _xi_envelope(eta, wc, n + 1)
    return term, envelope


def _high_temp_lead(params, state):
    c = prefactor(params)
    eta, wc = params.eta, params.omega_c
    b, bp = state.beta, state.beta_prime
    return c * (-math.pi * wc * (1.0 / b - 1.0 / bp) - 2.0 * eta * wc * math.log(b / bp))


def high_temp_terms(params, state, max_terms=DEFAULT_MAX_TERMS):
    """[(n, term_n)] for n = 2..max_terms of the high-temperature series (eV)."""
    _check_state(params, state)
    return [(n, _high_temp_term(params, state, n)[0]) for n in range(2, max_terms + 1)]


def high_temp_series(params, state, max_terms=DEFAULT_MAX_TERMS, tol=DEFAULT_TOL,
                     strict=False):
    """High-temperature power series of the stationary torque.

    Parameters
    ----------
    params : OscillatorParams
    state : ThermalState
    max_terms : int
        Largest index ``n`` summed (``>= 2``).
    tol : float
        Relative stopping tolerance on the tail bound.
    strict : bool
        Raise :class:`ConvergenceDomainError` outside the convergence disc
        instead of returning a flagged partial sum.

    Returns
    -------
    SeriesResult
    """
    max_terms, tol = _validate(params, state, max_terms, tol)
    if max_terms < 2:
        raise DomainError("high_temp_series needs max_terms >= 2")
    ratio = series_radius(params, state)
    _radius_check(params, state, strict)
    terms = (_high_temp_term(params, state, n) for n in range(2, max_terms + 1))
    return _sum_terms(_high_temp_lead(params, state), terms, tol, ratio)


def _cpv_term(params, state, m):
    # n = 2m + 1 term of the high-T series
    return _high_temp_term(params, state, 2 * m + 1)


def cpv_terms(params, state, max_terms=DEFAULT_MAX_TERMS):
    """[(m, term_m)] of the principal-value series, m = 1..max_terms (eV)."""
    _check_state(params, state)
    return [(m, _cpv_term(params, state, m)[0]) for m in range(1, max_terms + 1)]


def cpv_series(params, state, max_terms=DEFAULT_MAX_TERMS, tol=DEFAULT_TOL, strict=False):
    """Principal-value part as an even-power series in beta.

    C {-2 eta wc log(b/b') - sum_{m>=1} zeta(2m+1)/(2 pi)^(2m) xi_{2m+2} (b^2m - b'^2m)}.
    The logarithm is the analytic ``m = 0`` limit and is always included.
    """
    max_terms, tol = _validate(params, state, max_terms, tol)
    if not params.eta > 0:
        raise DomainError("cpv_series needs eta > 0")
    ratio = series_radius(params, state)
    _radius_check(params, state, strict)
    c = prefactor(params)
    lead = -2.0 * c * params.eta * params.omega_c * math.log(state.beta / state.beta_prime)
    terms = (_cpv_term(params, state, m) for m in range(1, max_terms + 1))
    return _sum_terms(lead, terms, tol, ratio)


def _bernoulli_coeff(m):
    # B_2m / (2m)!; past the exact table use B_2m = (-1)^(m+1) 2 (2m)! zeta(2m) / (2 pi)^2m
    if 2 * m <= BERNOULLI_KMAX:
        return float(bernoulli(2 * m) / math.factorial(2 * m))
    sign = 1.0 if m % 2 else -1.0
    return sign * 2.0 * zeta_int(2 * m) / TWO_PI ** (2 * m)


def _resonance_term(params, state, m):
    eta, wc = params.eta, params.omega_c
    scale = params.omega_p ** 2 * volume_to_natural(params.volume) / (3.0 * math.pi)
    coeff = scale * _bernoulli_coeff(m)
    diff = _power_diff(state.beta, state.beta_prime, 2 * m - 1)
    sign = 1.0 if m % 2 else -1.0  # -(−1)^m
    term = sign * coeff * xi_k_signed(eta, wc, 2 * m + 1) * diff
    envelope = abs(coeff * diff) * _xi_envelope(eta, wc, 2 * m + 1)
    return term, envelope


def resonance_terms(params, state, max_terms=DEFAULT_MAX_TERMS):
    """[(m, term_m)] of the Bernoulli (resonance) series, m = 0..max_terms-1 (eV)."""
    _check_state(params, state)
    return [(m, _resonance_term(params, state, m)[0]) for m in range(max_terms)]


def resonance_series(params, state, max_terms=DEFAULT_MAX_TERMS, tol=DEFAULT_TOL,
                     strict=True):
    """Resonance part as the Bernoulli series.

    -(wp^2 V / 3 pi) sum_{m>=0} (-1)^m B_2m/(2m)! xi_{2m+1} (b^(2m-1) - b'^(2m-1)).
    Converges for ``|beta xi| < 2 pi`` at both temperatures; by default a
    point outside raises :class:`ConvergenceDomainError`.
    """
    max_terms, tol = _validate(params, state, max_terms, tol)
    ratio = series_radius(params, state)
    _radius_check(params, state, strict)
    terms = (_resonance_term(params, state, m) for m in range(max_terms))
    return _sum_terms(0.0, terms, tol, ratio)


# --- low temperature -----------------------------------------------------
#
# The n-th asymptotic term C (2 pi)^2n B_2n/(2n) xi_{2-2n} (b^-2n - b'^-2n)
# equals C (-1)^n 2 zeta(2n) Im[xi^2 Gamma(2n) ((b xi)^-2n - (b' xi)^-2n)].
# The right side is evaluated in log space so no factor overflows.

def _low_temp_term(params, state, n):
    xi = params.xi
    c = prefactor(params)
    lg = math.lgamma(2 * n)
    z = zeta_int(2 * n)
    parts = []
    env = 0.0
    for b in (state.beta, state.beta_prime):
        log_bx = cmath.log(b * xi)
        parts.append(cmath.exp(lg - 2 * n * log_bx))
        env += math.exp(lg - 2 * n * log_bx.real)
    sign = 1.0 if n % 2 == 0 else -1.0
    term = sign * c * 2.0 * z * (xi * xi * (parts[0] - parts[1])).imag
    envelope = abs(c) * 2.0 * z * abs(xi) ** 2 * env
    return term, envelope


def low_temp_terms(params, state, n_terms):
    """[(n, term_n)] for n = 2..n_terms+1 of the low-temperature series (eV)."""
    _check_state(params, state)
    _low_temp_pre(params)
    return [(n, _low_temp_term(params, state, n)[0]) for n in range(2, n_terms + 2)]


def _low_temp_pre(params):
    if params.eta == 0.0 and params.omega_c == 0.0:
        raise SingularReflectionError("negative-index xi_k is singular for eta = omega_c = 0")
    if not params.eta > 0:
        raise DomainError("low_temp_asymptotic needs eta > 0")


def low_temp_asymptotic(params, state, n_terms=400, tol=DEFAULT_TOL, optimal=True):
    """Low-temperature asymptotic series of the stationary torque.

    Sums terms ``n = 2, 3, ...`` (at most ``n_terms`` of them).  With
    ``optimal=True`` summation stops before the first term whose envelope
    exceeds its predecessor's (smallest-term truncation), or once the
    envelope drops below ``tol`` relative to the sum.  ``converged`` then
    means the terms were still decreasing; the series itself diverges.
    With ``optimal=False`` exactly ``n_terms`` terms are summed.
    """
    n_terms, tol = _validate(params, state, n_terms, tol)
    _low_temp_pre(params)
    total = 0.0
    partial = []
    last = 0.0
    prev_env = math.inf
    converged = False
    for n in range(2, n_terms + 2):
        term, env = _low_temp_term(params, state, n)
        if optimal and env > prev_env:
            converged = False
            break
        total += term
        last = term
        partial.append(total)
        prev_env = env
        if optimal and (env == 0.0 or env <= tol * abs(total)):
            converged = True
            break
    else:
        converged = prev_env <= tol * abs(total) or prev_env == 0.0
    if state.beta == state.beta_prime:
        converged = True
    return SeriesResult(value=total, terms_used=len(partial), last_term=last,
                        converged=converged,
                        radius_ok=_asymptotic_regime(params, state),
                        partial_sums=tuple(partial))
