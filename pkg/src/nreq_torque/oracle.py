"""Numerical-quadrature oracle for the torque integrals.

Independent of the closed forms: the frequency integrals are evaluated
directly with a globally adaptive Gauss-Kronrod (7/15) scheme.  The
integrals are taken in their folded form over (0, infinity) with Bose
factors,

    tau0     = (2 wp^2 V / 3 pi^2) int_0^inf w^3 Im[1/(w^2 + xi^2)] dn(w) dw,
    tau1_hat = (2 wp^2 V / 3 pi^2) int_0^inf w   Re[xi/(w^2 + xi^2)] dn(w) dw,

with dn(w) = 1/(e^{b w} - 1) - 1/(e^{b' w} - 1).  Both integrands are
finite at w = 0, and the Kronrod nodes never touch the endpoints.
"""

import heapq
import math
from dataclasses import dataclass, field

from . import _core
from ._kernels_py import _WG, _WGK, _XGK, _bose_diff
from .constants import volume_to_natural
from .errors import AccuracyError, DomainError
from .oscillator import OscillatorParams
from .torque import ThermalState, _check_state

__all__ = [
    "QuadratureReport", "DEFAULT_TOL", "MAX_SUBDIVISIONS", "torque_quadrature",
    "torque1_quadrature", "torque_quadrature_two_sided", "sokhotski_plemelj_probe",
    "bose_weight_f", "torque_integrand", "cutoff_omega", "validation_grid",
]

DEFAULT_TOL = 1e-10
MIN_TOL = 1e-12
MAX_SUBDIVISIONS = 4000
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class QuadratureReport:
    """Quadrature result.  ``abs_error_estimate`` includes the truncated tail.

    ``panels`` holds the final ``(a, b)`` subintervals in increasing order.
    """

    value: float
    abs_error_estimate: float
    subdivisions: int
    cutoff_omega: float
    panels: tuple = field(default=(), repr=False)


def _integral_prefactor(params):
    return 2.0 * params.omega_p ** 2 * volume_to_natural(params.volume) / (3.0 * math.pi ** 2)


def cutoff_omega(params, state):
    """Initial upper limit max(40/b, 40/b', |wc| + 40 eta, 10 |xi|) in eV."""
    return max(40.0 / state.beta, 40.0 / state.beta_prime,
               abs(params.omega_c) + 40.0 * params.eta, 10.0 * abs(params.xi))


def _breakpoints(params, state, upper):
    wc, eta = abs(params.omega_c), params.eta
    pts = {0.5 * wc, wc, 2.0 * wc, 1.0 / state.beta, 1.0 / state.beta_prime}
    if wc > eta:
        pts.add(math.sqrt(wc * wc - eta * eta))
    inner = sorted(p for p in pts if 0.0 < p < upper)
    edges = [0.0]
    for p in inner:
        if p - edges[-1] > 1e-12 * upper:
            edges.append(p)
    edges.append(upper)
    return edges


def _tail_bound(kind, params, state, upper):
    # integrand magnitude <= A / w for w >= 10 |xi|, and dn <= e^{-bw}/(1-e^{-bW})
    b = min(state.beta, state.beta_prime)
    if kind == 0:
        amp = 2.0 * params.eta * abs(params.omega_c) / 0.98
    else:
        amp = 1.04 * params.eta
    x = b * upper
    if x > 700.0:
        return 0.0
    return amp / upper * math.exp(-x) / (b * -math.expm1(-x))


def _adaptive(panel, edges, tol, budget, abs_tol=0.0):
    """Globally adaptive bisection.  Returns (value, error, panels, n_evals)."""
    heap = []
    count = 0
    for a, b in zip(edges[:-1], edges[1:]):
        k, g = panel(a, b)
        e = abs(k - g)
        heapq.heappush(heap, (-e, count, a, b, k))
        count += 1
    subdivisions = 0

    def totals():
        return (math.fsum(item[4] for item in heap),
                math.fsum(-item[0] for item in heap),
                math.fsum(abs(item[4]) for item in heap))

    value, err, absval = totals()
    while err > max(tol * abs(value), abs_tol, 50.0 * _EPS * absval):
        if subdivisions >= budget:
            raise AccuracyError(
                f"quadrature did not reach tol={tol:g} within {budget} subdivisions",
                best_estimate=value, error_estimate=err)
        neg_e, _, a, b, k = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        value -= k
        err += neg_e
        absval -= abs(k)
        for lo, hi in ((a, mid), (mid, b)):
            k, g = panel(lo, hi)
            e = abs(k - g)
            heapq.heappush(heap, (-e, count, lo, hi, k))
            count += 1
            value += k
            err += e
            absval += abs(k)
        subdivisions += 1
        if subdivisions % 32 == 0:
            # resum exactly to stop drift in the running totals
            value, err, absval = totals()
    value, err, absval = totals()
    panels = tuple(sorted((item[2], item[3]) for item in heap))
    return value, err, panels, subdivisions


def _integrate_kind(kind, params, state, tol, max_subdivisions):
    _check_state(params, state)
    if not params.eta > 0:
        raise DomainError(
            "quadrature needs eta > 0; probe the eta -> 0+ limit with sokhotski_plemelj_probe")
    tol = float(tol)
    if not (MIN_TOL <= tol < 1.0):
        raise DomainError(f"tol must lie in [{MIN_TOL:g}, 1), got {tol!r}")
    upper = cutoff_omega(params, state)
    if state.beta == state.beta_prime or (kind == 0 and params.omega_c == 0.0):
        return QuadratureReport(0.0, 0.0, 0, upper, ((0.0, upper),))
    eta, wc, b, bp = params.eta, params.omega_c, state.beta, state.beta_prime
    gk = _core.gk15_panel

    def panel(lo, hi):
        return gk(kind, eta, wc, b, bp, lo, hi)

    value, err, panels, subdivisions = _adaptive(
        panel, _breakpoints(params, state, upper), tol, max_subdivisions)
    tail = _tail_bound(kind, params, state, upper)
    # extend the range until the tail bound is negligible
    while tail > 0.1 * tol * abs(value) and tail > 0.0:
        new_upper = 2.0 * upper
        v2, e2, p2, s2 = _adaptive(panel, [upper, new_upper], tol,
                                   max_subdivisions - subdivisions,
                                   abs_tol=0.1 * tol * abs(value))
        value, err = value + v2, err + e2
        panels += p2
        subdivisions += s2
        upper = new_upper
        tail = _tail_bound(kind, params, state, upper)
    pref = _integral_prefactor(params)
    return QuadratureReport(value=pref * value,
                            abs_error_estimate=abs(pref) * (err + tail),
                            subdivisions=subdivisions, cutoff_omega=upper,
                            panels=panels)


def torque_quadrature(params, state, tol=DEFAULT_TOL, max_subdivisions=MAX_SUBDIVISIONS):
    """Stationary torque (eV) by adaptive quadrature of the folded frequency integral.

    Parameters
    ----------
    params : OscillatorParams
        ``eta`` must be positive.
    state : ThermalState
    tol : float
        Relative tolerance, at least 1e-12.
    max_subdivisions : int
        Bisection budget; exceeding it raises :class:`AccuracyError`
        carrying the best estimate.

    Returns
    -------
    QuadratureReport
    """
    return _integrate_kind(0, params, state, tol, max_subdivisions)


def torque1_quadrature(params, state, tol=DEFAULT_TOL, max_subdivisions=MAX_SUBDIVISIONS):
    """Auxiliary rotational coefficient hat-tau^1 by quadrature."""
    return _integrate_kind(1, params, state, tol, max_subdivisions)


def _gk15(f, a, b):
    c, h = 0.5 * (a + b), 0.5 * (b - a)
    fc = f(c)
    resk, resg = fc * _WGK[7], fc * _WG[3]
    for j in range(7):
        dx = h * _XGK[j]
        s = f(c - dx) + f(c + dx)
        resk += _WGK[j] * s
        if j % 2 == 1:
            resg += _WG[j // 2] * s
    return resk * h, resg * h


def _coth_half(x):
    return 1.0 / math.tanh(0.5 * x)


def torque_quadrature_two_sided(params, state, tol=1e-9, max_subdivisions=MAX_SUBDIVISIONS):
    """Stationary torque from the unfolded integral over the whole real line.

    (wp^2 V / 6 pi^2) int w^3 Im[1/(w^2 + xi^2)] (coth(b w/2) - coth(b' w/2)) dw.
    Slower than :func:`torque_quadrature`; kept to check the folding.
    """
    _check_state(params, state)
    if not params.eta > 0:
        raise DomainError("quadrature needs eta > 0")
    xi2 = params.xi ** 2
    b, bp = state.beta, state.beta_prime

    def f(w):
        if w == 0.0:
            return 0.0
        return w ** 3 * (1.0 / (w * w + xi2)).imag * (_coth_half(b * w) - _coth_half(bp * w))

    upper = 2.0 * cutoff_omega(params, state)
    half = _breakpoints(params, state, upper)
    edges = [-p for p in reversed(half[1:])] + half
    value, err, panels, subdivisions = _adaptive(
        lambda lo, hi: _gk15(f, lo, hi), edges, tol, max_subdivisions)
    pref = params.omega_p ** 2 * volume_to_natural(params.volume) / (6.0 * math.pi ** 2)
    tail = 2.0 * _tail_bound(0, params, state, upper)
    return QuadratureReport(pref * value, abs(pref) * (err + tail), subdivisions, upper, panels)


def bose_weight_f(params, state, omega):
    """f(w) = (wp^2 V / 12 pi^2) w^2 (coth(b w/2) - coth(b' w/2)) in eV^2 (natural units)."""
    _check_state(params, state)
    w = float(omega)
    if w == 0.0:
        return 0.0
    pref = params.omega_p ** 2 * volume_to_natural(params.volume) / (12.0 * math.pi ** 2)
    return pref * w * w * (_coth_half(state.beta * w) - _coth_half(state.beta_prime * w))


def torque_integrand(params, state, omega):
    """Folded stationary-torque integrand at ``omega > 0`` (eV per eV), prefactor included.

    Uses Re alpha_xy only through Im[1/(w^2 + xi^2)], so at ``eta = 0`` it is
    identically zero off the resonance.
    """
    _check_state(params, state)
    w = float(omega)
    if not w > 0:
        raise DomainError("torque_integrand needs omega > 0")
    dn = _bose_diff(w, state.beta, state.beta_prime)
    im = (1.0 / (w * w + params.xi ** 2)).imag
    return _integral_prefactor(params) * w ** 3 * im * dn


def sokhotski_plemelj_probe(params, state, eta_sequence, tol=DEFAULT_TOL):
    """Quadrature torque along a decreasing damping sequence.

    Returns ``[(eta, torque), ...]`` in input order; the values approach the
    eta -> 0+ limit, which differs from the (zero) undamped integral.
    """
    etas = [float(e) for e in eta_sequence]
    if not etas:
        raise DomainError("eta_sequence must not be empty")
    if any(not (e > 0 and math.isfinite(e)) for e in etas):
        raise DomainError("eta_sequence entries must be positive and finite")
    if any(b >= a for a, b in zip(etas, etas[1:])):
        raise DomainError("eta_sequence must be strictly decreasing")
    return [(e, torque_quadrature(params.replace(eta=e), state, tol).value) for e in etas]


def validation_grid(radius_nm=100.0):
    """Cross-check grid of 72 ``(params, state)`` pairs.

    omega_p in {1, 9} eV, eta in {1e-3, 0.035, 0.5} eV, omega_c in
    {1e-4, 1e-2, eta/2, 2 eta} eV and (T, T') in {(300, 600), (600, 300),
    (77, 300)} K, for a sphere of the given radius.
    """
    pairs = ((300.0, 600.0), (600.0, 300.0), (77.0, 300.0))
    grid = []
    for omega_p in (1.0, 9.0):
        for eta in (1e-3, 0.035, 0.5):
            for omega_c in (1e-4, 1e-2, 0.5 * eta, 2.0 * eta):
                params = OscillatorParams.gold(omega_c=omega_c, radius_nm=radius_nm,
                                               omega_p=omega_p, eta=eta)
                for t, t_p in pairs:
                    grid.append((params, ThermalState.from_kelvin(t, t_p)))
    return grid
