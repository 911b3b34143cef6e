"""Quick internal consistency checks of the special functions.

Used by the ``specfun-selftest`` CLI subcommand.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .oscillator import xi_k_binomial, xi_k_chebyshev, xi_k_signed
from .specfun import _zeta_euler_maclaurin, digamma, zeta_int

__all__ = ["CheckResult", "run_selftest"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self):
        return self.max_error <= self.tolerance


def _random_points(rng, n):
    pts = []
    while len(pts) < n:
        z = complex(rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0))
        if abs(z - round(z.real)) > 1e-3:
            pts.append(z)
    return pts


def _check_recurrence(points):
    worst = 0.0
    for z in points:
        lhs = digamma(z + 1.0)
        rhs = digamma(z) + 1.0 / z
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return worst


def _check_reflection(points):
    worst = 0.0
    for z in points:
        lhs = digamma(1.0 - z) - digamma(z)
        rhs = math.pi / cmath.tan(math.pi * z)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return worst


def _check_zeta_even(m_max=10):
    worst = 0.0
    for m in range(1, m_max + 1):
        from_b = zeta_int(2 * m)
        summed = _zeta_euler_maclaurin(2 * m)
        worst = max(worst, abs(from_b - summed) / from_b)
    return worst


def _check_xi(k_max=50):
    worst = 0.0
    for eta, wc in ((0.035, 1e-4), (0.5, 0.25), (1e-3, 2e-3), (0.3, -0.7)):
        mod = math.hypot(eta, wc)
        for k in range(1, k_max + 1):
            rec = xi_k_signed(eta, wc, k)
            scale = mod ** k
            direct = (complex(eta, wc) ** k).imag
            worst = max(worst, abs(rec - xi_k_binomial(eta, wc, k)) / scale,
                        abs(rec - xi_k_chebyshev(eta, wc, k)) / scale,
                        abs(rec - direct) / scale)
    return worst


def run_selftest(n_points=1000, seed=20240611):
    """Run all checks; returns a list of :class:`CheckResult`."""
    rng = np.random.default_rng(seed)
    points = _random_points(rng, n_points)
    return [
        CheckResult("digamma recurrence", _check_recurrence(points), 1e-10),
        CheckResult("digamma reflection", _check_reflection(points), 1e-10),
        CheckResult("zeta(2m) Bernoulli vs summation", _check_zeta_even(), 1e-13),
        CheckResult("xi_k recurrence/Chebyshev/power", _check_xi(), 1e-12),
    ]
