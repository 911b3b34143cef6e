"""Special functions used by the torque formulas.

Bernoulli numbers (exact rationals), zeta at integer arguments, complex
digamma and trigamma, and Chebyshev polynomials of the second kind.

Every function here is pure; the Bernoulli tables are immutable tuples built
once per capacity and cached.
"""

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from . import _core
from .constants import EULER_GAMMA
from .errors import CapacityError, DomainError, PoleError

__all__ = [
    "BERNOULLI_KMAX", "EULER_GAMMA", "POLE_TOLERANCE", "bernoulli", "zeta_int",
    "digamma", "trigamma", "digamma_tail", "trigamma_tail",
    "digamma_asymptotic", "chebyshev_u",
]

BERNOULLI_KMAX = 64
POLE_TOLERANCE = 1e-12

# pi to 50 digits; float (2*pi)**n would carry ~n ulps of error
_PI_RATIONAL = Fraction(314159265358979323846264338327950288419716939937510, 10 ** 50)


@lru_cache(maxsize=8)
def _even_bernoulli_table(n_even):
    """(B_0, B_2, ..., B_{2 n_even}) as Fractions.

    Tangent numbers T_1..T_n are built with the integer-only recurrence of
    Brent and Harvey, then B_{2n} = (-1)^{n-1} 2n T_n / (4^n (4^n - 1)).
    """
    t = [0] * (n_even + 1)
    if n_even >= 1:
        t[1] = 1
    for k in range(2, n_even + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, n_even + 1):
        for j in range(k, n_even + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    table = [Fraction(1)]
    for n in range(1, n_even + 1):
        four_n = 1 << (2 * n)
        sign = 1 if n % 2 == 1 else -1
        table.append(Fraction(sign * 2 * n * t[n], four_n * (four_n - 1)))
    return tuple(table)


_even_bernoulli_table(BERNOULLI_KMAX // 2)


def bernoulli(k, k_max=BERNOULLI_KMAX):
    """Exact Bernoulli number B_k (convention B_1 = -1/2).

    Parameters
    ----------
    k : int
        Non-negative index.
    k_max : int, optional
        Table capacity; indices above it raise :class:`CapacityError`.

    Returns
    -------
    fractions.Fraction
    """
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise DomainError(f"bernoulli index must be a non-negative integer, got {k!r}")
    k = int(k)
    if k > k_max:
        raise CapacityError(f"bernoulli index {k} exceeds capacity k_max={k_max}")
    if k == 1:
        return Fraction(-1, 2)
    if k % 2:
        return Fraction(0)
    cap = max(BERNOULLI_KMAX, k_max) // 2
    return _even_bernoulli_table(cap)[k // 2]


def _zeta_euler_maclaurin(n, cutoff=10, corrections=8):
    head = [k ** -float(n) for k in range(1, cutoff)]
    N = float(cutoff)
    tail = [N ** (1 - n) / (n - 1), 0.5 * N ** -n]
    rising = float(n)  # n (n+1) ... (n + 2j - 2)
    for j in range(1, corrections + 1):
        b = bernoulli(2 * j)
        term = float(b / math.factorial(2 * j)) * rising * N ** (-n - 2 * j + 1)
        tail.append(term)
        if abs(term) < 1e-18:
            break
        rising *= (n + 2 * j - 1) * (n + 2 * j)
    return math.fsum(head + tail)


@lru_cache(maxsize=256)
def _zeta_int_cached(n):
    if n % 2 == 0 and n <= BERNOULLI_KMAX:
        return float(abs(bernoulli(n)) * (2 * _PI_RATIONAL) ** n / (2 * math.factorial(n)))
    return _zeta_euler_maclaurin(n)


def zeta_int(n):
    """Riemann zeta at an integer ``n >= 2``.

    Even ``n`` up to the Bernoulli capacity uses the exact Bernoulli
    relation; odd ``n`` uses direct summation with an Euler-Maclaurin tail.
    Even ``n`` beyond the capacity (where zeta(n) - 1 < 2**-64) is summed
    directly as well.
    """
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"zeta_int needs an integer argument, got {n!r}")
    n = int(n)
    if n < 2:
        raise DomainError(f"zeta_int needs n >= 2, got {n}")
    return _zeta_int_cached(n)


def _as_complex(s, name="s"):
    try:
        z = complex(s)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a number, got {s!r}") from exc
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name} must be finite, got {s!r}")
    return z


def _check_pole(z):
    nearest = round(z.real)
    if nearest <= 0 and abs(z - nearest) < POLE_TOLERANCE:
        raise PoleError(nearest)


def digamma(s):
    """Complex digamma function psi(s).

    Upward recurrence to ``|s| >= 12``, then the asymptotic series through
    B_20; the reflection formula covers ``Re s < 0``.

    Raises
    ------
    PoleError
        If ``s`` is within 1e-12 of a non-positive integer.
    """
    z = _as_complex(s)
    _check_pole(z)
    return _core.digamma(z)


def trigamma(s):
    """Complex trigamma function psi'(s)."""
    z = _as_complex(s)
    _check_pole(z)
    return _core.trigamma(z)


def digamma_tail(s):
    """``psi(s) - log(s) + 1/(2s)`` for ``Re s > 0``.

    The logarithmic and 1/s pieces of psi cancel analytically in the torque
    formulas, so callers evaluate this remainder directly and avoid the
    associated loss of significance at large ``|s|``.
    """
    z = _as_complex(s)
    if not z.real > 0.0:
        raise DomainError(f"digamma_tail needs Re s > 0, got {z}")
    return _core.digamma_tail(z)


def trigamma_tail(s):
    """``psi'(s) - 1/s - 1/(2 s^2)`` for ``Re s > 0``."""
    z = _as_complex(s)
    if not z.real > 0.0:
        raise DomainError(f"trigamma_tail needs Re s > 0, got {z}")
    return _core.trigamma_tail(z)


def digamma_asymptotic(s, n_terms=10):
    """Truncated asymptotic series log s - 1/(2s) - sum B_2n / (2n s^2n)."""
    z = _as_complex(s)
    if z == 0:
        raise PoleError(0)
    acc = cmath.log(z) - 0.5 / z
    w = 1.0 / (z * z)
    p = 1.0
    for n in range(1, n_terms + 1):
        p *= w
        acc -= float(bernoulli(2 * n, k_max=max(BERNOULLI_KMAX, 2 * n))) / (2 * n) * p
    return acc


def chebyshev_u(n, x):
    """Chebyshev polynomial of the second kind U_n(x), three-term recurrence."""
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"chebyshev_u order must be a non-negative integer, got {n!r}")
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("chebyshev_u needs finite x")
    u_prev, u = 1.0, 2.0 * x
    if n == 0:
        return u_prev
    for _ in range(int(n) - 1):
        u_prev, u = u, 2.0 * x * u - u_prev
    return u
