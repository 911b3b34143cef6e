"""Pure-Python numerical kernels.

Mirror of ``_kernels.pyx``; both modules expose the same functions with the
same algorithms so results agree to rounding.  Arguments are assumed to be
validated by the caller (no pole checks here).
"""

import cmath
import math

# B_{2n} / (2n) for n = 1..10 and B_{2n} for n = 1..10
_PSI_ASYM = (
    0.08333333333333333, -0.008333333333333333, 0.003968253968253968,
    -0.004166666666666667, 0.007575757575757576, -0.021092796092796094,
    0.08333333333333333, -0.4432598039215686, 3.0539543302701198,
    -26.456212121212122,
)
_TRI_ASYM = (
    0.16666666666666666, -0.03333333333333333, 0.023809523809523808,
    -0.03333333333333333, 0.07575757575757576, -0.2531135531135531,
    1.1666666666666667, -7.092156862745098, 54.971177944862156,
    -529.1242424242424,
)
SHIFT_RADIUS = 12.0

# Gauss-Kronrod 7/15
_XGK = (
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
)


def _series_inv_even(w, coeffs):
    # sum_{n>=1} c_n w^n by Horner, w = 1/z^2
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * w + c
    return acc * w


def _cot_pi(z):
    """cot(pi z), stable for large |Im z|."""
    w = math.pi * z
    if w.imag == 0.0:
        return complex(1.0 / math.tan(w.real), 0.0)
    if w.imag > 0.0:
        q = cmath.exp(2j * w)
        return 1j * (q + 1.0) / (q - 1.0)
    p = cmath.exp(-2j * w)
    return -1j * (p + 1.0) / (p - 1.0)


def _csc2_pi(z):
    """1/sin^2(pi z), stable for large |Im z|."""
    w = math.pi * z
    if w.imag == 0.0:
        s = math.sin(w.real)
        return complex(1.0 / (s * s), 0.0)
    q = cmath.exp(2j * w) if w.imag > 0.0 else cmath.exp(-2j * w)
    d = 1.0 - q
    return -4.0 * q / (d * d)


def _digamma_right(z):
    acc = 0j
    while abs(z) < SHIFT_RADIUS:
        acc += 1.0 / z
        z += 1.0
    w = 1.0 / (z * z)
    return cmath.log(z) - 0.5 / z - _series_inv_even(w, _PSI_ASYM) - acc


def digamma(z):
    z = complex(z)
    if z.real < 0.0:
        return _digamma_right(-z) - 1.0 / z - math.pi * _cot_pi(z)
    return _digamma_right(z)


def _trigamma_right(z):
    acc = 0j
    while abs(z) < SHIFT_RADIUS:
        acc += 1.0 / (z * z)
        z += 1.0
    w = 1.0 / (z * z)
    return 1.0 / z + 0.5 * w + _series_inv_even(w, _TRI_ASYM) / z + acc


def trigamma(z):
    z = complex(z)
    if z.real < 0.0:
        return math.pi * math.pi * _csc2_pi(z) - _trigamma_right(1.0 - z)
    return _trigamma_right(z)


def _tail_step(w):
    # psi tail difference t(w) - t(w + 1) = log(1 + 1/w) - 1/(2w) - 1/(2(w+1)).
    # With v = 1/(2w + 1) it equals -2 sum_{j>=1} 2j/(2j+1) v^(2j+1), which
    # has no cancellation; the closed form is used only for small |w + 1/2|.
    x = w + 0.5
    if abs(x) < 1.5:
        return cmath.log((w + 1.0) / w) - x / (w * (w + 1.0))
    v = 0.5 / x
    v2 = v * v
    # enough terms for |v2|^n < 1e-17; |v2| <= 1/9 caps n at 18
    n = min(20, int(-39.2 / math.log(abs(v2))) + 1)
    acc = 0j
    for j in range(n, 0, -1):
        acc = acc * v2 + 2.0 * j / (2.0 * j + 1.0)
    return -2.0 * v * v2 * acc


def digamma_tail(z):
    """psi(z) - log z + 1/(2z) for Re z > 0, without cancellation."""
    z = complex(z)
    acc = 0j
    while abs(z) < SHIFT_RADIUS:
        acc += _tail_step(z)
        z += 1.0
    return acc - _series_inv_even(1.0 / (z * z), _PSI_ASYM)


def trigamma_tail(z):
    """psi'(z) - 1/z - 1/(2 z^2) for Re z > 0, without cancellation."""
    z = complex(z)
    acc = 0j
    while abs(z) < SHIFT_RADIUS:
        # exact step: t1(w) - t1(w + 1) = 1 / (2 (w (w + 1))^2)
        q = z * (z + 1.0)
        acc += 0.5 / (q * q)
        z += 1.0
    return acc + _series_inv_even(1.0 / (z * z), _TRI_ASYM) / z


def _bose_diff(x, beta, beta_p):
    # 1/(e^{beta x}-1) - 1/(e^{beta' x}-1), x > 0, written as
    # (e^-a - e^-b) / ((1 - e^-a)(1 - e^-b)) with b - a formed before scaling
    a = beta * x
    b = beta_p * x
    d = (beta - beta_p) * x
    if d <= 0.0:
        num = -math.exp(-a) * math.expm1(d)
    else:
        num = math.exp(-b) * math.expm1(-d)
    return num / math.expm1(-a) / math.expm1(-b)


def _integrand(kind, x, eta, omega_c, beta, beta_p):
    dn = _bose_diff(x, beta, beta_p)
    if dn == 0.0:
        return 0.0
    x2 = x * x
    a = x2 + eta * eta - omega_c * omega_c
    b = 2.0 * eta * omega_c
    den = a * a + b * b
    if kind == 0:
        # omega^3 Im[1/(omega^2 + xi^2)]
        return x2 * x * (-b / den) * dn
    # omega Re[xi/(omega^2 + xi^2)]
    return x * eta * (x2 + eta * eta + omega_c * omega_c) / den * dn


def gk15_panel(kind, eta, omega_c, beta, beta_p, a, b):
    """Kronrod-15 and Gauss-7 estimates of a torque integrand over [a, b].

    ``kind`` 0 selects the stationary-torque integrand, 1 the rotational
    (``Re[xi/(omega^2+xi^2)]``) integrand.  Prefactors are applied by the caller.
    """
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = _integrand(kind, c, eta, omega_c, beta, beta_p)
    resk = fc * _WGK[7]
    resg = fc * _WG[3]
    for j in range(7):
        dx = h * _XGK[j]
        f1 = _integrand(kind, c - dx, eta, omega_c, beta, beta_p)
        f2 = _integrand(kind, c + dx, eta, omega_c, beta, beta_p)
        resk += _WGK[j] * (f1 + f2)
        if j % 2 == 1:
            resg += _WG[j // 2] * (f1 + f2)
    return resk * h, resg * h
