# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels; same algorithms as ``_kernels_py``."""

from libc.math cimport log, atan2, exp, cos, sin, tan, expm1, hypot, fabs

cdef double PI = 3.14159265358979323846
cdef double SHIFT_RADIUS = 12.0

cdef double[10] PSI_ASYM
cdef double[10] TRI_ASYM
PSI_ASYM[:] = [
    0.08333333333333333, -0.008333333333333333, 0.003968253968253968,
    -0.004166666666666667, 0.007575757575757576, -0.021092796092796094,
    0.08333333333333333, -0.4432598039215686, 3.0539543302701198,
    -26.456212121212122]
TRI_ASYM[:] = [
    0.16666666666666666, -0.03333333333333333, 0.023809523809523808,
    -0.03333333333333333, 0.07575757575757576, -0.2531135531135531,
    1.1666666666666667, -7.092156862745098, 54.971177944862156,
    -529.1242424242424]

cdef double[8] XGK
cdef double[8] WGK
cdef double[4] WG
XGK[:] = [
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0]
WGK[:] = [
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714]
WG[:] = [
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327]


cdef inline double cabs_(double complex z) nogil:
    return hypot(z.real, z.imag)


cdef inline double complex clog_(double complex z) nogil:
    return log(hypot(z.real, z.imag)) + 1j * atan2(z.imag, z.real)


cdef inline double complex cexp_(double complex z) nogil:
    cdef double m = exp(z.real)
    return m * cos(z.imag) + 1j * (m * sin(z.imag))


cdef inline double complex series_inv_even(double complex w, double* coeffs) nogil:
    cdef double complex acc = 0
    cdef int i
    for i in range(9, -1, -1):
        acc = acc * w + coeffs[i]
    return acc * w


cdef double complex cot_pi(double complex z) nogil:
    cdef double complex w = PI * z
    cdef double complex q
    if w.imag == 0.0:
        return 1.0 / tan(w.real)
    if w.imag > 0.0:
        q = cexp_(2j * w)
        return 1j * (q + 1.0) / (q - 1.0)
    q = cexp_(-2j * w)
    return -1j * (q + 1.0) / (q - 1.0)


cdef double complex csc2_pi(double complex z) nogil:
    cdef double complex w = PI * z
    cdef double complex q, d
    cdef double s
    if w.imag == 0.0:
        s = sin(w.real)
        return 1.0 / (s * s)
    if w.imag > 0.0:
        q = cexp_(2j * w)
    else:
        q = cexp_(-2j * w)
    d = 1.0 - q
    return -4.0 * q / (d * d)


cdef double complex digamma_right(double complex z) nogil:
    cdef double complex acc = 0
    cdef double complex w
    while cabs_(z) < SHIFT_RADIUS:
        acc = acc + 1.0 / z
        z = z + 1.0
    w = 1.0 / (z * z)
    return clog_(z) - 0.5 / z - series_inv_even(w, PSI_ASYM) - acc


cdef double complex trigamma_right(double complex z) nogil:
    cdef double complex acc = 0
    cdef double complex w
    while cabs_(z) < SHIFT_RADIUS:
        acc = acc + 1.0 / (z * z)
        z = z + 1.0
    w = 1.0 / (z * z)
    return 1.0 / z + 0.5 * w + series_inv_even(w, TRI_ASYM) / z + acc


def digamma(z):
    cdef double complex s = complex(z)
    if s.real < 0.0:
        return digamma_right(-s) - 1.0 / s - PI * cot_pi(s)
    return digamma_right(s)


def trigamma(z):
    cdef double complex s = complex(z)
    if s.real < 0.0:
        return PI * PI * csc2_pi(s) - trigamma_right(1.0 - s)
    return trigamma_right(s)


cdef double complex tail_step(double complex w) nogil:
    # psi tail difference t(w) - t(w + 1); see _kernels_py._tail_step
    cdef double complex x = w + 0.5
    cdef double complex v, v2, acc
    cdef int j, n
    if cabs_(x) < 1.5:
        return clog_((w + 1.0) / w) - x / (w * (w + 1.0))
    v = 0.5 / x
    v2 = v * v
    n = <int>(-39.2 / log(cabs_(v2))) + 1
    if n > 20:
        n = 20
    acc = 0.0
    for j in range(n, 0, -1):
        acc = acc * v2 + 2.0 * j / (2.0 * j + 1.0)
    return -2.0 * v * v2 * acc


def digamma_tail(z):
    """psi(z) - log z + 1/(2z) for Re z > 0, without cancellation."""
    cdef double complex s = complex(z)
    cdef double complex acc = 0.0
    while cabs_(s) < SHIFT_RADIUS:
        acc += tail_step(s)
        s += 1.0
    return acc - series_inv_even(1.0 / (s * s), PSI_ASYM)


def trigamma_tail(z):
    """psi'(z) - 1/z - 1/(2 z^2) for Re z > 0, without cancellation."""
    cdef double complex s = complex(z)
    cdef double complex acc = 0.0
    cdef double complex q
    while cabs_(s) < SHIFT_RADIUS:
        # exact step: t1(w) - t1(w + 1) = 1 / (2 (w (w + 1))^2)
        q = s * (s + 1.0)
        acc += 0.5 / (q * q)
        s += 1.0
    return acc + series_inv_even(1.0 / (s * s), TRI_ASYM) / s


cdef inline double bose_diff(double x, double beta, double beta_p) nogil:
    # e^-a - e^-b over (1 - e^-a)(1 - e^-b), with b - a formed before scaling by x
    cdef double a = beta * x
    cdef double b = beta_p * x
    cdef double d = (beta - beta_p) * x
    cdef double num
    if d <= 0.0:
        num = -exp(-a) * expm1(d)
    else:
        num = exp(-b) * expm1(-d)
    return num / expm1(-a) / expm1(-b)


cdef inline double integrand(int kind, double x, double eta, double omega_c,
                             double beta, double beta_p) nogil:
    cdef double dn = bose_diff(x, beta, beta_p)
    cdef double x2, a, b, den
    if dn == 0.0:
        return 0.0
    x2 = x * x
    a = x2 + eta * eta - omega_c * omega_c
    b = 2.0 * eta * omega_c
    den = a * a + b * b
    if kind == 0:
        return x2 * x * (-b / den) * dn
    return x * eta * (x2 + eta * eta + omega_c * omega_c) / den * dn


def gk15_panel(int kind, double eta, double omega_c, double beta, double beta_p,
               double a, double b):
    """Kronrod-15 and Gauss-7 estimates of a torque integrand over [a, b]."""
    cdef double c = 0.5 * (a + b)
    cdef double h = 0.5 * (b - a)
    cdef double fc, f1, f2, dx, resk, resg
    cdef int j
    with nogil:
        fc = integrand(kind, c, eta, omega_c, beta, beta_p)
        resk = fc * WGK[7]
        resg = fc * WG[3]
        for j in range(7):
            dx = h * XGK[j]
            f1 = integrand(kind, c - dx, eta, omega_c, beta, beta_p)
            f2 = integrand(kind, c + dx, eta, omega_c, beta, beta_p)
            resk += WGK[j] * (f1 + f2)
            if j % 2 == 1:
                resg += WG[j // 2] * (f1 + f2)
    return resk * h, resg * h
