"""Special functions: K0, generalized Laguerre polynomials, displacement elements.

``bessel_k0`` uses the ascending series for ``x <= 2`` and Steed's continued
fraction (Temme's CF2 for order zero) above that. Both reach double precision
on their ranges and the continued fraction yields the scaled function
``exp(x) K0(x)`` directly, so nothing overflows for large arguments.
"""

import cmath
import math
import warnings

from .errors import DomainError, UnderflowWarning

EULER_GAMMA = 0.5772156649015329

#: Largest oscillator level / polynomial degree accepted.
MAX_LEVEL = 64

_SERIES_MAX_X = 2.0
_EPS = 1e-17


def _k0_series(x):
    # K0(x) = -(ln(x/2) + gamma) I0(x) + sum_k (x^2/4)^k / (k!)^2 * H_k
    y = 0.25 * x * x
    term = 1.0
    i0 = 1.0
    tail = 0.0
    harmonic = 0.0
    k = 0
    while True:
        k += 1
        term *= y / (k * k)
        harmonic += 1.0 / k
        i0 += term
        tail += term * harmonic
        if term * harmonic < _EPS * i0:
            break
    return -(math.log(0.5 * x) + EULER_GAMMA) * i0 + tail


def _k0_scaled_cf(x):
    # Steed's algorithm for the CF2 continued fraction with nu = 0.
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 10000):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    else:  # pragma: no cover - converges in < 100 steps for x >= 2
        raise ArithmeticError(f"K0 continued fraction failed at x={x}")
    return math.sqrt(math.pi / (2.0 * x)) / s


def _check_positive(x):
    if not x > 0 or math.isinf(x):
        raise DomainError(f"K0 needs a finite positive argument, got {x}")


def bessel_k0(x: float) -> float:
    """Modified Bessel function of the second kind of order zero.

    Emits :class:`UnderflowWarning` and returns 0 when the value is below
    the smallest representable double (``x`` beyond about 745).
    """
    _check_positive(x)
    if x <= _SERIES_MAX_X:
        return _k0_series(x)
    value = _k0_scaled_cf(x) * math.exp(-x)
    if value == 0.0:
        warnings.warn(f"K0({x}) underflows to zero", UnderflowWarning, stacklevel=2)
    return value


def bessel_k0_scaled(x: float) -> float:
    """Return ``exp(x) * K0(x)``; finite for every positive ``x``."""
    _check_positive(x)
    if x <= _SERIES_MAX_X:
        return math.exp(x) * _k0_series(x)
    return _k0_scaled_cf(x)


def laguerre(m: int, l: int, x: float) -> float:
    """Generalized Laguerre polynomial L_m^(l)(x) by three-term recurrence."""
    if m < 0 or l < 0:
        raise DomainError(f"degree and order must be non-negative, got m={m}, l={l}")
    if m > MAX_LEVEL:
        raise DomainError(f"degree {m} exceeds the supported maximum {MAX_LEVEL}")
    prev, cur = 0.0, 1.0
    for k in range(m):
        prev, cur = cur, ((2 * k + 1 + l - x) * cur - (k + l) * prev) / (k + 1)
    return cur


def displacement_element(m: int, n: int, mu: complex) -> complex:
    """Matrix element <m| exp(mu a^+ - mu* a) |n> in the oscillator basis.

    Parameters
    ----------
    m, n : int
        Oscillator levels, at most :data:`MAX_LEVEL`.
    mu : complex
        Displacement amplitude.

    Notes
    -----
    Closed form with generalized Laguerre polynomials; the factorial ratio
    enters under a square root and is computed through ``lgamma``.
    """
    if min(m, n) < 0 or max(m, n) > MAX_LEVEL:
        raise DomainError(f"levels must lie in [0, {MAX_LEVEL}], got m={m}, n={n}")
    mu = complex(mu)
    x = abs(mu) ** 2
    if m >= n:
        lo, hi, amp = n, m, mu
    else:
        lo, hi, amp = m, n, -mu.conjugate()
    ratio = math.exp(0.5 * (math.lgamma(lo + 1) - math.lgamma(hi + 1)))
    power = amp ** (hi - lo) if hi > lo else 1.0
    return cmath.exp(-0.5 * x) * ratio * power * laguerre(lo, hi - lo, x)
