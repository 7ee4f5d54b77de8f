"""Sine integral Si and complementary exponential integral Ein.

Si(x)  = int_0^x sin(t)/t dt
Ein(z) = int_0^z (1 - e^-t)/t dt   (entire function)

Both are evaluated to near machine accuracy by combining the entire Taylor
series (small arguments), a modified-Lentz continued fraction for
E1(z) = Ein(z) - gamma - log(z) (moderate arguments), and the divergent
asymptotic series of E1 truncated at its smallest term (large arguments).
The two are linked through Si(x) = pi/2 + Im E1(ix).

Accuracy contract: si to 1e-14 absolute; ein to 1e-13 relative on
|Re z| <= 50, |Im z| <= 5000.  Arguments far outside that box still
evaluate through the asymptotic branch, whose relative accuracy degrades
gracefully (it stays below ~1e-12 on the near-imaginary rays produced by
the payoff formulas, where |Im z| can reach ~1e5).
"""

from __future__ import annotations

import cmath
import math

EULER_GAMMA = 0.57721566490153286060651209008240243104


def _ein_taylor(z: complex) -> complex:
    # sum_{n>=1} (-1)^(n+1) z^n / (n n!), Kahan-compensated
    s = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    u = 1.0 + 0.0j  # z^n / n!
    sign = 1.0
    az = abs(z)
    for n in range(1, 400):
        u *= z / n
        term = sign * u / n
        sign = -sign
        y = term - comp
        t = s + y
        comp = (t - s) - y
        s = t
        if n > az and abs(term) <= 1e-17 * max(abs(s), 1e-300):
            break
    return s


def _e1_cf(z: complex, maxiter: int = 500) -> complex:
    # modified Lentz on E1(z) = e^-z / (z+1 - 1/(z+3 - 4/(z+5 - 9/(...))))
    tiny = 1e-300
    b = z + 1.0
    if b == 0:
        b = tiny
    f = b
    c = b
    d = 0.0 + 0.0j
    for i in range(1, maxiter):
        a = -float(i * i)
        b = b + 2.0
        d = b + a * d
        if d == 0:
            d = tiny
        c = b + a / c
        if c == 0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return cmath.exp(-z) / f


def _e1_asymptotic(z: complex) -> complex:
    # e^-z/z * sum_k (-1)^k k!/z^k, truncated at the smallest term
    s = 1.0 + 0.0j
    term = 1.0 + 0.0j
    prev = 1.0
    for k in range(1, 200):
        term *= -k / z
        mag = abs(term)
        if mag > prev:
            break
        s += term
        prev = mag
        if mag < 1e-17 * abs(s):
            break
    return cmath.exp(-z) / z * s


def ein(z: complex) -> complex:
    """Complementary exponential integral Ein(z), entire in z."""
    z = complex(z)
    if z == 0.0:
        return 0.0 + 0.0j
    if z.imag < 0.0:
        # Schwarz reflection keeps conjugate symmetry exact
        return ein(z.conjugate()).conjugate()
    az = abs(z)
    if az <= 10.0:
        return _ein_taylor(z)
    if az >= 40.0:
        return EULER_GAMMA + cmath.log(z) + _e1_asymptotic(z)
    if z.real < 0.0 and z.imag * z.imag <= 16.0 * (-z.real):
        # near the negative real axis the result is ~e^|Re z| large, which
        # keeps the Taylor cancellation relatively harmless, while the
        # continued fraction is at its weakest
        return _ein_taylor(z)
    return EULER_GAMMA + cmath.log(z) + _e1_cf(z)


def _si_taylor(x: float) -> float:
    s = 0.0
    comp = 0.0
    term = x
    x2 = x * x
    k = 0
    while True:
        contrib = term / (2 * k + 1)
        y = contrib - comp
        t = s + y
        comp = (t - s) - y
        s = t
        k += 1
        term *= -x2 / ((2 * k) * (2 * k + 1))
        if abs(term) < 1e-18 or k > 60:
            break
    return s


def si(x: float) -> float:
    """Sine integral Si(x); odd, Si(x) -> pi/2 as x -> +inf."""
    x = float(x)
    if x == 0.0:
        return 0.0
    ax = abs(x)
    if ax <= 6.0:
        return _si_taylor(x)
    e1 = _e1_asymptotic(1j * ax) if ax >= 40.0 else _e1_cf(1j * ax)
    r = 0.5 * math.pi + e1.imag
    return r if x > 0 else -r


def exp_sin_integral(a: float, b: float) -> float:
    """int_0^1 e^{-a t} sin(b t)/t dt, which equals Im Ein(a + i b)."""
    return ein(complex(a, b)).imag
