"""High-accuracy Dawson, complex-error (Faddeeva) and Voigt functions.

These are the building blocks of the closed-form stable densities used by
the channel noise models:

    w(z)   = exp(-z^2) erfc(-iz)                  (Faddeeva)
    F(z)   = exp(-z^2) * integral_0^z exp(t^2) dt (Dawson)
    K(a,b) = Re w(a+ib),  L(a,b) = Im w(a+ib)     (Voigt, b > 0)

Everything is evaluated in double precision with a certified relative
accuracy of 1e-12 per component on the rectangle |Re z|, |Im z| <= 30
(excluding points where a component underflows below ~1e-300 and, in the
lower half-plane, small neighbourhoods of the zeros of w).  The evaluator
is a region split, with boundaries fixed by a pre-build comparison against
an arbitrary-precision oracle (see tools/gen_fixtures.py):

  * trapezoidal sum of the Hilbert-transform representation
        w(z) = (i/pi) * integral e^{-t^2}/(z-t) dt        (Im z > 0)
    over a symmetric node grid with an exact pole-image correction
    (Chiarella-Reichel).  Step h = 0.42 keeps the smooth aliasing error
    near e^{-(pi/h)^2}; nodes are paired (+t, -t) so Im w stays relatively
    accurate down to Re z ~ 1e-300, and the grid offset is switched between
    0 and h/2 so z never comes closer than h/4 to a node.
  * Laplace continued fraction for large |z|.
  * asymptotic 1/z series for F in the strip Im(z)^2 <= Re(z)^2 - 43, where
    exp(-z^2) is negligible against F and w = exp(-z^2) + (2i/sqrt(pi)) F(z)
    splits the exponentially small and the algebraic parts exactly.
  * Taylor steps off the real axis (derivative recursion
    w^(k+1) = -2 z w^(k) - 2 k w^(k-1)) for tiny Im z.
  * Maclaurin series near the origin.

All functions are pure; none keeps mutable state.  Finite inputs never
produce NaN: lower-half-plane arguments whose exp(-z^2) term exceeds the
double range raise OverflowError instead of returning a wrong value.
"""

from __future__ import annotations

import cmath
import math

__all__ = ["dawson", "faddeeva", "voigt_k", "voigt_l"]

_SQRTPI = math.sqrt(math.pi)
_INV_SQRTPI = 1.0 / _SQRTPI
_TWO_INV_SQRTPI = 2.0 / _SQRTPI

# Chiarella-Reichel step and node window (e^{-7.6^2} ~ 8e-26).
_CR_H = 0.42
_CR_WINDOW = 7.6
# exp(y^2 - x^2) overflows past this; used by the lower-half reflection.
_EXP_ARG_MAX = 708.0


def _check_finite_complex(z: complex, name: str) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name}: argument must be finite, got {z!r}")
    return z


def _cr_sum(x: float, y: float) -> complex:
    """Trapezoid-plus-pole-correction evaluation of w(x+iy).

    Valid for 0 <= x <= 7.5 and 0 <= y < pi/h (used up to y = 7).  Exact on
    the real axis: the node sum is purely imaginary there and the pole
    correction reduces to exp(-x^2) - i exp(-x^2) cot(phi/2).
    """
    h = _CR_H
    fr = x / h - math.floor(x / h)
    theta = 0.0 if 0.25 <= fr < 0.75 else 0.5
    z = complex(x, y)
    zz = z * z
    # Symmetric node set, paired (+t, -t): each pair contributes
    # e^{-t^2} * 2z/(z^2 - t^2), whose contribution to Im w carries x as an
    # explicit factor, so Im w keeps relative accuracy for tiny x.
    acc = 0j
    if theta == 0.0:
        acc += 1.0 / z
    k = 0
    while True:
        t = (k + theta) * h if theta else (k + 1) * h
        if t > _CR_WINDOW:
            break
        acc += math.exp(-t * t) * 2.0 * z / (zz - t * t)
        k += 1
    acc *= complex(0.0, h / math.pi)
    # Pole-image correction -2 e^{-z^2} q/(1-q) with q = exp(2 pi i (z/h - theta)).
    # The grid offset keeps the phase in [pi/2, pi], so 1-q never cancels; near
    # phase +-pi the complement u = 1/2 - |offset| equals fr (or 1-fr) exactly,
    # keeping Im q relatively accurate for tiny x.
    delta = 2.0 * math.pi * y / h
    e = math.exp(-delta)
    if theta == 0.0:
        rr = fr if fr < 0.5 else fr - 1.0
        cphi = math.cos(2.0 * math.pi * rr)
        sphi = math.sin(2.0 * math.pi * rr)
    else:
        u = fr if fr < 0.25 else 1.0 - fr
        cphi = -math.cos(2.0 * math.pi * u)
        sphi = math.sin(2.0 * math.pi * u) if fr >= 0.75 else -math.sin(2.0 * math.pi * u)
    q = complex(e * cphi, e * sphi)
    one_minus_q = complex(1.0 - e * cphi, -e * sphi)
    corr = -2.0 * cmath.exp(-zz) * (q / one_minus_q)
    return acc + corr


def _laplace_cf(z: complex, n: int = 40) -> complex:
    """Laplace continued fraction for w(z); machine precision for |z| >~ 7
    when Im z is not small (the near-axis cases use other branches)."""
    r = 0j
    for k in range(n, 0, -1):
        r = (0.5 * k) / (z - r)
    return complex(0.0, _INV_SQRTPI) / (z - r)


def _dawson_maclaurin(z: complex) -> complex:
    # F(z) = sum_n (-1)^n 2^n z^(2n+1) / (1*3*...*(2n+1))
    term = z
    acc = z
    z2 = z * z
    for n in range(1, 80):
        term *= -2.0 * z2 / (2 * n + 1)
        acc += term
        if abs(term) <= 1e-18 * abs(acc):
            break
    return acc


def _dawson_asymptotic(z: complex) -> complex:
    # F(z) = sum_k (2k-1)!! / (2^(k+1) z^(2k+1)); truncated series reaches
    # double precision for |z| >= 7.  exp(-z^2) is added by the caller where
    # it is not negligible.
    z2 = z * z
    term = 0.5 / z
    acc = term
    for k in range(1, 60):
        term *= (2 * k - 1) / (2.0 * z2)
        acc += term
        if abs(term) <= 1e-18 * abs(acc):
            break
    return acc


def _dawson_real(x: float) -> float:
    ax = abs(x)
    if ax <= 1.0:
        return _dawson_maclaurin(complex(x, 0.0)).real
    if ax > 7.5:
        return _dawson_asymptotic(complex(x, 0.0)).real
    val = 0.5 * _SQRTPI * _cr_sum(ax, 0.0).imag
    return val if x > 0 else -val


def _taylor_from_axis(x: float, y: float) -> complex:
    """w(x+iy) from the real-axis anchor, for 0 < y < 1e-3 and x <= 7.5.

    The derivative recursion is mildly unstable at large x but the
    instability is damped by y^k; with 2*x*y <= 0.015 a handful of terms
    reaches machine precision.
    """
    e0 = math.exp(-x * x)
    f0 = _dawson_real(x)
    w0 = complex(e0, _TWO_INV_SQRTPI * f0)
    w1 = complex(-2.0 * x * e0, _TWO_INV_SQRTPI * (1.0 - 2.0 * x * f0))
    iy = complex(0.0, y)
    acc = w0 + w1 * iy
    p = iy
    wm, wc = w0, w1
    for k in range(1, 12):
        wn = -2.0 * x * wc - 2.0 * k * wm
        p *= iy / (k + 1)
        t = wn * p
        acc += t
        if abs(t) <= 1e-17 * abs(acc):
            break
        wm, wc = wc, wn
    return acc


def _erfcx_real(y: float) -> float:
    """exp(y^2) erfc(y) for y >= 0."""
    if y == 0.0:
        return 1.0
    if y > 7.0:
        # asymptotic series, alternating in 1/(2y^2)
        y2 = 2.0 * y * y
        term = 1.0
        acc = 1.0
        for k in range(1, 40):
            term *= -(2 * k - 1) / y2
            acc += term
            if abs(term) <= 1e-18 * abs(acc):
                break
        return acc / (y * _SQRTPI)
    # midpoint trapezoid of the Poisson-kernel integral; every term positive
    h = 0.5
    acc = 0.0
    k = 0
    y2 = y * y
    while True:
        t = (k + 0.5) * h
        if t > _CR_WINDOW:
            break
        acc += math.exp(-t * t) / (y2 + t * t)
        k += 1
    val = (2.0 * h * y / math.pi) * acc
    d = 2.0 * math.pi * y / h
    val += 2.0 * math.exp(y * y - d) / (1.0 + math.exp(-d))
    return val


def _faddeeva_quadrant(x: float, y: float) -> complex:
    # x >= 0, y >= 0
    if x == 0.0:
        return complex(_erfcx_real(y), 0.0)
    if x <= 7.5:
        if y < 1e-3:
            return _taylor_from_axis(x, y)
        if y <= 7.0:
            return _cr_sum(x, y)
        return _laplace_cf(complex(x, y))
    if y * y <= x * x - 43.0:
        # exp(-z^2) <= 2e-19 * |F(z)| here, so the split is exact per component
        z = complex(x, y)
        return cmath.exp(-z * z) + complex(0.0, _TWO_INV_SQRTPI) * _dawson_asymptotic(z)
    return _laplace_cf(complex(x, y))


def faddeeva(z: complex) -> complex:
    """Complex error function w(z) = exp(-z^2) erfc(-iz).

    Satisfies w(-z) = 2 exp(-z^2) - w(z) and, through the Dawson relation
    F(z) = (i sqrt(pi)/2)(exp(-z^2) - w(z)), ties together every special
    function in this module.

    Raises OverflowError for lower-half-plane arguments where the
    2 exp(-z^2) reflection term exceeds the double range (never returns a
    silently wrong value there).  Near the zeros of w (all in the lower
    half-plane) accuracy is absolute at the 2 exp(-z^2) scale rather than
    relative; everywhere else both components are good to 1e-12 relative
    on |Re z|, |Im z| <= 30.
    """
    z = _check_finite_complex(z, "faddeeva")
    x, y = z.real, z.imag
    if y < 0.0:
        if y * y - x * x > _EXP_ARG_MAX:
            raise OverflowError(
                "faddeeva: 2*exp(-z^2) exceeds double range for "
                f"z={z!r} (Im z < 0); result is not representable"
            )
        # w(z) = 2 exp(-z^2) - w(-z); -z = (-x, -y) lies in the upper half
        w_ref = _faddeeva_quadrant(abs(x), -y)
        if x > 0.0:
            w_ref = w_ref.conjugate()
        return 2.0 * cmath.exp(-z * z) - w_ref
    if x < 0.0:
        return _faddeeva_quadrant(-x, y).conjugate()
    return _faddeeva_quadrant(x, y)


def dawson(z: complex) -> complex:
    """Dawson integral F(z) = exp(-z^2) * integral_0^z exp(t^2) dt.

    Odd, entire, real on the real axis.  Computed from a Maclaurin series
    near the origin, a Taylor step off the real axis where the
    F(z) = (i sqrt(pi)/2)(exp(-z^2) - w(z)) identity would cancel, the
    asymptotic series in the large-|Re z| strip, and the identity
    elsewhere.  Raises OverflowError where F itself exceeds the double
    range (large |Im z| with |Im z|^2 - |Re z|^2 > ~708).
    """
    z = _check_finite_complex(z, "dawson")
    x, y = z.real, z.imag
    if y == 0.0:
        return complex(_dawson_real(x), 0.0)
    # reduce to the first quadrant: F(-z) = -F(z), F(conj z) = conj F(z)
    if x < 0.0:
        return -dawson(-z)
    if y < 0.0:
        return dawson(z.conjugate()).conjugate()
    if abs(z) <= 1.2:
        return _dawson_maclaurin(z)
    if y <= 0.1 and x <= 7.5:
        # Taylor off the axis with F^(k+1) = -2x F^(k) - 2k F^(k-1)
        f0 = _dawson_real(x)
        f1 = 1.0 - 2.0 * x * f0
        iy = complex(0.0, y)
        acc = complex(f0, 0.0) + f1 * iy
        p = iy
        fm, fc = f0, f1
        for k in range(1, 40):
            fn = -2.0 * x * fc - 2.0 * k * fm
            p *= iy / (k + 1)
            t = fn * p
            acc += t
            if abs(t) <= 1e-18 * abs(acc):
                break
            fm, fc = fc, fn
        return acc
    if x > 7.5 and y * y <= x * x - 43.0:
        return _dawson_asymptotic(z)
    if y * y - x * x > _EXP_ARG_MAX:
        raise OverflowError(
            f"dawson: F(z) exceeds the double range for z={z!r}"
        )
    w = _faddeeva_quadrant(x, y)
    return 0.5j * _SQRTPI * (cmath.exp(-z * z) - w)


def voigt_k(a: float, b: float) -> float:
    """Real Voigt function K(a,b) = Re w(a+ib), defined for b > 0.

    K(a,b) = (1/sqrt(pi)) * integral_0^inf exp(-t^2/4) exp(-bt) cos(at) dt.
    """
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"voigt_k: arguments must be finite, got ({a!r}, {b!r})")
    if b <= 0.0:
        raise ValueError(f"voigt_k: requires b > 0, got b={b!r}")
    return _faddeeva_quadrant(abs(a), b).real


def voigt_l(a: float, b: float) -> float:
    """Imaginary Voigt function L(a,b) = Im w(a+ib), defined for b > 0.

    L(a,b) = (1/sqrt(pi)) * integral_0^inf exp(-t^2/4) exp(-bt) sin(at) dt;
    odd in a, with L(0,b) = 0 exactly.
    """
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"voigt_l: arguments must be finite, got ({a!r}, {b!r})")
    if b <= 0.0:
        raise ValueError(f"voigt_l: requires b > 0, got b={b!r}")
    val = _faddeeva_quadrant(abs(a), b).imag
    return val if a >= 0 else -val
