# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Offset logarithmic integral Li(x) and its inverse iL(y).

Li(x) is evaluated through the exponential integral,

    Li(x) = Ei(log x) - Ei(log 2),

in double precision by default (`scipy.special.expi`). Values that
must be decided against an integer are escalated to double-double
width, evaluated with a private 106-bit mpmath context and returned
as a (hi, lo) pair.
"""

import math
import logging
import numpy
from scipy.special import expi
from scipy.integrate import quad
from mpmath.ctx_mp import MPContext

from pseudotwin.core.utils import ConvergenceError
from .dd import EPS

__all__ = ['ExtReal', 'li_from_2', 'li_array', 'escalate_li', 'inverse_li',
           'inverse_li_array', 'floor_inverse_li', 'floor_inverse_li_array',
           'li_derivative', 'li_quadrature']

_log = logging.getLogger(__name__)

# These module level variables can be tweaked at run time
guard_band = 1e-6
"""Distance to an integer below which a floor is escalated to double-double."""
max_iterations = 60
"""Iteration cap of the Newton solver for iL."""
inverse_tolerance = 1e-9
"""Target of |Li(p) - y| for iL; double results above it are polished at double-double width."""

_MP = MPContext()
_MP.prec = 106
_DD_RELATIVE_ERROR = 2.0**-96
_EI_LOG2 = float(expi(math.log(2.0)))


class ExtReal(object):

    """
    A real value with a guaranteed absolute error bound.

    `value` is the double nearest to the quantity. When the value
    comes from an escalated evaluation, `lo` holds the double-double
    tail so that value+lo carries about 106 bits.
    """

    def __init__(self, value, abs_err=0.0, lo=0.0, escalated=False):
        if not (math.isfinite(abs_err) and abs_err >= 0):
            raise ValueError('invalid absolute error %s' % abs_err)
        self.value = float(value)
        self.abs_err = float(abs_err)
        self.lo = float(lo)
        self.escalated = escalated

    def __float__(self):
        return self.value

    def __repr__(self):
        return 'ExtReal(value={0.value!r}, abs_err={0.abs_err!r}, lo={0.lo!r}, ' \
            'escalated={0.escalated})'.format(self)

    def contains(self, other):
        """True if `other` lies within the error bound of self."""
        return abs((self.value - float(other)) + self.lo) <= self.abs_err

    def floor(self):
        """
        Return (k, ambiguous) where k is the floor of value+lo and
        `ambiguous` is True when an integer lies within `abs_err`.
        """
        k = math.floor(self.value)
        d = (self.value - k) + self.lo
        if d < 0:
            k -= 1
            d += 1
        elif d >= 1:
            k += 1
            d -= 1
        ambiguous = d < self.abs_err or (1 - d) <= self.abs_err
        return int(k), ambiguous


def _check_argument(x):
    if not math.isfinite(x):
        raise OverflowError('non-finite argument %s' % x)
    if x < 2:
        raise ValueError('Li(x) is defined for x >= 2, got %s' % x)


def _double_error(x, ei):
    # Rounding of log(x) moves Ei(log x) by about x*eps, the series and
    # continued fraction of expi are good to a few ulps.
    return EPS * (32 * (numpy.abs(ei) + abs(_EI_LOG2)) + 2 * x)


def _li_dd(x):
    v = _MP.li(_MP.mpf(x), offset=True)
    hi = float(v)
    lo = float(v - hi)
    return hi, lo, _DD_RELATIVE_ERROR * (abs(hi) + 2.0)


def li_from_2(x, precision='double'):
    """
    Return Li(x), the integral of 1/log t from 2 to `x`, as an
    `ExtReal`.

    `precision` is either 'double' or 'dd' (double-double width). Only
    'dd' guarantees an absolute error of 1e-9 over the whole range: the
    double path reports its own bound in `abs_err`, which grows like
    x*eps and exceeds 1e-9 well before x = 1e10.
    """
    x = float(x)
    _check_argument(x)
    if x == 2:
        return ExtReal(0.0)
    if precision == 'dd':
        hi, lo, err = _li_dd(x)
        return ExtReal(hi, err, lo, escalated=True)
    elif precision == 'double':
        ei = float(expi(math.log(x)))
        return ExtReal(ei - _EI_LOG2, float(_double_error(x, ei)))
    else:
        raise ValueError('unknown precision %s' % precision)


def li_array(x, precision='double'):
    """
    Vectorised Li over the array `x`.

    Return the arrays (hi, lo, abs_err). In double precision `lo` is
    zero.
    """
    x = numpy.asarray(x, dtype=numpy.float64)
    if x.size > 0:
        if not numpy.all(numpy.isfinite(x)):
            raise OverflowError('non-finite argument')
        if x.min() < 2:
            raise ValueError('Li(x) is defined for x >= 2, got %s' % x.min())
    if precision == 'dd':
        return escalate_li(x)
    elif precision != 'double':
        raise ValueError('unknown precision %s' % precision)
    ei = expi(numpy.log(x))
    hi = ei - _EI_LOG2
    hi[x == 2] = 0.0
    err = _double_error(x, ei)
    err[x == 2] = 0.0
    return hi, numpy.zeros_like(hi), err


def escalate_li(x):
    """Evaluate Li at double-double width over the array `x`, return (hi, lo, abs_err)."""
    x = numpy.asarray(x, dtype=numpy.float64)
    hi = numpy.empty_like(x)
    lo = numpy.empty_like(x)
    err = numpy.empty_like(x)
    for i, xi in enumerate(x.flat):
        if xi == 2:
            hi.flat[i], lo.flat[i], err.flat[i] = 0.0, 0.0, 0.0
        else:
            hi.flat[i], lo.flat[i], err.flat[i] = _li_dd(float(xi))
    return hi, lo, err


def li_derivative(x):
    """Li'(x) = 1 / log x."""
    return 1.0 / numpy.log(x)


def li_quadrature(x, epsabs=1e-12):
    """
    Li(x) by adaptive quadrature of 1/log t over [2, x].

    This is a test oracle, not the production path. The interval is
    split geometrically to keep each piece well resolved.
    """
    x = float(x)
    _check_argument(x)
    edges = [2.0]
    while edges[-1] * 4 < x:
        edges.append(edges[-1] * 4)
    edges.append(x)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        value, _ = quad(lambda t: 1.0 / math.log(t), a, b, epsabs=epsabs, epsrel=1e-14, limit=200)
        total += value
    return total


# Inverse

def _bracket(y):
    return 2.0, 4 * y * math.log(y + 3) + 10


def _newton_bisection(func, lo, hi, x, tol, maxit):
    """
    Safeguarded Newton iteration for an increasing function on the
    bracket [lo, hi]. `func(x)` returns (f, df). Steps that leave the
    bracket are replaced by bisection.

    Return the root and the last residual.
    """
    f, df = func(x)
    for _ in range(maxit):
        if abs(f) <= tol(x):
            return x, f
        if f < 0:
            lo = x
        else:
            hi = x
        step = f / df
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if x_new == x:
            return x, f
        x = x_new
        f, df = func(x)
    if abs(f) <= tol(x):
        return x, f
    raise ConvergenceError('Newton iteration did not converge after %d steps (x=%r, f=%r)' % (maxit, x, f))


def inverse_li(y, precision='double'):
    """
    Return iL(y), the p >= 2 with Li(p) = y, as an `ExtReal`.

    Newton iteration from p0 = max(3, y log max(y,3)) with bisection
    fallback. The double result is polished against the escalated Li
    when `precision='dd'` or when the error bound of the double Li
    exceeds `inverse_tolerance`, so that |Li(p) - y| <= 1e-9 up to the
    granularity of the returned double.
    """
    y = float(y)
    if not math.isfinite(y):
        raise OverflowError('non-finite argument %s' % y)
    if y < 0:
        raise ValueError('iL(y) is defined for y >= 0, got %s' % y)
    if precision not in ('double', 'dd'):
        raise ValueError('unknown precision %s' % precision)
    if y == 0:
        return ExtReal(2.0)

    def func(p):
        li = li_from_2(p)
        return li.value - y, 1.0 / math.log(p)

    def tol(p):
        return li_from_2(p).abs_err

    lo, hi = _bracket(y)
    p0 = max(3.0, y * math.log(max(y, 3.0)))
    p0 = min(max(p0, lo), hi)
    p, residual = _newton_bisection(func, lo, hi, p0, tol, max_iterations)
    err = li_from_2(p).abs_err
    escalated = False
    if precision == 'dd' or err > inverse_tolerance:
        escalated = True
        for _ in range(4):
            hi_, lo_, err = _li_dd(p)
            residual = (hi_ - y) + lo_
            p_new = p - residual * math.log(p)
            if p_new == p:
                break
            p = p_new
        hi_, lo_, err = _li_dd(p)
        residual = (hi_ - y) + lo_
    abs_err = (abs(residual) + err) * math.log(p) + float(numpy.spacing(p))
    return ExtReal(p, abs_err, escalated=escalated)


def inverse_li_array(y):
    """
    Vectorised iL over the array `y` (double precision).

    All entries are iterated in lockstep with the same safeguarded
    Newton scheme as `inverse_li`. Return (p, abs_err).
    """
    y = numpy.asarray(y, dtype=numpy.float64)
    if y.size > 0 and y.min() < 0:
        raise ValueError('iL(y) is defined for y >= 0')
    lo = numpy.full_like(y, 2.0)
    hi = 4 * y * numpy.log(y + 3) + 10
    p = numpy.maximum(3.0, y * numpy.log(numpy.maximum(y, 3.0)))
    p = numpy.minimum(numpy.maximum(p, lo), hi)
    done = y == 0
    p[done] = 2.0
    for _ in range(max_iterations):
        active = ~done
        if not active.any():
            break
        pa = p[active]
        li, _, err = li_array(pa)
        f = li - y[active]
        converged = numpy.abs(f) <= err
        lo_a = numpy.where(f < 0, pa, lo[active])
        hi_a = numpy.where(f >= 0, pa, hi[active])
        new = pa - f * numpy.log(pa)
        outside = (new <= lo_a) | (new >= hi_a)
        new[outside] = 0.5 * (lo_a[outside] + hi_a[outside])
        stalled = new == pa
        new[converged] = pa[converged]
        lo[active], hi[active], p[active] = lo_a, hi_a, new
        idx = numpy.flatnonzero(active)
        done[idx[converged | stalled]] = True
    if not done.all():
        raise ConvergenceError('vectorised Newton iteration did not converge for %d entries' % (~done).sum())
    li, _, err = li_array(numpy.maximum(p, 2.0))
    residual = numpy.abs(li - y)
    abs_err = (residual + err) * numpy.log(p) + numpy.spacing(p)
    abs_err[y == 0] = 0.0
    return p, abs_err


def _escalated_floor(n, estimate):
    # floor(iL(n)) is the largest integer m with Li(m) <= n
    m = int(round(estimate))
    hi, lo, err = _li_dd(float(m))
    if m == 2:
        hi, lo, err = 0.0, 0.0, 0.0
    residual = (hi - n) + lo
    ambiguous = abs(residual) < err
    if ambiguous:
        _log.warning('ambiguous floor of iL(%d) near %d (residual %g, error %g)', n, m, residual, err)
    if residual <= 0:
        return m, ambiguous
    return m - 1, ambiguous


def floor_inverse_li(n):
    """
    Return (floor(iL(n)), ambiguous) for the integer `n` >= 0.

    When iL(n) falls within `guard_band` of an integer, the floor is
    decided by comparing the escalated Li at the nearby integer with
    `n`. `ambiguous` is True only if even that comparison cannot
    separate the two.
    """
    n = int(n)
    if n < 0:
        raise ValueError('n must be non-negative, got %d' % n)
    if n == 0:
        return 2, False
    p = inverse_li(n)
    k = math.floor(p.value)
    d = p.value - k
    band = max(guard_band, p.abs_err)
    if band <= d <= 1 - band:
        return int(k), False
    _log.debug('escalating floor of iL(%d) = %r', n, p.value)
    return _escalated_floor(n, p.value)


def floor_inverse_li_array(n):
    """
    Vectorised `floor_inverse_li` over the integer array `n`.

    Return the array of floors and the boolean array of ambiguity
    flags. Only entries within the guard band are escalated.
    """
    n = numpy.asarray(n, dtype=numpy.int64)
    p, abs_err = inverse_li_array(n.astype(numpy.float64))
    k = numpy.floor(p)
    d = p - k
    band = numpy.maximum(guard_band, abs_err)
    near = (d < band) | (d > 1 - band)
    near[n == 0] = False
    k[n == 0] = 2
    floors = k.astype(numpy.int64)
    ambiguous = numpy.zeros(n.shape, dtype=bool)
    for i in numpy.flatnonzero(near):
        floors[i], ambiguous[i] = _escalated_floor(int(n[i]), float(p[i]))
    return floors, ambiguous
