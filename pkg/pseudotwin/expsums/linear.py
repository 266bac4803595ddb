# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Exponential sums with a smooth phase.

- Type I sums Σ_{N<n≤N1} e(h Li(nℓ)) against (N|h|ℓ)^{1/2} log(Nℓ)
- the Weyl-differenced sums S_0(q;k) = Σ_{L<ℓ≤2L} e(h[Li(ℓk) - Li(ℓ(k+q))])
  against (L h q)^{1/2}
- the generic first derivative test bound N Δ^{1/2} + Δ^{-1/2} for
  Σ e(f(n)) when |f''| is of size Δ

Phases e(h Li(m)) are obtained by reducing h Li(m) modulo 1 with
error-free products, so that only the absolute error of Li enters the
phase.
"""

import math
import logging
import numpy

from pseudotwin.core import desk_limit
from pseudotwin.core.parallel import split, block_map
from pseudotwin.specfun.li import li_array, li_derivative
from pseudotwin.specfun.dd import frac_of_product, unit_phase, dd_add, complex_fsum
from .report import BoundReport

__all__ = ['phase_table', 'exponential_sum', 'van_der_corput_report',
           'linear_sum', 'linear_bound_report', 'second_derivative_window',
           's0_terms', 's0_sum', 's0_reflection', 's0_second_derivative_window']

_log = logging.getLogger(__name__)

max_frequency = 10**6
"""Largest |h| accepted by the evaluators."""


def _check_frequency(h):
    if abs(h) > max_frequency:
        raise OverflowError('frequency |h| = %d beyond %d' % (abs(h), max_frequency))


def _check_argument(m):
    if m > desk_limit:
        raise OverflowError('Li argument %d beyond %d' % (m, desk_limit))


def phase_table(h, m, precision='double'):
    """Return the array e(h Li(m)) for the integer array `m` >= 2."""
    hi, lo, _ = li_array(numpy.asarray(m, dtype=numpy.float64), precision)
    return unit_phase(h, hi, lo)


def exponential_sum(f, rng, nthreads=None):
    """
    Return Σ_{N<n≤N1} e(f(n)) over the `DyadicRange` `rng`.

    `f` maps an integer array to the array of phases, either as a
    float array or as a (hi, lo) pair of arrays.
    """
    def block(bounds):
        n = numpy.arange(bounds[0], bounds[1], dtype=numpy.int64)
        phase = f(n)
        if isinstance(phase, tuple):
            hi, lo = phase
        else:
            hi, lo = phase, 0.0
        return complex_fsum(unit_phase(1, hi, lo))

    return complex_fsum(block_map(block, split(rng.N + 1, rng.N1 + 1), nthreads))


def van_der_corput_report(f, rng, delta, nthreads=None):
    """
    Return the `BoundReport` of Σ e(f(n)) over `rng` against the
    second derivative test N Δ^{1/2} + Δ^{-1/2}.
    """
    if not delta > 0:
        raise ValueError('delta must be positive, got %s' % delta)
    value = exponential_sum(f, rng, nthreads)
    bound = rng.N * delta**0.5 + delta**-0.5
    return BoundReport(abs(value), bound, {'N': rng.N, 'N1': rng.N1, 'delta': delta}, value)


# Type I sums

def linear_sum(h, ell, rng, precision='double', nthreads=None):
    """
    Return the Type I sum Σ_{N<n≤N1} e(h Li(nℓ)).

    For h = 0 the sum is exactly N1 - N. Raise `OverflowError` when
    |h| > 10^6 or 2Nℓ > 10^10.
    """
    h, ell = int(h), int(ell)
    if ell < 1:
        raise ValueError('l must be >= 1, got %d' % ell)
    _check_frequency(h)
    _check_argument(2 * rng.N * ell)
    if h == 0:
        return complex(rng.N1 - rng.N)

    def block(bounds):
        m = numpy.arange(bounds[0], bounds[1], dtype=numpy.int64) * ell
        return complex_fsum(phase_table(h, m, precision))

    value = complex_fsum(block_map(block, split(rng.N + 1, rng.N1 + 1), nthreads))
    assert abs(value) <= (rng.N1 - rng.N) * (1 + 1e-12), 'triangle inequality violated: %s' % value
    return value


def linear_bound_report(h, ell, rng, precision='double', nthreads=None):
    """Compare |linear_sum| with (N|h|ℓ)^{1/2} log(Nℓ)."""
    if h == 0:
        raise ValueError('the Type I bound needs h != 0')
    value = linear_sum(h, ell, rng, precision, nthreads)
    bound = (rng.N * abs(h) * ell)**0.5 * math.log(rng.N * ell)
    return BoundReport(abs(value), bound, {'h': h, 'l': ell, 'N': rng.N, 'N1': rng.N1}, value)


def _second_difference(fprime, x, rel_step=1e-4):
    step = x * rel_step
    return (fprime(x + step) - fprime(x - step)) / (2 * step)


def second_derivative_window(h, ell, rng, samples=64):
    """
    Return (c, C), the extreme values of |f''(x)|/Δ over N <= x <= N1
    for f(x) = h Li(xℓ) and Δ = hℓ/(N log^2(Nℓ)).

    f'' is obtained by central finite differences of f'(x) = hℓ/log(xℓ).
    """
    h, ell = abs(int(h)), int(ell)
    if h == 0:
        raise ValueError('the window needs h != 0')
    x = numpy.linspace(rng.N, rng.N1, samples)
    second = numpy.abs(_second_difference(lambda t: h * ell * li_derivative(t * ell), x))
    delta = h * ell / (rng.N * math.log(rng.N * ell)**2)
    ratio = second / delta
    return float(ratio.min()), float(ratio.max())


# Weyl-differenced sums

def _check_s0(h, q, k, L):
    if h < 1:
        raise ValueError('h must be positive, got %d' % h)
    if L < 10:
        raise ValueError('L must be >= 10, got %d' % L)
    if q == 0:
        raise ValueError('q must be nonzero')
    if k < 1 or k + q < 1:
        raise ValueError('k and k+q must be positive, got k=%d, q=%d' % (k, q))
    _check_frequency(h)
    _check_argument(2 * L * max(k, k + q))


def s0_terms(h, q, k, ells, precision='double'):
    """Return the array e(h[Li(ℓk) - Li(ℓ(k+q))]) over the integer array `ells`."""
    ells = numpy.asarray(ells, dtype=numpy.int64)
    hi1, lo1, _ = li_array((ells * k).astype(numpy.float64), precision)
    hi2, lo2, _ = li_array((ells * (k + q)).astype(numpy.float64), precision)
    dhi, dlo = dd_add(hi1, lo1, -hi2, -lo2)
    return numpy.exp(2j * numpy.pi * frac_of_product(h, dhi, dlo))


def s0_sum(h, q, k, L, precision='double'):
    """
    Return (S_0(q;k), report) where

        S_0(q;k) = Σ_{L<ℓ≤2L} e(h[Li(ℓk) - Li(ℓ(k+q))])

    and the report compares |S_0| with (L h |q|)^{1/2}.
    """
    h, q, k, L = int(h), int(q), int(k), int(L)
    _check_s0(h, q, k, L)
    value = complex_fsum(s0_terms(h, q, k, numpy.arange(L + 1, 2 * L + 1), precision))
    assert abs(value) <= L * (1 + 1e-12), 'triangle inequality violated: %s' % value
    bound = (L * h * abs(q))**0.5
    return value, BoundReport(abs(value), bound, {'h': h, 'q': q, 'k': k, 'L': L}, value)


def s0_reflection(h, q, k, L, precision='double'):
    """Return (|S_0(q;k)|, |S_0(-q;k+q)|), which must coincide."""
    direct, _ = s0_sum(h, q, k, L, precision)
    reflected, _ = s0_sum(h, -q, k + q, L, precision)
    return abs(direct), abs(reflected)


def s0_second_derivative_window(h, q, k, L, samples=64):
    """
    Return (c, C), the extreme values of |f''(x)|/Δ over L <= x <= 2L
    for f(x) = h[Li(xk) - Li(x(k+q))] and Δ = hq/L.
    """
    h, q, k, L = int(h), int(q), int(k), int(L)
    _check_s0(h, q, k, L)

    def fprime(t):
        return h * (k * li_derivative(t * k) - (k + q) * li_derivative(t * (k + q)))

    x = numpy.linspace(L, 2 * L, samples)
    second = numpy.abs(_second_difference(fprime, x, 1e-3))
    delta = h * abs(q) / float(L)
    ratio = second / delta
    return float(ratio.min()), float(ratio.max())
