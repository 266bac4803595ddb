# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Double-double kernels.

Error-free transformations on IEEE doubles (Dekker splitting, Knuth
two-sum) working elementwise on floats and numpy arrays. They are used
to reduce phases h*Li(n) modulo 1 without losing the absolute
accuracy of Li, and to carry escalated values as (hi, lo) pairs.
"""

import math
import numpy

_SPLITTER = 134217729.0  # 2^27+1, exact in double
EPS = 2.0**-53
"""Unit roundoff of IEEE double precision."""


def split(a):
    """Dekker split: a -> (ahi, alo) with ahi+alo == a, each on 26 bits."""
    c = _SPLITTER * a
    abig = c - a
    ahi = c - abig
    alo = a - ahi
    return ahi, alo


def two_sum(a, b):
    """Return (s, err) with s+err == a+b exactly."""
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def two_prod(a, b):
    """Return (p, err) with p+err == a*b exactly."""
    p = a * b
    ahi, alo = split(a)
    bhi, blo = split(b)
    err = ((ahi*bhi - p) + ahi*blo + alo*bhi) + alo*blo
    return p, err


def dd_add(ahi, alo, bhi, blo):
    """Add two double-double numbers, return the normalised (hi, lo) pair."""
    s, e = two_sum(ahi, bhi)
    t, f = two_sum(alo, blo)
    e += t
    s, e = two_sum(s, e)
    e += f
    return two_sum(s, e)


def frac_of_product(h, hi, lo=0.0):
    """
    Return the fractional part of h*(hi+lo) in [0, 1).

    `h` is an integer (or integer array) with |h| < 2^53, `hi` and
    `lo` floats or arrays. The integer part of the product is removed
    exactly before the low order terms are added, so the absolute
    error is a few ulps of 1 plus |h| times the error of hi+lo.
    """
    h = numpy.asarray(h, dtype=numpy.float64)
    p, e = two_prod(h, numpy.asarray(hi, dtype=numpy.float64))
    r = p - numpy.rint(p)
    t = r + (e + h * lo)
    frac = t - numpy.floor(t)
    # t = -tiny rounds to 1.0
    frac = numpy.where(frac >= 1.0, 0.0, frac)
    if frac.ndim == 0:
        return float(frac)
    return frac


def unit_phase(h, hi, lo=0.0):
    """Return e(h*(hi+lo)) = exp(2 pi i h (hi+lo))."""
    return numpy.exp(2j * numpy.pi * frac_of_product(h, hi, lo))


def complex_fsum(values):
    """Correctly rounded sum of complex `values`, independent of their order."""
    values = numpy.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(values.real), math.fsum(values.imag))
