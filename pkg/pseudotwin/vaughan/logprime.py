# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""Exact integer combinations of logarithms of primes."""

import math

from pseudotwin.arith.sieve import factorize

__all__ = ['LogPrimeVector']


class LogPrimeVector(object):

    """
    The real number Σ_p m_p log p, represented exactly by the sparse
    map {p: m_p} of integer coefficients.

    Zero coefficients are never stored, so the zero vector is the
    empty map.
    """

    def __init__(self, coefficients=None):
        self.coefficients = {}
        if coefficients is not None:
            for p, m in coefficients.items():
                if m != 0:
                    self.coefficients[int(p)] = int(m)

    @classmethod
    def log(cls, n, factors=None):
        """log n, from the factorisation of n."""
        if factors is None:
            factors = factorize(n)
        return cls(factors)

    @classmethod
    def mangoldt(cls, n, factors=None):
        """Λ(n): log p if n = p^k, else zero."""
        if factors is None:
            factors = factorize(n)
        if len(factors) == 1:
            return cls({list(factors)[0]: 1})
        return cls()

    def __repr__(self):
        terms = ' + '.join('%d*log(%d)' % (self.coefficients[p], p) for p in sorted(self.coefficients))
        return 'LogPrimeVector(%s)' % (terms if terms else '0')

    def __eq__(self, other):
        return isinstance(other, LogPrimeVector) and self.coefficients == other.coefficients

    def __ne__(self, other):
        return not self == other

    def __bool__(self):
        return len(self.coefficients) > 0

    __hash__ = None

    def _combine(self, other, sign):
        result = dict(self.coefficients)
        for p, m in other.coefficients.items():
            result[p] = result.get(p, 0) + sign * m
        return LogPrimeVector(result)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return LogPrimeVector({p: -m for p, m in self.coefficients.items()})

    def __mul__(self, factor):
        if int(factor) != factor:
            raise TypeError('log-prime vectors scale by integers only, got %r' % factor)
        return LogPrimeVector({p: int(factor) * m for p, m in self.coefficients.items()})

    __rmul__ = __mul__

    def is_zero(self):
        return not self

    @property
    def value(self):
        """The real number represented, with correctly rounded summation."""
        return math.fsum(m * math.log(p) for p, m in self.coefficients.items())
