# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Segmented sieve of Eratosthenes.

`sieve_slice(lo, hi)` tabulates primality, the von Mangoldt function
Λ, the Möbius function μ, the smallest prime factor and the divisor
count over the half-open range [lo, hi). The tables are built with
strided numpy updates, one pass per base prime p ≤ sqrt(hi).
"""

import math
import logging
import functools
import numpy
from sympy import factorint, divisors as sympy_divisors
from sympy.ntheory import divisor_count as sympy_divisor_count

from pseudotwin.core import desk_limit
from pseudotwin.core.utils import check_budget

__all__ = ['ArithSlice', 'DyadicRange', 'sieve_slice', 'sieve_primes',
           'primes_between', 'base_primes', 'iter_slices', 'tabulate', 'chebyshev_psi',
           'factorize', 'divisors', 'divisor_count']

_log = logging.getLogger(__name__)

# These module level variables can be tweaked at run time
segment_size = 2**22
"""Largest number of integers in a single slice."""


@functools.lru_cache(maxsize=8)
def _base_primes(limit):
    if limit < 2:
        return numpy.array([], dtype=numpy.int64)
    is_prime = numpy.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p*p: limit+1: p] = False
    return numpy.flatnonzero(is_prime).astype(numpy.int64)


def base_primes(limit):
    """Return the sorted array of primes <= `limit` (simple sieve, cached)."""
    primes = _base_primes(int(limit))
    primes.flags.writeable = False
    return primes


def _check_range(lo, hi):
    if hi <= lo:
        raise ValueError('inverted or empty range [%d, %d)' % (lo, hi))
    if lo < 1:
        raise ValueError('range must start at 1 or above, got %d' % lo)
    if hi - 1 > desk_limit:
        raise OverflowError('range end %d beyond %d' % (hi, desk_limit))
    check_budget(hi - lo, segment_size, 'slice length')


def _first_multiple(p, lo):
    return ((lo + p - 1) // p) * p


class ArithSlice(object):

    """
    Arithmetic tables over the integers lo <= n < hi.

    All tables are numpy arrays indexed by n - lo and are read-only
    after construction. Single values are read with `is_prime(n)`,
    `mangoldt_at(n)`, `moebius_at(n)`, ...
    """

    def __init__(self, lo, hi, prime, mangoldt_prime, moebius, spf, ndiv):
        self.lo = lo
        self.hi = hi
        self.prime = prime
        self.mangoldt_prime = mangoldt_prime
        self.moebius = moebius
        self.spf = spf
        self.ndiv = ndiv
        with numpy.errstate(divide='ignore'):
            self.mangoldt = numpy.where(mangoldt_prime > 0,
                                        numpy.log(numpy.maximum(mangoldt_prime, 1)), 0.0)
        for table in (prime, mangoldt_prime, moebius, spf, ndiv, self.mangoldt):
            table.flags.writeable = False

    def __repr__(self):
        return 'ArithSlice(lo=%d, hi=%d)' % (self.lo, self.hi)

    def __len__(self):
        return self.hi - self.lo

    def __contains__(self, n):
        return self.lo <= n < self.hi

    @property
    def integers(self):
        """The integers covered by the slice."""
        return numpy.arange(self.lo, self.hi, dtype=numpy.int64)

    def _index(self, n):
        if n not in self:
            raise IndexError('%d outside slice [%d, %d)' % (n, self.lo, self.hi))
        return n - self.lo

    def is_prime(self, n):
        return bool(self.prime[self._index(n)])

    def mangoldt_at(self, n):
        """Λ(n) as a float."""
        return float(self.mangoldt[self._index(n)])

    def mangoldt_base(self, n):
        """The prime p if n = p^k, else 0: Λ(n) in factored form."""
        return int(self.mangoldt_prime[self._index(n)])

    def moebius_at(self, n):
        return int(self.moebius[self._index(n)])

    def smallest_prime_factor(self, n):
        return int(self.spf[self._index(n)])

    def divisor_count(self, n):
        return int(self.ndiv[self._index(n)])

    def factorize(self, n):
        """
        Return the factorisation of n as a dict {p: k}.

        Factors are peeled off with the smallest prime factor table
        while the cofactor stays in the slice, then by `factorize`.
        """
        factors = {}
        while n > 1 and n in self:
            p = self.smallest_prime_factor(n)
            factors[p] = factors.get(p, 0) + 1
            n //= p
        if n > 1:
            for p, k in factorize(n).items():
                factors[p] = factors.get(p, 0) + k
        return factors

    def primes(self):
        """Array of the primes in the slice."""
        return self.integers[self.prime]


def sieve_slice(lo, hi):
    """
    Return the `ArithSlice` over [lo, hi).

    The range must satisfy 1 <= lo < hi <= 10^10 + 1 and hi - lo must
    not exceed the module variable `segment_size`.
    """
    lo, hi = int(lo), int(hi)
    _check_range(lo, hi)
    n = numpy.arange(lo, hi, dtype=numpy.int64)
    rest = n.copy()
    moebius = numpy.ones(n.size, dtype=numpy.int8)
    spf = numpy.zeros(n.size, dtype=numpy.int64)
    ndiv = numpy.ones(n.size, dtype=numpy.int64)
    nfactors = numpy.zeros(n.size, dtype=numpy.int8)
    for p in base_primes(math.isqrt(hi - 1)):
        p = int(p)
        start = _first_multiple(p, lo) - lo
        if start >= n.size:
            continue
        multiples = slice(start, None, p)
        moebius[multiples] *= -1
        nfactors[multiples] += 1
        view = spf[multiples]
        unset = view == 0
        view[unset] = p
        # Peel off powers of p, updating d(n) = Π (k+1)
        pk, k = p, 1
        while pk < hi:
            start = _first_multiple(pk, lo) - lo
            if start >= n.size:
                break
            multiples = slice(start, None, pk)
            rest[multiples] //= p
            ndiv[multiples] = ndiv[multiples] // k * (k + 1)
            if k == 2:
                moebius[multiples] = 0
            pk *= p
            k += 1
    # A cofactor > 1 left over is a single prime above sqrt(hi)
    large = rest > 1
    moebius[large] *= -1
    ndiv[large] *= 2
    spf[(spf == 0) & large] = rest[(spf == 0) & large]
    spf[n == 1] = 1
    prime = (nfactors == 0) & large
    prime |= (nfactors == 1) & (rest == 1) & (spf == n)
    mangoldt_prime = numpy.zeros(n.size, dtype=numpy.int64)
    mangoldt_prime[prime] = n[prime]
    powers = (nfactors == 1) & (rest == 1)
    mangoldt_prime[powers] = spf[powers]
    return ArithSlice(lo, hi, prime, mangoldt_prime, moebius, spf, ndiv)


def sieve_primes(lo, hi):
    """
    Return a boolean array `mask` with mask[i] True iff lo+i is prime,
    for lo <= lo+i < hi.

    This is the primality-only sieve, with no Λ or μ tables, and the
    slice budget does not apply: callers choose the length.
    """
    lo, hi = int(lo), int(hi)
    if hi <= lo:
        raise ValueError('inverted or empty range [%d, %d)' % (lo, hi))
    if lo < 1:
        raise ValueError('range must start at 1 or above, got %d' % lo)
    if hi - 1 > desk_limit:
        raise OverflowError('range end %d beyond %d' % (hi, desk_limit))
    mask = numpy.ones(hi - lo, dtype=bool)
    if lo < 2:
        mask[:2 - lo] = False
    for p in base_primes(math.isqrt(hi - 1)):
        p = int(p)
        start = max(p * p, _first_multiple(p, lo)) - lo
        if start < mask.size:
            mask[start::p] = False
    return mask


def primes_between(lo, hi):
    """Return the array of primes in [lo, hi)."""
    mask = sieve_primes(lo, hi)
    return numpy.flatnonzero(mask).astype(numpy.int64) + lo


def iter_slices(lo, hi, size=None):
    """Yield consecutive (start, stop) pairs covering [lo, hi) with stop - start <= size."""
    if size is None:
        size = segment_size
    for start in range(lo, hi, size):
        yield start, min(start + size, hi)


class DyadicRange(object):

    """The integers N < n <= N1 with N >= 2 and N < N1 <= 2N."""

    def __init__(self, N, N1=None):
        N = int(N)
        N1 = 2 * N if N1 is None else int(N1)
        if N < 2:
            raise ValueError('dyadic range needs N >= 2, got %d' % N)
        if not N < N1 <= 2 * N:
            raise ValueError('dyadic range needs N < N1 <= 2N, got (%d, %d]' % (N, N1))
        self.N = N
        self.N1 = N1

    def __repr__(self):
        return 'DyadicRange(N=%d, N1=%d)' % (self.N, self.N1)

    def __eq__(self, other):
        return isinstance(other, DyadicRange) and (self.N, self.N1) == (other.N, other.N1)

    def __hash__(self):
        return hash((self.N, self.N1))

    def __len__(self):
        return self.N1 - self.N

    def __iter__(self):
        return iter(range(self.N + 1, self.N1 + 1))

    def integers(self):
        return numpy.arange(self.N + 1, self.N1 + 1, dtype=numpy.int64)

    def slice(self):
        """Return the `ArithSlice` covering the range."""
        return sieve_slice(self.N + 1, self.N1 + 1)


def tabulate(hi):
    """
    Return the arrays (mangoldt, moebius, mangoldt_prime) indexed by
    0 <= n < hi, built from consecutive slices. Entries at n = 0 are 0.
    """
    hi = int(hi)
    if hi < 2:
        raise ValueError('tabulate needs hi >= 2, got %d' % hi)
    mangoldt = numpy.zeros(hi, dtype=numpy.float64)
    moebius = numpy.zeros(hi, dtype=numpy.int8)
    mangoldt_prime = numpy.zeros(hi, dtype=numpy.int64)
    for start, stop in iter_slices(1, hi):
        piece = sieve_slice(start, stop)
        mangoldt[start:stop] = piece.mangoldt
        moebius[start:stop] = piece.moebius
        mangoldt_prime[start:stop] = piece.mangoldt_prime
    return mangoldt, moebius, mangoldt_prime


def chebyshev_psi(x):
    """
    Return ψ(x) = Σ_{n≤x} Λ(n).

    Partial sums are computed segment by segment and reduced in
    ascending order with correctly rounded summation.
    """
    x = int(x)
    if not 2 <= x <= 10**9:
        raise ValueError('chebyshev_psi needs 2 <= x <= 10^9, got %d' % x)
    partial = []
    for lo, hi in iter_slices(1, x + 1):
        partial.append(math.fsum(sieve_slice(lo, hi).mangoldt))
    return math.fsum(partial)


# Single integers

def factorize(n):
    """Return the factorisation {p: k} of the integer n >= 1."""
    n = int(n)
    if n < 1:
        raise ValueError('cannot factorize %d' % n)
    return {int(p): int(k) for p, k in factorint(n).items()}


def divisors(n):
    """Return the sorted list of divisors of n."""
    return [int(d) for d in sympy_divisors(int(n))]


def divisor_count(n):
    """Return d(n), the number of divisors of n."""
    return int(sympy_divisor_count(int(n)))
