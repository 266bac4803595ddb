# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Vaughan's identity and its coefficients.

For n > v,

    Λ(n) = Σ_{kℓ=n, k>v, ℓ>u} Λ(k) a(ℓ)
         + Σ_{kℓ=n, ℓ≤u} μ(ℓ) log k
         - Σ_{kℓm=n, ℓ≤v, m≤u} Λ(ℓ) μ(m)

with a(ℓ) = Σ_{d|ℓ, d>u} μ(d) and b(r) = Σ_{ℓm=r, ℓ≤v, m≤u} Λ(ℓ) μ(m),
so that the last sum is Σ_{r|n} b(r). The exact check works in the
log-prime basis: every term is an integer combination of log p.
"""

import math
import logging
import functools
import itertools
import numpy
from sympy import mobius, divisors, divisor_count, multiplicity

from pseudotwin.arith.sieve import factorize, sieve_slice, tabulate
from .logprime import LogPrimeVector

__all__ = ['coeff_a', 'coeff_b', 'coeff_a_table', 'coeff_b_table',
           'vaughan_identity_check', 'verify_identity_range', 'coefficient_norms']

_log = logging.getLogger(__name__)

max_coefficient_argument = 10**8


@functools.lru_cache(maxsize=2**16)
def _moebius(n):
    return int(mobius(n))


@functools.lru_cache(maxsize=2**16)
def _divisor_list(n):
    return tuple(int(d) for d in divisors(n))


def _restrict(d, factors):
    """Factorisation of the divisor `d` of an integer with `factors`."""
    return {p: multiplicity(p, d) for p in factors if d % p == 0}


def _divisors(n, factors):
    """Yield (d, factors of d) for every divisor d of n."""
    for d in _divisor_list(n):
        yield d, _restrict(d, factors)


def _coeff_a(factors, u):
    # Only squarefree divisors contribute
    primes = sorted(factors)
    total = 0
    for size in range(len(primes) + 1):
        for subset in itertools.combinations(primes, size):
            d = 1
            for p in subset:
                d *= p
            if d > u:
                total += -1 if size % 2 else 1
    return total


def coeff_a(ell, u, factors=None):
    """
    Return a(ℓ) = Σ_{d|ℓ, d>u} μ(d).

    For ℓ > 1 and u >= 1 this equals -Σ_{d|ℓ, d≤u} μ(d), and a(1) = 0
    unless u = 0.
    """
    ell, u = int(ell), int(u)
    if not 1 <= ell <= max_coefficient_argument:
        raise ValueError('l must satisfy 1 <= l <= %d, got %d' % (max_coefficient_argument, ell))
    if factors is None:
        factors = factorize(ell)
    a = _coeff_a(factors, u)
    assert abs(a) <= int(divisor_count(ell)), '|a(%d)| = %d exceeds d(%d)' % (ell, abs(a), ell)
    return a


def coeff_b(r, u, v, factors=None):
    """
    Return b(r) = Σ_{ℓm=r, ℓ≤v, m≤u} Λ(ℓ) μ(m) as an exact `LogPrimeVector`.

    Requires r <= uv.
    """
    r, u, v = int(r), int(u), int(v)
    if r < 1:
        raise ValueError('r must be positive, got %d' % r)
    if r > u * v:
        raise ValueError('b(r) needs r <= uv = %d, got %d' % (u * v, r))
    if factors is None:
        factors = factorize(r)
    b = LogPrimeVector()
    for p, k in factors.items():
        # l = p^j runs over the prime power divisors of r
        for j in range(1, k + 1):
            ell = p**j
            if ell > v:
                break
            m = r // ell
            mu = _moebius(m)
            if m <= u and mu != 0:
                b = b + mu * LogPrimeVector({p: 1})
    assert abs(b.value) <= math.log(r) + 1e-12, '|b(%d)| exceeds log %d' % (r, r)
    return b


def coeff_a_table(lo, hi, u):
    """
    Return the integer array a(ℓ) for lo <= ℓ < hi.

    Computed as [ℓ=1] - Σ_{d≤u, d|ℓ} μ(d), one strided update per
    squarefree d <= u.
    """
    lo, hi, u = int(lo), int(hi), int(u)
    if not 1 <= lo < hi:
        raise ValueError('invalid range [%d, %d)' % (lo, hi))
    a = numpy.zeros(hi - lo, dtype=numpy.int64)
    if lo == 1:
        a[0] = 1
    if u >= 1:
        moebius = sieve_slice(1, u + 1).moebius
        for d in range(1, u + 1):
            mu = int(moebius[d - 1])
            if mu == 0:
                continue
            start = ((lo + d - 1) // d) * d - lo
            a[start::d] -= mu
    return a


def coeff_b_table(hi, u, v):
    """
    Return the float array b(r) for 0 <= r < hi (b(0) = 0).

    Only r <= uv can be nonzero.
    """
    hi, u, v = int(hi), int(u), int(v)
    b = numpy.zeros(max(hi, 2), dtype=numpy.float64)
    top = min(v, hi - 1)
    if u < 1 or top < 2:
        return b[:hi]
    mangoldt, _, _ = tabulate(top + 1)
    powers = numpy.flatnonzero(mangoldt)
    moebius = sieve_slice(1, u + 1).moebius
    for m in range(1, u + 1):
        mu = int(moebius[m - 1])
        if mu == 0:
            continue
        ell = powers[powers * m < hi]
        if ell.size == 0:
            break
        numpy.add.at(b, ell * m, mu * mangoldt[ell])
    return b[:hi]


def vaughan_identity_check(n, u, v, factors=None):
    """
    Return the residual of Vaughan's identity at n > v as a
    `LogPrimeVector`; it is zero when the identity holds.

    The right-hand side is evaluated term by term in the log-prime
    basis, with log k expanded as Σ_{d|k} Λ(d).
    """
    n, u, v = int(n), int(u), int(v)
    if n <= v:
        raise ValueError('the identity holds for n > v = %d, got n = %d' % (v, n))
    if factors is None:
        factors = factorize(n)

    divs = list(_divisors(n, factors))
    s1, s2, s3 = LogPrimeVector(), LogPrimeVector(), LogPrimeVector()
    for k, kf in divs:
        ell = n // k
        lf = _restrict(ell, factors)
        # S1: k > v, l > u
        if k > v and ell > u and len(kf) == 1:
            a = _coeff_a(lf, u)
            if a != 0:
                s1 = s1 + a * LogPrimeVector.mangoldt(k, kf)
        # S2: l <= u, log k = Σ_{d|k} Λ(d)
        if ell <= u:
            mu = _moebius(ell)
            if mu != 0:
                log_k = LogPrimeVector()
                for d, df in _divisors(k, kf):
                    if len(df) == 1:
                        log_k = log_k + LogPrimeVector.mangoldt(d, df)
                s2 = s2 + mu * log_k
    # S3: Σ over klm = n with l <= v, m <= u of Λ(l)μ(m)
    for r, rf in divs:
        for ell, ef in _divisors(r, rf):
            if len(ef) != 1 or ell > v:
                continue
            m = r // ell
            if m > u:
                continue
            mu = _moebius(m)
            if mu != 0:
                s3 = s3 + mu * LogPrimeVector.mangoldt(ell, ef)
    return s1 + s2 - s3 - LogPrimeVector.mangoldt(n, factors)


def verify_identity_range(max_n, u, v, min_n=None):
    """
    Check Vaughan's identity for every v < n <= max_n (or min_n <= n <= max_n).

    Return (checked, failures), where `failures` lists the n with a
    nonzero residual. One sieve slice provides all factorisations.
    """
    max_n, u, v = int(max_n), int(u), int(v)
    start = v + 1 if min_n is None else max(int(min_n), v + 1)
    if max_n < start:
        return 0, []
    table = sieve_slice(1, max_n + 1)
    checked, failures = 0, []
    for n in range(start, max_n + 1):
        residual = vaughan_identity_check(n, u, v, table.factorize(n))
        checked += 1
        if residual:
            _log.warning('identity fails at n=%d (u=%d, v=%d): %r', n, u, v, residual)
            failures.append(n)
    _log.info('checked %d integers for u=%d, v=%d, %d failures', checked, u, v, len(failures))
    return checked, failures


def coefficient_norms(L, R, u, v):
    """
    Return the measured constants

        c_a = Σ_{L<ℓ≤2L} |a(ℓ)|² / (L log³ L)
        c_b = Σ_{R<r≤2R} |b(r)|² / (R log² R)
    """
    L, R = int(L), int(R)
    if L < 2 or R < 2:
        raise ValueError('L and R must be >= 2')
    a = coeff_a_table(L + 1, 2 * L + 1, u).astype(numpy.float64)
    b = coeff_b_table(2 * R + 1, u, v)[R + 1:]
    c_a = math.fsum(a**2) / (L * math.log(L)**3)
    c_b = math.fsum(b**2) / (R * math.log(R)**2)
    return c_a, c_b
