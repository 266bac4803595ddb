# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
The counter π̂(x) of primes p <= x with p = floor(iL(n)) for some n >= 0.

Two independent routes are provided:

- `pi_hat`: sweep the primes and test whether [Li(p), Li(p+1))
  contains an integer, i.e. floor(Li(p+1)) - floor(Li(p)) = 1
- `pi_hat_via_n`: enumerate n = 0, 1, 2, ..., compute floor(iL(n)) and
  keep the primes
"""

import math
import logging
import numpy

from pseudotwin.core.utils import AmbiguityError, check_budget
from pseudotwin.arith.sieve import sieve_primes, primes_between, iter_slices
from pseudotwin.specfun.li import li_from_2, floor_inverse_li_array
from .sweep import PrimeSweep, Scheduler, write_record, indicator_counts

__all__ = ['indicator', 'pi_hat', 'pi_hat_via_n', 'pi_hat_table',
           'prime_reciprocal_log_sum']

_log = logging.getLogger(__name__)

# These module level variables can be tweaked at run time
max_sweep = 10**9
"""Largest x for the sieve sweep."""
max_enumeration = 10**7
"""Largest x for the enumeration over n."""


def indicator(p):
    """
    Return (floor(Li(p+1)) - floor(Li(p)), ambiguous) for the integer p >= 2.
    """
    p = int(p)
    if p < 2:
        raise ValueError('p must be >= 2, got %d' % p)
    count, ambiguous = indicator_counts(numpy.array([p], dtype=numpy.int64))
    return count, ambiguous > 0


def pi_hat(x, nthreads=None):
    """Return the `CountRecord` of π̂(x) computed by the prime sweep."""
    x = int(x)
    if x < 2:
        raise ValueError('x must be >= 2, got %d' % x)
    check_budget(x, max_sweep, 'x')
    sweep = PrimeSweep(nthreads=nthreads)
    sweep.run(x)
    return sweep.record()


def pi_hat_table(checkpoints, nthreads=None):
    """
    Return the list of `CountRecord` at the ascending `checkpoints`,
    computed in a single sweep.
    """
    checkpoints = [int(x) for x in checkpoints]
    if len(checkpoints) == 0:
        return []
    if any(b <= a for a, b in zip(checkpoints[:-1], checkpoints[1:])):
        raise ValueError('checkpoints must be strictly ascending: %s' % checkpoints)
    if checkpoints[0] < 2:
        raise ValueError('checkpoints must be >= 2')
    check_budget(checkpoints[-1], max_sweep, 'x')
    records = []
    sweep = PrimeSweep(nthreads=nthreads)
    sweep.add(write_record, Scheduler(xs=checkpoints), records)
    sweep.run(checkpoints[-1])
    return records


def pi_hat_via_n(x, chunk=2**16):
    """
    Return π̂(x) by enumerating n from 0 while iL(n) <= x + 1.

    Raise `AmbiguityError` if a floor cannot be decided.
    """
    x = int(x)
    if x < 2:
        raise ValueError('x must be >= 2, got %d' % x)
    check_budget(x, max_enumeration, 'x')
    n_max = int(math.floor(li_from_2(x + 1, 'dd').value)) + 1
    floors = []
    for start, stop in iter_slices(0, n_max + 1, chunk):
        values, ambiguous = floor_inverse_li_array(numpy.arange(start, stop))
        if ambiguous.any():
            raise AmbiguityError('undecided floor of iL(n) for n = %s' %
                                 (numpy.arange(start, stop)[ambiguous][:10].tolist()))
        floors.append(values)
    floors = numpy.unique(numpy.concatenate(floors))
    floors = floors[floors <= x]
    prime = sieve_primes(1, x + 1)
    return int(prime[floors - 1].sum())


def prime_reciprocal_log_sum(x):
    """Return Σ_{p≤x} 1/log p, reduced segment by segment in ascending order."""
    x = int(x)
    if x < 2:
        return 0.0
    check_budget(x, max_sweep, 'x')
    partial = []
    for lo, hi in iter_slices(1, x + 1):
        primes = primes_between(lo, hi)
        partial.append(math.fsum(1.0 / numpy.log(primes.astype(numpy.float64))))
    return math.fsum(partial)
