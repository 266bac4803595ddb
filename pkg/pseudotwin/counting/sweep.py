# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Prime sweep with callback logic.

`PrimeSweep` walks through the primes in increasing order and counts
those whose interval [Li(p), Li(p+1)) contains an integer. Callbacks
(aka observers) are called when the sweep reaches the positions
requested by their `Scheduler`, exactly as in a simulation loop:

    #!python
    sweep = PrimeSweep()
    records = []
    sweep.add(write_record, Scheduler(xs=[10**3, 10**4]), records)
    sweep.run(10**4)

Naming convention for callbacks: if the name contains

- target : the callback raises a `SweepEnd` when it is over
- write : the callback stores data

Targeters are always called last.
"""

import sys
import math
import time
import logging
import numpy

import pseudotwin.core.progress
from pseudotwin.core.parallel import split, block_map
from pseudotwin.arith.sieve import primes_between
from pseudotwin.specfun import li as _li
from pseudotwin.specfun.li import li_array, escalate_li

__all__ = ['SweepEnd', 'Scheduler', 'PrimeSweep', 'CountRecord',
           'write_record', 'target_x', 'indicator_counts']

_log = logging.getLogger(__name__)


class SweepEnd(Exception):
    """Raised when a targeter reaches its target."""
    pass


class Scheduler(object):

    """
    Schedule observer calls during the sweep.

    This is nothing but a callable that takes a sweep instance and
    returns the next position x at which an observer has to be
    notified.
    """

    def __init__(self, interval=None, calls=None, xs=None):
        """
        Only one of the arguments can be different from None.

        - `interval`: notify at a fixed interval in x
        - `calls`: fixed number of notifications up to the sweep target
        - `xs`: ascending list of positions at which the observer will be notified
        """
        self.interval = interval
        self.calls = calls
        self.xs = xs

        # Normalize non-positive intervals and n. of calls
        if self.interval is not None and self.interval <= 0:
            self.interval = None
        if self.calls is not None and self.calls <= 0:
            self.calls = None

    def __call__(self, sweep):
        if self.interval is not None and self.calls is None:
            return (sweep.current_x // self.interval + 1) * self.interval

        elif self.calls is not None:
            interval = max(1, sweep.x_max // self.calls)
            return (sweep.current_x // interval + 1) * interval

        elif self.xs is not None:
            for x in self.xs:
                if x > sweep.current_x:
                    return x
            return sys.maxsize

        else:
            return sys.maxsize


class CountRecord(object):

    """
    A row of the headline table: π̂(x), the model x/log²x and their
    ratio. `ambiguous_count` counts the floors that could not be
    decided.
    """

    def __init__(self, x, pi_hat, ambiguous_count=0):
        x = int(x)
        if x < 2:
            raise ValueError('records need x >= 2, got %d' % x)
        if pi_hat < 0:
            raise ValueError('negative count %d' % pi_hat)
        self.x = x
        self.pi_hat = int(pi_hat)
        self.model = x / math.log(x)**2
        self.ratio = self.pi_hat / self.model
        self.ambiguous_count = int(ambiguous_count)

    def __repr__(self):
        return 'CountRecord(x=%d, pi_hat=%d, model=%g, ratio=%g, ambiguous_count=%d)' % \
            (self.x, self.pi_hat, self.model, self.ratio, self.ambiguous_count)

    def __eq__(self, other):
        return isinstance(other, CountRecord) and \
            (self.x, self.pi_hat, self.ambiguous_count) == (other.x, other.pi_hat, other.ambiguous_count)

    __hash__ = None


def _floors(hi, lo, err):
    """Floors of hi+lo and a mask of the entries within err of an integer."""
    k = numpy.floor(hi)
    d = (hi - k) + lo
    k = numpy.where(d < 0, k - 1, numpy.where(d >= 1, k + 1, k))
    d = numpy.where(d < 0, d + 1, numpy.where(d >= 1, d - 1, d))
    near = (d < err) | (1 - d <= err)
    return k.astype(numpy.int64), near


def _decided_floors(x):
    """Floors of Li(x), escalating the entries within the guard band."""
    hi, lo, err = li_array(x)
    floors, near = _floors(hi, lo, numpy.maximum(_li.guard_band, err))
    ambiguous = numpy.zeros(x.shape, dtype=bool)
    if near.any():
        _log.debug('escalating %d Li evaluations near integers', near.sum())
        ehi, elo, eerr = escalate_li(x[near])
        floors[near], ambiguous[near] = _floors(ehi, elo, eerr)
    return floors, ambiguous


def indicator_counts(primes):
    """
    Return (count, ambiguous) for the prime array `primes`, where
    `count` is Σ (floor Li(p+1) - floor Li(p)) and `ambiguous` the number
    of primes with an undecided floor.
    """
    if primes.size == 0:
        return 0, 0
    p = primes.astype(numpy.float64)
    lower, amb_lower = _decided_floors(p)
    upper, amb_upper = _decided_floors(p + 1)
    step = upper - lower
    assert numpy.all((step == 0) | (step == 1)), 'interval [Li(p), Li(p+1)) holds more than one integer'
    ambiguous = amb_lower | amb_upper
    if ambiguous.any():
        _log.warning('ambiguous indicator at primes %s', primes[ambiguous][:10].tolist())
    return int(step.sum()), int(ambiguous.sum())


# Observers

def write_record(sweep, records):
    """Append the `CountRecord` at the current position to `records`."""
    records.append(sweep.record())


def target_x(sweep, value):
    """Target the position of the sweep."""
    if sweep.current_x >= value:
        raise SweepEnd('reached target x %d' % value)
    return float(sweep.current_x) / value


def _callable_name(callback):
    try:
        name = callback.__name__
    except AttributeError:
        name = callback.__class__.__name__
    return name.lower()


class PrimeSweep(object):

    """Sweep over the primes p <= x counting the indicator of π̂(x)."""

    def __init__(self, segment=2**20, nthreads=None):
        self.segment = segment
        self.nthreads = nthreads
        self.current_x = 1
        self.x_max = 0
        self.pi_hat = 0
        self.ambiguous_count = 0
        self.primes_seen = 0
        self._observer = []
        self._start_time = time.time()

    def __str__(self):
        return 'prime sweep at x=%d' % self.current_x

    def record(self):
        return CountRecord(self.current_x, self.pi_hat, self.ambiguous_count)

    def add(self, callback, scheduler, *args, **kwargs):
        """
        Add an observer `callback` to be called along with a `scheduler`.

        `scheduler` and `callback` must be callables accepting a
        sweep instance as first argument. `scheduler` must return the
        next position at which the observer has to be notified. An
        integer `scheduler` is taken as a fixed interval.
        """
        if type(scheduler) is int:
            scheduler = Scheduler(scheduler)

        # Sanity check (prevent scheduler/callback inversion)
        assert type(scheduler(self)) is int, \
            "probable swap between callback {} and scheduler {}".format(callback, scheduler)

        pack = {'scheduler': scheduler, 'callback': callback, 'args': args, 'kwargs': kwargs}
        # Keep targeters last
        if 'target' not in _callable_name(callback):
            self._observer.insert(0, pack)
        else:
            self._observer.append(pack)

    def _notify(self, observers):
        for observer in observers:
            _log.debug('notify %s at x=%d', _callable_name(observer['callback']), self.current_x)
            observer['callback'](self, *observer['args'], **observer['kwargs'])

    def run_until(self, x):
        """Count the primes in (current_x, x] and move the sweep to x."""
        if x <= self.current_x:
            return

        def block(bounds):
            primes = primes_between(*bounds)
            count, ambiguous = indicator_counts(primes)
            return count, ambiguous, primes.size

        blocks = split(self.current_x + 1, x + 1, self.segment)
        for count, ambiguous, nprimes in block_map(block, blocks, self.nthreads):
            self.pi_hat += count
            self.ambiguous_count += ambiguous
            self.primes_seen += nprimes
        self.current_x = x

    def run(self, x):
        """Run the sweep up to `x`."""
        self.x_max = x
        self._observer = [o for o in self._observer if o['callback'] is not target_x]
        self.add(target_x, Scheduler(xs=[x]), x)
        _log.info('sweep started up to x=%d', x)
        self._start_time = time.time()

        bar = pseudotwin.core.progress.progress(total=x)
        try:
            self._notify([o for o in self._observer if 'target' in _callable_name(o['callback'])])
            while True:
                all_x = [o['scheduler'](self) for o in self._observer]
                next_x = min(all_x)
                # Do not go beyond the chunks requested by the progress bar
                if pseudotwin.core.progress.active:
                    next_x = min(next_x, self.current_x + max(self.segment, x // 100))
                self.run_until(next_x)
                self._notify([self._observer[i] for i, xi in enumerate(all_x) if xi == next_x])
                bar.update(self.current_x)

        except SweepEnd as end:
            bar.update(self.current_x)
            bar.close()
            _log.info('sweep ended successfully: %s', end)
            _log.info('pi_hat=%d primes=%d ambiguous=%d wall time [s]: %.2f', self.pi_hat,
                      self.primes_seen, self.ambiguous_count, time.time() - self._start_time)

        except KeyboardInterrupt:
            bar.close()
            _log.info('sweep interrupted at x=%d', self.current_x)

        except:
            bar.close()
            _log.error('sweep failed at x=%d', self.current_x)
            raise
