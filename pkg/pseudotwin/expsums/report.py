# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""Bound reports: measured magnitudes against the shape of an estimate."""

__all__ = ['BoundReport', 'sup_ratio']


class BoundReport(object):

    """
    A computed magnitude `lhs` compared to the bound `bound` of an
    estimate, stripped of its implied constant. `ratio` is lhs/bound.

    `params` is a dict of the parameters (h, l, N, N1, q, k, L, K, Q,
    ...) of the evaluation. `value` keeps the complex sum, if any.
    """

    def __init__(self, lhs, bound, params=None, value=None):
        if lhs < 0:
            raise ValueError('negative magnitude %s' % lhs)
        if not bound > 0:
            raise ValueError('bound must be positive, got %s' % bound)
        self.lhs = float(lhs)
        self.bound = float(bound)
        self.ratio = self.lhs / self.bound
        self.params = {} if params is None else dict(params)
        self.value = value

    def __repr__(self):
        params = ', '.join('%s=%s' % (key, self.params[key]) for key in self.params)
        return 'BoundReport(lhs=%g, bound=%g, ratio=%g; %s)' % (self.lhs, self.bound, self.ratio, params)

    def __getitem__(self, key):
        return self.params[key]


def sup_ratio(reports):
    """Return the largest ratio among `reports` (0 if there are none)."""
    return max([report.ratio for report in reports] + [0.0])
