# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
The Λ-weighted sum behind π̂ over a dyadic range,

    Σ = Σ_{N<n≤N1} Λ(n) [ψ(Li(n)) - ψ(Li(n+1))]

and its split Σ = Σ1 + O(Σ2) through the truncated Fourier series of ψ:

    Σ1 = Σ Λ(n) Σ_{0<|h|≤H} c_h [e(h Li(n)) - e(h Li(n+1))]
    Σ2 = Σ Λ(n) [g(Li(n), H) + g(Li(n+1), H)]
"""

import math
import logging
import numpy

from pseudotwin.core.utils import check_budget
from pseudotwin.arith.sieve import sieve_slice
from pseudotwin.specfun.li import li_array
from pseudotwin.specfun.dd import frac_of_product, unit_phase, complex_fsum
from pseudotwin.specfun.fourier import FourierTruncation, g_weight
from pseudotwin.expsums.report import BoundReport

__all__ = ['SigmaReport', 'sigma_terms', 'sigma1_endpoint_report']

_log = logging.getLogger(__name__)

max_range = 10**7
"""Largest 2N accepted by `sigma_terms`."""


class SigmaReport(object):

    """
    Σ, Σ1 and Σ2 over the dyadic range `rng` at truncation `H`.

    `normalized` is Σ log²N / N, the size of Σ against the target
    N/log²N, and `truncation_constant` is |Σ - Re Σ1| / Σ2, the
    constant of the O(Σ2) term (zero when Σ2 vanishes).
    """

    def __init__(self, rng, H, sigma, sigma1, sigma2):
        self.rng = rng
        self.H = H
        self.sigma = sigma
        self.sigma1 = sigma1
        self.sigma2 = sigma2
        assert sigma2 >= 0, 'negative sigma2 %g' % sigma2
        self.normalized = sigma * math.log(rng.N)**2 / rng.N
        if sigma2 > 0:
            self.truncation_constant = abs(sigma - sigma1.real) / sigma2
        else:
            self.truncation_constant = 0.0

    def __repr__(self):
        return 'SigmaReport(%r, H=%d, sigma=%g, sigma1=%s, sigma2=%g)' % \
            (self.rng, self.H, self.sigma, self.sigma1, self.sigma2)


def _support(rng):
    check_budget(2 * rng.N, max_range, '2N')
    piece = sieve_slice(rng.N + 1, rng.N1 + 1)
    support = numpy.flatnonzero(piece.mangoldt)
    n = (support + rng.N + 1).astype(numpy.float64)
    return n, piece.mangoldt[support]


def sigma_terms(rng, H, precision='double'):
    """Return the `SigmaReport` of the dyadic range `rng` at truncation `H`."""
    H = int(H)
    if H < 1:
        raise ValueError('H must be >= 1, got %d' % H)
    n, weight = _support(rng)
    if n.size == 0:
        return SigmaReport(rng, H, 0.0, 0j, 0.0)
    truncation = FourierTruncation(H)
    sigma, sigma1, sigma2 = [], [], []
    for x in (n, n + 1):
        hi, lo, _ = li_array(x, precision)
        frac = frac_of_product(1, hi, lo)
        sigma.append(weight * (frac - 0.5))
        sigma1.append(weight * truncation.series(hi, lo))
        sigma2.append(weight * g_weight(frac, H))
    report = SigmaReport(rng, H,
                         math.fsum(sigma[0] - sigma[1]),
                         complex_fsum(sigma1[0] - sigma1[1]),
                         math.fsum(sigma2[0] + sigma2[1]))
    _log.debug('%r', report)
    return report


def sigma1_endpoint_report(rng, H, precision='double'):
    """
    Compare |Σ1| with (1/log N) max_{N<N2≤N1} Σ_{0<h≤H} |Σ_{N<n≤N2} Λ(n) e(h Li(n))|.

    The maximum over N2 is taken over all endpoints, with the partial
    sums of every frequency accumulated along n.
    """
    H = int(H)
    report = sigma_terms(rng, H, precision)
    n, weight = _support(rng)
    if n.size == 0:
        return BoundReport(0.0, 1.0, {'N': rng.N, 'N1': rng.N1, 'H': H}, report.sigma1)
    hi, lo, _ = li_array(n, precision)
    partial = numpy.zeros(n.size)
    for h in range(1, H + 1):
        partial += numpy.abs(numpy.cumsum(weight * unit_phase(h, hi, lo)))
    bound = partial.max() / math.log(rng.N)
    params = {'N': rng.N, 'N1': rng.N1, 'H': H}
    return BoundReport(abs(report.sigma1), bound, params, report.sigma1)
