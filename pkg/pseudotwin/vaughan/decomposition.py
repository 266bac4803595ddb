# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
The prime exponential sum and its decomposition through Vaughan's
identity.

Multiplying the identity by e(h Li(n)) and summing over N < n <= N2
gives

    Σ Λ(n) e(h Li(n)) = S1 + S2 - S3,    S3 = S4 + S5

where S1 is the bilinear piece with Λ(k) a(ℓ), S2 the piece with
μ(ℓ) log k, and S4, S5 the pieces of Σ b(r) e(h Li(kr)) with r <= u
and u < r <= uv. Every piece is evaluated from one table of phases
e(h Li(n)), N < n <= N2.
"""

import math
import logging
import numpy

from pseudotwin.core.utils import check_budget
from pseudotwin.core.parallel import split, block_map
from pseudotwin.arith.sieve import iter_slices, sieve_slice, tabulate
from pseudotwin.specfun.li import li_array
from pseudotwin.specfun.dd import unit_phase, complex_fsum
from pseudotwin.expsums.bilinear import CoefficientPair, bilinear_sum
from pseudotwin.expsums.report import BoundReport
from .identity import coeff_a_table, coeff_b_table

__all__ = ['VaughanParams', 'prime_exp_sum', 'phase_vector', 'decompose_sum',
           'dyadic_blocks', 'arranged_blocks', 's1_block_reports', 's5_block_reports',
           'linear_piece_reports', 's_total']

_log = logging.getLogger(__name__)

# These module level variables can be tweaked at run time
max_direct = 10**8
"""Largest N2 for the direct prime exponential sum."""
max_decompose = 10**7
"""Largest N2 for the decomposition."""
max_phase_evaluations = 10**10
"""Budget on (N2 - N) H for the total sum S."""


def _iroot(n, num, den):
    """Return floor(n^(num/den)) for integers, exactly."""
    r = int(n**(num / float(den)))
    while (r + 1)**den <= n**num:
        r += 1
    while r > 0 and r**den > n**num:
        r -= 1
    return r


class VaughanParams(object):

    """
    Parameters of the decomposition over N < n <= N2.

    Defaults: N2 = 2N, u = v = floor(N^{5/11}) and H = ceil(log^4 N).
    We need v <= N so that the identity holds for every n in the
    range; u = 0 is allowed and empties S2, S4 and S5.
    """

    def __init__(self, N, N2=None, u=None, v=None, H=None):
        N = int(N)
        if N < 2:
            raise ValueError('N must be >= 2, got %d' % N)
        self.N = N
        self.N2 = 2 * N if N2 is None else int(N2)
        self.u = _iroot(N, 5, 11) if u is None else int(u)
        self.v = _iroot(N, 5, 11) if v is None else int(v)
        self.H = int(math.ceil(math.log(N)**4)) if H is None else int(H)
        if not N < self.N2 <= 2 * N:
            raise ValueError('need N < N2 <= 2N, got N=%d, N2=%d' % (N, self.N2))
        if self.u < 0:
            raise ValueError('u must be >= 0, got %d' % self.u)
        if not 1 <= self.v <= N:
            raise ValueError('need 1 <= v <= N, got v=%d' % self.v)
        if self.H < 0:
            raise ValueError('H must be >= 0, got %d' % self.H)

    def __repr__(self):
        return 'VaughanParams(N={0.N}, N2={0.N2}, u={0.u}, v={0.v}, H={0.H})'.format(self)


def phase_vector(h, N, N2, precision='double'):
    """Return the array e(h Li(n)) for N < n <= N2 (index n - N - 1)."""
    n = numpy.arange(N + 1, N2 + 1, dtype=numpy.float64)
    hi, lo, _ = li_array(numpy.maximum(n, 2.0), precision)
    return unit_phase(h, hi, lo)


def prime_exp_sum(h, N, N2, precision='double', nthreads=None):
    """
    Return Σ_{N<n≤N2} Λ(n) e(h Li(n)).

    The range is sieved slice by slice; slice sums are reduced in
    ascending order. Raise `BudgetExceeded` if N2 > `max_direct`.
    """
    h, N, N2 = int(h), int(N), int(N2)
    if N < 1 or N2 <= N:
        raise ValueError('invalid range (%d, %d]' % (N, N2))
    check_budget(N2, max_direct, 'N2')

    def block(bounds):
        piece = sieve_slice(*bounds)
        support = numpy.flatnonzero(piece.mangoldt)
        if support.size == 0:
            return 0j
        n = (support + bounds[0]).astype(numpy.float64)
        hi, lo, _ = li_array(n, precision)
        return complex_fsum(piece.mangoldt[support] * unit_phase(h, hi, lo))

    return complex_fsum(block_map(block, list(iter_slices(N + 1, N2 + 1)), nthreads))


def _multiples_sum(E, N, N2, r, weights=None):
    """Σ_{m: N<rm≤N2} w(m) E[rm]."""
    m0, m1 = N // r + 1, N2 // r
    if m1 < m0:
        return 0j
    idx = numpy.arange(m0, m1 + 1, dtype=numpy.int64) * r - N - 1
    if weights is None:
        return complex_fsum(E[idx])
    return complex_fsum(weights(m0, m1) * E[idx])


def decompose_sum(h, params, precision='double'):
    """
    Return the dict {'S1', 'S2', 'S3', 'S4', 'S5', 'total', 'direct', 'rel_err'}
    of the Vaughan decomposition of Σ Λ(n) e(h Li(n)) over N < n <= N2.

    `total` is S1 + S2 - S3 and `direct` the sum evaluated directly
    from the same phases.
    """
    h = int(h)
    N, N2, u, v = params.N, params.N2, params.u, params.v
    check_budget(N2, max_decompose, 'N2')
    E = phase_vector(h, N, N2, precision)
    mangoldt, moebius, _ = tabulate(N2 + 1)
    logs = numpy.log(numpy.arange(1, N2 + 1, dtype=numpy.float64))

    # S1 = Σ_{l>u} a(l) Σ_{k>v, N<kl≤N2} Λ(k) e(h Li(kl))
    s1 = []
    lmax = N2 // (v + 1)
    if lmax > u:
        a = coeff_a_table(u + 1, lmax + 1, u)
        for ell in range(u + 1, lmax + 1):
            coeff = int(a[ell - u - 1])
            if coeff == 0:
                continue
            k0, k1 = max(v + 1, N // ell + 1), N2 // ell
            if k1 < k0:
                continue
            k = numpy.arange(k0, k1 + 1, dtype=numpy.int64)
            s1.append(coeff * complex_fsum(mangoldt[k] * E[k * ell - N - 1]))
    S1 = complex_fsum(s1)

    # S2 = Σ_{l≤u} μ(l) Σ_{N<kl≤N2} log k e(h Li(kl))
    s2 = []
    for ell in range(1, min(u, N2) + 1):
        mu = int(moebius[ell])
        if mu != 0:
            s2.append(mu * _multiples_sum(E, N, N2, ell, lambda m0, m1: logs[m0 - 1:m1]))
    S2 = complex_fsum(s2)

    # S3 = Σ_{r≤uv} b(r) Σ_{N<kr≤N2} e(h Li(kr)), split at r = u
    rmax = min(u * v, N2)
    b = coeff_b_table(rmax + 1, u, v)
    s4, s5 = [], []
    for r in numpy.flatnonzero(b):
        r = int(r)
        term = b[r] * _multiples_sum(E, N, N2, r)
        (s4 if r <= u else s5).append(term)
    S4, S5 = complex_fsum(s4), complex_fsum(s5)
    S3 = S4 + S5

    total = S1 + S2 - S3
    direct = complex_fsum(mangoldt[N + 1:] * E)
    rel_err = abs(total - direct) / max(abs(direct), 1.0)
    _log.debug('decomposition h=%d %s: rel_err=%g', h, params, rel_err)
    return {'S1': S1, 'S2': S2, 'S3': S3, 'S4': S4, 'S5': S5,
            'total': total, 'direct': direct, 'rel_err': rel_err}


def _dyadic(lo, hi):
    """Dyadic pieces (X, min(2X, hi)] covering (lo, hi]."""
    pieces = []
    X = max(lo, 1)
    if lo == 0:
        pieces.append((0, 1))
    while X < hi:
        pieces.append((X, min(2 * X, hi)))
        X *= 2
    return pieces


def dyadic_blocks(params):
    """
    Yield the (K, K1, L, L1) blocks K < k <= K1, L < l <= L1 with
    K1 <= 2K and L1 <= 2L covering the S1 range k > v, l > u,
    N < kl <= N2. Blocks with no product in (N, N2] are skipped.
    """
    N, N2, u, v = params.N, params.N2, params.u, params.v
    for K, K1 in _dyadic(v, N2 // (u + 1)):
        for L, L1 in _dyadic(u, N2 // (v + 1)):
            if (K + 1) * (L + 1) > N2 or K1 * L1 <= N:
                continue
            yield K, K1, L, L1


def arranged_blocks(params):
    """
    Yield the blocks of `dyadic_blocks` as (K, K1, L, L1, swapped)
    with the shorter range first, K <= L. `swapped` is True when the
    range of k, the von Mangoldt side, is the longer one and became L.

    For u = v every block then has v <= K, (K+1)² <= N2 and L1² > N,
    that is N^{5/11} <= K <= N^{1/2} <= L <= N^{6/11} up to the dyadic
    rounding when u = v = N^{5/11}.
    """
    for K, K1, L, L1 in dyadic_blocks(params):
        if K <= L:
            yield K, K1, L, L1, False
        else:
            yield L, L1, K, K1, True


def _block(h, alpha, beta, L, K, A, B, product_range, precision, **params):
    pair = CoefficientPair(alpha, beta, L, K, A=A, B=B)
    value, report = bilinear_sum(pair, h, product_range=product_range, precision=precision)
    report.params.update(params)
    return value, report


def s1_block_reports(h, params, precision='double'):
    """
    Evaluate S1 block by block with `bilinear_sum` over the
    `arranged_blocks`. The longer range carries α: a(ℓ) with A = 3/2,
    or Λ(k) with A = 1/2 on swapped blocks; the shorter one carries β.
    Products are restricted to N < kℓ <= N2.

    Return (S1, reports). The block values add up to S1.
    """
    N, N2, u = params.N, params.N2, params.u
    if u < 1:
        raise ValueError('block reports need u >= 1')
    mangoldt, _, _ = tabulate(N2 // (u + 1) + 2)
    values, reports = [], []
    for K, K1, L, L1, swapped in arranged_blocks(params):
        if swapped:
            alpha, beta, A, B = mangoldt[L + 1:L1 + 1], coeff_a_table(K + 1, K1 + 1, u), 0.5, 1.5
        else:
            alpha, beta, A, B = coeff_a_table(L + 1, L1 + 1, u), mangoldt[K + 1:K1 + 1], 1.5, 0.5
        if not alpha.any() or not beta.any():
            continue
        value, report = _block(h, alpha, beta, L, K, A, B, (N, N2), precision,
                               piece='S1', K1=K1, L1=L1, swapped=swapped)
        values.append(value)
        reports.append(report)
    return complex_fsum(values), reports


def s5_block_reports(h, params, precision='double'):
    """
    Evaluate S5 = Σ_{u<r≤uv} b(r) Σ_{N<kr≤N2} e(h Li(kr)) block by
    block like S1, with |b(r)| <= log r (exponent 1) and the constant
    coefficient 1 on k (exponent 0). The terms with k = 1, present
    only when uv > N, are summed directly.

    Return (S5, reports). The block values add up to S5.
    """
    N, N2, u, v = params.N, params.N2, params.u, params.v
    if u < 1:
        raise ValueError('block reports need u >= 1')
    rmax = min(u * v, N2)
    b = coeff_b_table(rmax + 1, u, v)
    values, reports = [], []
    if rmax > max(N, u):
        start = max(N, u)
        values.append(complex_fsum(b[start + 1:rmax + 1] * phase_vector(h, start, rmax, precision)))
    for R, R1 in _dyadic(u, rmax):
        coeff = b[R + 1:R1 + 1]
        if not coeff.any():
            continue
        for K, K1 in _dyadic(1, N2 // (u + 1)):
            if (K + 1) * (R + 1) > N2 or K1 * R1 <= N:
                continue
            ones = numpy.ones(K1 - K)
            if K <= R:
                value, report = _block(h, coeff, ones, R, K, 1.0, 0.0, (N, N2), precision,
                                       piece='S5', K1=K1, L1=R1, swapped=False)
            else:
                value, report = _block(h, ones, coeff, K, R, 0.0, 1.0, (N, N2), precision,
                                       piece='S5', K1=R1, L1=K1, swapped=True)
            values.append(value)
            reports.append(report)
    return complex_fsum(values), reports


def linear_piece_reports(h, params, pieces=None, precision='double'):
    """
    Return the `BoundReport`s of S2 against sqrt(Nh) u log² N and of
    S4 against (Nh)^{1/2} log N u log u. `pieces` is the dict returned
    by `decompose_sum`; it is computed if not given.
    """
    h = int(h)
    if h < 1:
        raise ValueError('h must be positive, got %d' % h)
    if pieces is None:
        pieces = decompose_sum(h, params, precision)
    N, u = params.N, max(params.u, 1)
    log_N, log_u = math.log(N), math.log(max(u, 2))
    common = {'h': h, 'N': N, 'N2': params.N2, 'u': params.u, 'v': params.v}
    s2 = BoundReport(abs(pieces['S2']), math.sqrt(N * h) * u * log_N**2,
                     dict(common, piece='S2'), pieces['S2'])
    s4 = BoundReport(abs(pieces['S4']), math.sqrt(N * h) * log_N * u * log_u,
                     dict(common, piece='S4'), pieces['S4'])
    return s2, s4


def s_total(params, precision='double', nthreads=None):
    """
    Return the dict {'S', 'power_ratio', 'log_ratio'} with

        S = Σ_{0<h≤H} |Σ_{N<n≤N2} Λ(n) e(h Li(n))|

    power_ratio = S / N^{21/22} and log_ratio = S log N / N.
    """
    N, N2, H = params.N, params.N2, params.H
    check_budget(N2, max_direct, 'N2')
    check_budget((N2 - N) * H, max_phase_evaluations, 'phase evaluations')
    if H == 0:
        S = 0.0
    else:
        weights, hi, lo = [], [], []
        for start, stop in iter_slices(N + 1, N2 + 1):
            piece = sieve_slice(start, stop)
            support = numpy.flatnonzero(piece.mangoldt)
            values = li_array((support + start).astype(numpy.float64), precision)
            weights.append(piece.mangoldt[support])
            hi.append(values[0])
            lo.append(values[1])
        weights, hi, lo = numpy.concatenate(weights), numpy.concatenate(hi), numpy.concatenate(lo)

        def block(bounds):
            return [abs(complex_fsum(weights * unit_phase(h, hi, lo))) for h in range(*bounds)]

        blocks = block_map(block, split(1, H + 1, 16), nthreads)
        S = math.fsum(value for values in blocks for value in values)
    result = {'S': S, 'power_ratio': S / N**(21.0 / 22), 'log_ratio': S * math.log(N) / N}
    _log.info('S total %s: %s', params, result)
    return result
