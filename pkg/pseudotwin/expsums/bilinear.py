# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Bilinear (Type II) sums and Weyl-van der Corput differencing.

    Σ_ℓ Σ_k α(ℓ) β(k) e(h Li(ℓk))

is compared with K L^{5/6} h^{1/6} log^A L log^B K, and the chain of
inequalities that leads to that estimate (Cauchy-Schwarz over ℓ, then
differencing over k with the S_0 sums) can be evaluated step by step
with `bilinear_chain`.
"""

import math
import logging
import numpy

from pseudotwin.core import desk_limit
from pseudotwin.core.parallel import split, block_map
from pseudotwin.core.utils import check_budget
from pseudotwin.specfun.li import li_array
from pseudotwin.specfun.dd import frac_of_product, unit_phase, dd_add, complex_fsum
from .report import BoundReport

__all__ = ['CoefficientPair', 'wvdc_check', 'bilinear_sum', 'optimal_q',
           'BilinearChain', 'bilinear_chain']

_log = logging.getLogger(__name__)

max_terms = 10**8
"""Budget for direct O(KL) evaluations."""

# Largest number of phases evaluated per block
_block_terms = 2**20


def _log2(x):
    # log x, floored at log 2
    return math.log(max(x, 2))


class CoefficientPair(object):

    """
    Coefficients α on L < ℓ <= L + len(alpha) and β on K < k <= K + len(beta),
    with len(alpha) <= L and len(beta) <= K. Logarithms of L and K are
    floored at log 2.

    The norm hypotheses Σ|α|² <= c L log^{2A} L and Σ|β|² <= c K log^{2B} K
    are measured at construction; the measured constants are stored in
    `alpha_constant` and `beta_constant`. If `norm_constant` is given,
    a `ValueError` is raised when either exceeds it.
    """

    def __init__(self, alpha, beta, L, K, A=1.0, B=1.0, norm_constant=None):
        self.alpha = numpy.asarray(alpha, dtype=complex)
        self.beta = numpy.asarray(beta, dtype=complex)
        self.L, self.K = int(L), int(K)
        self.A, self.B = float(A), float(B)
        if self.L < 1 or self.K < 1:
            raise ValueError('L and K must be positive, got L=%d, K=%d' % (self.L, self.K))
        if not 0 < self.alpha.size <= self.L:
            raise ValueError('alpha must have between 1 and L=%d entries' % self.L)
        if not 0 < self.beta.size <= self.K:
            raise ValueError('beta must have between 1 and K=%d entries' % self.K)
        self.alpha_constant = self.alpha_norm2 / (self.L * _log2(self.L)**(2 * self.A))
        self.beta_constant = self.beta_norm2 / (self.K * _log2(self.K)**(2 * self.B))
        if norm_constant is not None:
            if max(self.alpha_constant, self.beta_constant) > norm_constant:
                raise ValueError('norm hypothesis fails: constants %g, %g exceed %g' %
                                 (self.alpha_constant, self.beta_constant, norm_constant))

    def __repr__(self):
        return 'CoefficientPair(L=%d, K=%d, A=%g, B=%g)' % (self.L, self.K, self.A, self.B)

    @property
    def ells(self):
        return numpy.arange(self.L + 1, self.L + 1 + self.alpha.size, dtype=numpy.int64)

    @property
    def ks(self):
        return numpy.arange(self.K + 1, self.K + 1 + self.beta.size, dtype=numpy.int64)

    @property
    def alpha_norm2(self):
        return float(numpy.sum(numpy.abs(self.alpha)**2))

    @property
    def beta_norm2(self):
        return float(numpy.sum(numpy.abs(self.beta)**2))

    def bound(self, h):
        """K L^{5/6} h^{1/6} log^A L log^B K"""
        return self.K * self.L**(5.0 / 6) * h**(1.0 / 6) * \
            _log2(self.L)**self.A * _log2(self.K)**self.B


def wvdc_check(z, Q):
    """
    Return (lhs, rhs) of the Weyl-van der Corput inequality for the
    sequence `z` of length K and 1 <= Q <= K:

        |Σ z_k|² <= (K+Q)/Q Σ_{|q|<Q} (1 - |q|/Q) Σ_k z_k conj(z_{k+q})
    """
    z = numpy.asarray(z, dtype=complex)
    K = z.size
    Q = int(Q)
    if not 1 <= Q <= K:
        raise ValueError('Q must satisfy 1 <= Q <= K=%d, got %d' % (K, Q))
    lhs = abs(complex_fsum(z))**2
    terms = []
    for q in range(-Q + 1, Q):
        if q >= 0:
            r = numpy.vdot(z[q:], z[:K - q])
        else:
            r = numpy.conj(numpy.vdot(z[-q:], z[:K + q]))
        terms.append((1 - abs(q) / float(Q)) * r)
    rhs = (K + Q) / float(Q) * complex_fsum(terms)
    scale = max(1.0, float(numpy.sum(numpy.abs(z)**2)))
    assert abs(rhs.imag) <= 1e-9 * scale * (K + Q), 'imaginary part of the differenced sum: %g' % rhs.imag
    return lhs, rhs.real


def _row_blocks(nrows, ncols):
    rows = max(1, _block_terms // max(1, ncols))
    return split(0, nrows, rows)


def _check_pair(pair):
    check_budget(pair.alpha.size * pair.beta.size, max_terms, 'number of bilinear terms')
    if int(pair.ells[-1]) * int(pair.ks[-1]) > desk_limit:
        raise OverflowError('product lk beyond %d' % desk_limit)


def bilinear_sum(pair, h, product_range=None, precision='double', nthreads=None):
    """
    Return (value, report) for Σ_ℓ Σ_k α(ℓ) β(k) e(h Li(ℓk)).

    If `product_range` is a (N, N2) pair, only the terms with
    N < ℓk <= N2 are kept. Raise `BudgetExceeded` if the number of
    terms exceeds `max_terms`.
    """
    h = int(h)
    if h < 1:
        raise ValueError('h must be positive, got %d' % h)
    _check_pair(pair)
    ells, ks = pair.ells, pair.ks

    def block(bounds):
        rows = slice(*bounds)
        m = ells[rows, None] * ks[None, :]
        weight = pair.alpha[rows, None] * pair.beta[None, :]
        if product_range is not None:
            inside = (m > product_range[0]) & (m <= product_range[1])
            if not inside.any():
                return 0j
            return complex_fsum(weight[inside] * _phases(h, m[inside], precision))
        return complex_fsum(weight * _phases(h, m, precision))

    value = complex_fsum(block_map(block, _row_blocks(ells.size, ks.size), nthreads))
    total_weight = numpy.sum(numpy.abs(pair.alpha)) * numpy.sum(numpy.abs(pair.beta))
    assert abs(value) <= total_weight * (1 + 1e-12) + 1e-12, 'triangle inequality violated: %s' % value
    params = {'h': h, 'K': pair.K, 'L': pair.L, 'A': pair.A, 'B': pair.B}
    return value, BoundReport(abs(value), pair.bound(h), params, value)


def _phases(h, m, precision):
    hi, lo, _ = li_array(m.astype(numpy.float64), precision)
    return unit_phase(h, hi, lo)


def optimal_q(L, h):
    """Return Q = max(1, floor(L^{1/3} h^{-1/3})), computed exactly."""
    L, h = int(L), int(h)
    if L < 1 or h < 1:
        raise ValueError('L and h must be positive')
    q = int(round((L / float(h))**(1.0 / 3)))
    while (q + 1)**3 * h <= L:
        q += 1
    while q > 1 and q**3 * h > L:
        q -= 1
    return max(1, q)


class BilinearChain(object):

    """
    The steps of the Type II estimate, evaluated numerically.

    - `lhs` = |S|²
    - `cauchy` = ||α||² Σ_ℓ |Σ_k β(k) e(h Li(ℓk))|²
    - `differenced` = ||α||² Σ_ℓ (Weyl-van der Corput right-hand side at Q)
    - `swapped` = the same quantity with the ℓ-sum moved inside, i.e.
      ||α||² (K+Q)/Q Σ_{|q|<Q} (1-|q|/Q) Σ_k β(k) conj(β(k+q)) S_0(q;k)

    The chain holds if lhs <= cauchy <= differenced and
    differenced == swapped up to rounding.
    """

    def __init__(self, value, lhs, cauchy, differenced, swapped, Q):
        self.value = value
        self.lhs = lhs
        self.cauchy = cauchy
        self.differenced = differenced
        self.swapped = swapped
        self.Q = Q

    def __repr__(self):
        return 'BilinearChain(lhs=%g, cauchy=%g, differenced=%g, swapped=%g, Q=%d)' % \
            (self.lhs, self.cauchy, self.differenced, self.swapped, self.Q)

    def holds(self, rtol=1e-9):
        return self.lhs <= self.cauchy * (1 + rtol) and \
            self.cauchy <= self.differenced * (1 + rtol) and \
            abs(self.differenced - self.swapped) <= rtol * max(1.0, abs(self.differenced))


def bilinear_chain(pair, h, Q=None, precision='double'):
    """
    Evaluate the Type II estimate of `pair` at frequency `h` step by
    step and return a `BilinearChain`. `Q` defaults to
    `optimal_q(L, h)`, clipped to the length of β.
    """
    h = int(h)
    if h < 1:
        raise ValueError('h must be positive, got %d' % h)
    _check_pair(pair)
    nk = pair.beta.size
    if Q is None:
        Q = optimal_q(pair.L, h)
    Q = min(int(Q), nk)
    ells, ks = pair.ells, pair.ks
    hi, lo, _ = li_array((ells[:, None] * ks[None, :]).astype(numpy.float64), precision)
    z = pair.beta[None, :] * unit_phase(h, hi, lo)
    rows = z.sum(axis=1)
    value = complex_fsum(pair.alpha * rows)
    norm2 = pair.alpha_norm2
    cauchy = norm2 * math.fsum(numpy.abs(rows)**2)
    differenced = norm2 * math.fsum([wvdc_check(row, Q)[1] for row in z])

    # Same quantity with the sum over l inside: sums of the S_0 type
    terms = []
    for q in range(Q):
        if q == 0:
            inner = ells.size * numpy.abs(pair.beta)**2
        else:
            dhi, dlo = dd_add(hi[:, :-q], lo[:, :-q], -hi[:, q:], -lo[:, q:])
            s0 = numpy.exp(2j * numpy.pi * frac_of_product(h, dhi, dlo)).sum(axis=0)
            inner = pair.beta[:-q] * numpy.conj(pair.beta[q:]) * s0
        weight = 1 - q / float(Q)
        s = complex_fsum(inner)
        terms.append(weight * s)
        if q > 0:
            terms.append(weight * s.conjugate())
    swapped = norm2 * (nk + Q) / float(Q) * complex_fsum(terms).real
    chain = BilinearChain(value, abs(value)**2, cauchy, differenced, swapped, Q)
    _log.debug('%s', chain)
    return chain
