# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Sawtooth ψ, its truncated Fourier series and the weight g.

    ψ(θ) = {θ} - 1/2
    g(θ, H) = min(1, 1/(H ||θ||))

The Fourier coefficients of ψ are c_h = -1/(2πih) = i/(2πh), so that

    ψ(θ) = Σ_{0<|h|≤H} c_h e(hθ) + O(g(θ, H))

The coefficients a_h of g are computed by adaptive quadrature, with a
closed form in terms of the cosine integral available as an oracle.
"""

import math
import logging
import warnings
import numpy
from scipy.special import sici
from scipy.integrate import quad, IntegrationWarning

from pseudotwin.core.utils import ConvergenceError
from .dd import unit_phase

__all__ = ['FourierTruncation', 'psi_frac', 'psi_truncated', 'g_weight',
           'distance_to_integer', 'fourier_coeff_g', 'fourier_coeff_g_closed_form',
           'truncation_constant', 'coefficient_decay_constant']

_log = logging.getLogger(__name__)

# Maximum number of phases held in memory at once
_chunk = 2**20


def distance_to_integer(theta):
    """Return ||θ||, the distance from `theta` to the nearest integer."""
    theta = numpy.asarray(theta, dtype=numpy.float64)
    d = numpy.abs(theta - numpy.rint(theta))
    return float(d) if d.ndim == 0 else d


def psi_frac(theta):
    """
    Return ψ(θ) = {θ} - 1/2 in [-1/2, 1/2).

    Integers map to -1/2. Works on floats and arrays.
    """
    theta = numpy.asarray(theta, dtype=numpy.float64)
    if not numpy.all(numpy.isfinite(theta)):
        raise OverflowError('non-finite argument')
    frac = theta - numpy.floor(theta)
    frac = numpy.where(frac >= 1.0, 0.0, frac)
    psi = frac - 0.5
    return float(psi) if psi.ndim == 0 else psi


def g_weight(theta, H):
    """Return g(θ, H) = min(1, 1/(H ||θ||)), with g = 1 at integers."""
    if H < 1:
        raise ValueError('H must be >= 1, got %s' % H)
    d = numpy.asarray(distance_to_integer(theta))
    with numpy.errstate(divide='ignore'):
        g = numpy.where(d == 0, 1.0, numpy.minimum(1.0, 1.0 / (H * d)))
    return float(g) if g.ndim == 0 else g


class FourierTruncation(object):

    """
    Truncated Fourier series of the sawtooth ψ at level `H`.

    The coefficients c_h for h = 1..H are stored in `coefficients`,
    negative indices follow from c_{-h} = conj(c_h).
    """

    def __init__(self, H):
        H = int(H)
        if H < 1:
            raise ValueError('truncation level must be >= 1, got %s' % H)
        self.H = H
        self.h = numpy.arange(1, H + 1, dtype=numpy.int64)
        self.coefficients = 1j / (2 * numpy.pi * self.h)

    def __repr__(self):
        return 'FourierTruncation(H=%d)' % self.H

    def coefficient(self, h):
        """Return c_h for 0 < |h| <= H."""
        h = int(h)
        if h == 0 or abs(h) > self.H:
            raise ValueError('coefficient index %d out of range (0, %d]' % (h, self.H))
        c = self.coefficients[abs(h) - 1]
        return complex(c) if h > 0 else complex(numpy.conj(c))

    def series(self, theta, theta_lo=0.0):
        """
        Return the complex partial sum Σ_{0<|h|≤H} c_h e(hθ) at the
        points θ = theta + theta_lo.

        The phases hθ are reduced modulo 1 with the double-double
        kernels, so `theta` may be large (e.g. Li(n)).
        """
        theta = numpy.atleast_1d(numpy.asarray(theta, dtype=numpy.float64))
        theta_lo = numpy.broadcast_to(numpy.asarray(theta_lo, dtype=numpy.float64), theta.shape)
        total = numpy.zeros(theta.shape, dtype=complex)
        step = max(1, _chunk // max(1, theta.size))
        for start in range(0, self.H, step):
            h = self.h[start: start + step, None]
            c = self.coefficients[start: start + step, None]
            pos = unit_phase(h, theta[None, :], theta_lo[None, :])
            neg = unit_phase(-h, theta[None, :], theta_lo[None, :])
            total += (c * pos + numpy.conj(c) * neg).sum(axis=0)
        return total

    def evaluate(self, theta, theta_lo=0.0):
        """Return the real partial sum ψ_H(θ); the imaginary part is checked to vanish."""
        scalar = numpy.ndim(theta) == 0
        value = self.series(theta, theta_lo)
        assert numpy.all(numpy.abs(value.imag) <= 1e-12 * max(1.0, math.log(self.H + 1))), \
            'imaginary part of ψ series does not vanish: %g' % numpy.abs(value.imag).max()
        return float(value.real[0]) if scalar else value.real


def psi_truncated(theta, H):
    """Return the truncated Fourier series of ψ at level `H` evaluated at `theta`."""
    return FourierTruncation(H).evaluate(theta)


def truncation_constant(thetas, H):
    """
    Return the empirical constant max |ψ(θ) - ψ_H(θ)| / g(θ, H) over
    the sample `thetas`.
    """
    thetas = numpy.asarray(thetas, dtype=numpy.float64)
    error = numpy.abs(psi_frac(thetas) - FourierTruncation(H).evaluate(thetas))
    return float(numpy.max(error / g_weight(thetas, H)))


# Fourier coefficients of g

def _quad(func, a, b, **kwargs):
    with warnings.catch_warnings():
        warnings.simplefilter('error', IntegrationWarning)
        try:
            value, err = quad(func, a, b, limit=200, epsabs=1e-13, epsrel=1e-12, **kwargs)
        except IntegrationWarning as exc:
            raise ConvergenceError('quadrature on [%g, %g] did not converge: %s' % (a, b, exc))
    return value


def fourier_coeff_g(h, H):
    """
    Return a_h = ∫_0^1 g(θ, H) e(-hθ) dθ.

    The integral is split at the kinks ||θ|| = 1/H and at θ = 1/2,
    and each piece is integrated with QUADPACK using the oscillatory
    cos/sin weights.
    """
    h, H = int(h), int(H)
    if H < 1:
        raise ValueError('H must be >= 1, got %s' % H)
    if H <= 2:
        # g is identically one
        return 1.0 if h == 0 else 0.0

    def g(theta):
        return g_weight(theta, H)

    edges = [0.0, 1.0 / H, 0.5, 1.0 - 1.0 / H, 1.0]
    real, imag = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if h == 0:
            real += _quad(g, a, b)
        else:
            omega = 2 * math.pi * h
            real += _quad(g, a, b, weight='cos', wvar=omega)
            imag -= _quad(g, a, b, weight='sin', wvar=omega)
    assert abs(imag) <= 1e-10, 'imaginary part of a_%d is %g' % (h, imag)
    return real


def fourier_coeff_g_closed_form(h, H):
    """
    Return a_h from the closed form

        a_0 = (2/H) (1 + log(H/2))
        a_h = sin(2πh/H)/(π|h|) + (2/H) (Ci(π|h|) - Ci(2π|h|/H))

    valid for H >= 2.
    """
    h, H = abs(int(h)), int(H)
    if H < 1:
        raise ValueError('H must be >= 1, got %s' % H)
    if H <= 2:
        return 1.0 if h == 0 else 0.0
    if h == 0:
        return 2.0 / H * (1 + math.log(H / 2.0))
    _, ci_half = sici(math.pi * h)
    _, ci_kink = sici(2 * math.pi * h / H)
    return math.sin(2 * math.pi * h / H) / (math.pi * h) + 2.0 / H * (ci_half - ci_kink)


def coefficient_decay_constant(hs, H, closed_form=False):
    """
    Return the empirical constant max |a_h| / min(log(2H)/H, H/h^2)
    over the indices `hs`.
    """
    coeff = fourier_coeff_g_closed_form if closed_form else fourier_coeff_g
    sup = 0.0
    for h in hs:
        shape = math.log(2 * H) / H
        if h != 0:
            shape = min(shape, H / float(h)**2)
        sup = max(sup, abs(coeff(h, H)) / shape)
    _log.debug('coefficient decay constant at H=%d: %g', H, sup)
    return sup
