#!/usr/bin/env python

import os
import cmath
import math
import unittest
import numpy
from pseudotwin.core.utils import setup_logging
from pseudotwin.arith import DyadicRange, tabulate
from pseudotwin.vaughan import coeff_a_table, coeff_b_table
from pseudotwin.specfun import li_from_2, li_array
from pseudotwin.expsums import linear_sum, linear_bound_report, exponential_sum, \
    van_der_corput_report, second_derivative_window, s0_sum, s0_reflection, \
    s0_second_derivative_window, wvdc_check, CoefficientPair, bilinear_sum, \
    bilinear_chain, optimal_q, BoundReport, sup_ratio


def _e(x):
    return cmath.exp(2j * math.pi * x)


def _li(x):
    return li_from_2(x, 'dd').value


class TestLinear(unittest.TestCase):

    def setUp(self):
        setup_logging(level=40, update=True)

    def test_zero_frequency(self):
        self.assertEqual(linear_sum(0, 3, DyadicRange(100, 150)), 50)

    def test_direct(self):
        direct = sum(_e(_li(n)) for n in range(9, 17))
        value = linear_sum(1, 1, DyadicRange(8))
        self.assertAlmostEqual(value, direct, places=10)
        dd = linear_sum(1, 1, DyadicRange(8), precision='dd')
        self.assertAlmostEqual(dd, direct, places=12)

    def test_multiplier(self):
        direct = sum(_e(3 * _li(2 * n)) for n in range(51, 101))
        self.assertAlmostEqual(linear_sum(3, 2, DyadicRange(50, 100)), direct, places=9)

    def test_threads(self):
        import pseudotwin.core.parallel
        rng = DyadicRange(2**14)
        current = pseudotwin.core.parallel.block_size
        try:
            pseudotwin.core.parallel.block_size = 1000
            serial = linear_sum(2, 1, rng, nthreads=1)
            threaded = linear_sum(2, 1, rng, nthreads=4)
        finally:
            pseudotwin.core.parallel.block_size = current
        self.assertEqual(serial, threaded)

    def test_bound(self):
        for h, ell, N in [(1, 1, 2**10), (4, 3, 2**12)]:
            report = linear_bound_report(h, ell, DyadicRange(N))
            self.assertLessEqual(report.ratio, 10.0)
            self.assertEqual(report['h'], h)
        with self.assertRaises(ValueError):
            linear_bound_report(0, 1, DyadicRange(16))

    def test_limits(self):
        with self.assertRaises(OverflowError):
            linear_sum(10**7, 1, DyadicRange(16))
        with self.assertRaises(OverflowError):
            linear_sum(1, 10**6, DyadicRange(10**5))
        with self.assertRaises(ValueError):
            linear_sum(1, 0, DyadicRange(16))

    def test_generic_sum(self):
        rng = DyadicRange(2**10)

        def f(n):
            return li_array(n)[:2]

        self.assertAlmostEqual(exponential_sum(f, rng), linear_sum(1, 1, rng), places=10)
        delta = 1.0 / (rng.N * math.log(rng.N)**2)
        report = van_der_corput_report(f, rng, delta)
        self.assertLessEqual(report.ratio, 10.0)
        with self.assertRaises(ValueError):
            van_der_corput_report(f, rng, 0.0)

    def test_second_derivative_window(self):
        c, C = second_derivative_window(3, 2, DyadicRange(1000))
        self.assertTrue(0.3 < c <= C < 1.01)
        c, C = s0_second_derivative_window(2, 3, 5, 100)
        self.assertTrue(0 < c <= C)


class TestS0(unittest.TestCase):

    def setUp(self):
        setup_logging(level=40, update=True)

    def test_direct(self):
        direct = sum(_e(_li(5 * ell) - _li(6 * ell)) for ell in range(11, 21))
        value, report = s0_sum(1, 1, 5, 10)
        self.assertAlmostEqual(value, direct, places=10)
        self.assertAlmostEqual(report.lhs, abs(direct), places=10)
        self.assertAlmostEqual(report.bound, 10**0.5)

    def test_reflection(self):
        direct, reflected = s0_reflection(3, 4, 7, 50)
        self.assertAlmostEqual(direct, reflected, places=10)

    def test_bound(self):
        reports = [s0_sum(h, q, k, L)[1] for h in [1, 3] for q in [1, 2, 5]
                   for k in [1, 10] for L in [10, 100, 1000]]
        self.assertLessEqual(sup_ratio(reports), 10.0)

    def test_bound_grid(self):
        reports = [s0_sum(h, q, k, L)[1] for h in range(1, 5) for q in range(1, 5)
                   for k in [5, 50, 500] for L in [2**7, 2**10]]
        self.assertEqual(len(reports), 96)
        self.assertLessEqual(sup_ratio(reports), 10.0)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            s0_sum(1, 1, 5, 9)
        with self.assertRaises(ValueError):
            s0_sum(1, 0, 5, 10)
        with self.assertRaises(ValueError):
            s0_sum(1, -5, 5, 10)


class TestWeylVanDerCorput(unittest.TestCase):

    def test_single_term(self):
        lhs, rhs = wvdc_check([1.0], 1)
        self.assertAlmostEqual(lhs, 1.0)
        self.assertAlmostEqual(rhs, 2.0)

    def test_constant(self):
        lhs, rhs = wvdc_check(numpy.ones(8), 8)
        self.assertAlmostEqual(lhs, 64.0)
        self.assertGreaterEqual(rhs, 64.0)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            wvdc_check(numpy.ones(4), 5)
        with self.assertRaises(ValueError):
            wvdc_check(numpy.ones(4), 0)

    def test_random(self):
        trials = 1000 if os.environ.get('PSEUDOTWIN_SLOW') else 100
        rng = numpy.random.default_rng(42)
        for _ in range(trials):
            K = int(rng.integers(1, 65))
            z = rng.standard_normal(K) + 1j * rng.standard_normal(K)
            for Q in range(1, K + 1):
                lhs, rhs = wvdc_check(z, Q)
                self.assertLessEqual(lhs, rhs * (1 + 1e-9) + 1e-12)


class TestBilinear(unittest.TestCase):

    def setUp(self):
        setup_logging(level=40, update=True)

    def test_single_term(self):
        pair = CoefficientPair([1.0], [1.0], 5, 7)
        value, report = bilinear_sum(pair, 3)
        self.assertAlmostEqual(value, _e(3 * _li(48)), places=10)
        self.assertAlmostEqual(abs(value), 1.0, places=12)

    def test_direct(self):
        pair = CoefficientPair(numpy.ones(16), numpy.ones(16), 16, 16)
        direct = sum(_e(_li(ell * k)) for ell in range(17, 33) for k in range(17, 33))
        value, report = bilinear_sum(pair, 1)
        self.assertAlmostEqual(value, direct, places=9)
        self.assertAlmostEqual(report.bound, pair.bound(1))

    def test_product_range(self):
        pair = CoefficientPair(numpy.ones(16), numpy.ones(16), 16, 16)
        direct = sum(_e(2 * _li(ell * k)) for ell in range(17, 33) for k in range(17, 33)
                     if 400 < ell * k <= 600)
        value, _ = bilinear_sum(pair, 2, product_range=(400, 600))
        self.assertAlmostEqual(value, direct, places=9)

    def test_arithmetic_coefficients(self):
        # a(l) on the first factor and the von Mangoldt function or b(r) on the second
        reports = []
        for K in [2**6, 2**8]:
            mangoldt = tabulate(2 * K + 1)[0][K + 1:]
            for u in [4, 16]:
                alpha = coeff_a_table(K + 1, 2 * K + 1, u)
                for beta, B in [(mangoldt, 0.5), (coeff_b_table(2 * K + 1, u, u)[K + 1:], 1.0)]:
                    if not beta.any():
                        continue
                    pair = CoefficientPair(alpha, beta, K, K, A=1.5, B=B)
                    for h in [1, 2, 4]:
                        value, report = bilinear_sum(pair, h)
                        self.assertAlmostEqual(report.lhs, abs(value))
                        reports.append(report)
        self.assertGreater(len(reports), 12)
        self.assertLessEqual(sup_ratio(reports), 10.0)

    def test_norm_hypothesis(self):
        pair = CoefficientPair(numpy.ones(10), 2 * numpy.ones(20), 10, 20, A=0.0, B=0.0)
        self.assertAlmostEqual(pair.alpha_constant, 1.0)
        self.assertAlmostEqual(pair.beta_constant, 4.0)
        with self.assertRaises(ValueError):
            CoefficientPair(numpy.ones(10), 2 * numpy.ones(20), 10, 20, A=0.0, B=0.0, norm_constant=2.0)
        with self.assertRaises(ValueError):
            CoefficientPair(numpy.ones(11), numpy.ones(5), 10, 20)
        with self.assertRaises(ValueError):
            CoefficientPair([], numpy.ones(5), 10, 20)

    def test_optimal_q(self):
        self.assertEqual(optimal_q(1000, 1), 10)
        self.assertEqual(optimal_q(999, 1), 9)
        self.assertEqual(optimal_q(8, 1), 2)
        self.assertEqual(optimal_q(1, 5), 1)
        self.assertEqual(optimal_q(64000, 8), 20)

    def test_chain(self):
        rng = numpy.random.default_rng(1)
        alpha = rng.standard_normal(40) + 1j * rng.standard_normal(40)
        beta = rng.standard_normal(30) + 1j * rng.standard_normal(30)
        pair = CoefficientPair(alpha, beta, 40, 30)
        for h in [1, 2, 7]:
            chain = bilinear_chain(pair, h)
            self.assertTrue(chain.holds(), chain)
            value, _ = bilinear_sum(pair, h)
            self.assertAlmostEqual(chain.value, value, places=9)
        for Q in [1, 30]:
            chain = bilinear_chain(pair, 3, Q=Q)
            self.assertEqual(chain.Q, Q)
            self.assertTrue(chain.holds(), chain)

    def test_report(self):
        report = BoundReport(2.0, 4.0, {'h': 1})
        self.assertEqual(report.ratio, 0.5)
        self.assertEqual(sup_ratio([]), 0.0)
        with self.assertRaises(ValueError):
            BoundReport(-1.0, 1.0)
        with self.assertRaises(ValueError):
            BoundReport(1.0, 0.0)


if __name__ == '__main__':
    unittest.main()
