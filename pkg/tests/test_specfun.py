#!/usr/bin/env python

import math
import unittest
import logging
import numpy
from pseudotwin.core.utils import setup_logging
from pseudotwin.specfun import li_from_2, li_array, li_derivative, inverse_li, inverse_li_array, \
    floor_inverse_li, floor_inverse_li_array, li_quadrature, ExtReal, \
    psi_frac, psi_truncated, g_weight, FourierTruncation, truncation_constant, \
    fourier_coeff_g, fourier_coeff_g_closed_form, coefficient_decay_constant, distance_to_integer
from pseudotwin.specfun import dd


class TestDoubleDouble(unittest.TestCase):

    def test_two_sum(self):
        s, e = dd.two_sum(1.0, 1e-20)
        self.assertEqual(s, 1.0)
        self.assertEqual(e, 1e-20)

    def test_two_prod(self):
        a = 1.0 + 2.0**-30
        p, e = dd.two_prod(a, a)
        # (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60
        self.assertEqual(p, 1.0 + 2.0**-29)
        self.assertEqual(e, 2.0**-60)

    def test_frac_of_product(self):
        self.assertEqual(dd.frac_of_product(3, 1.5), 0.5)
        self.assertEqual(dd.frac_of_product(3, 2.0**40 + 0.25), 0.75)
        self.assertEqual(dd.frac_of_product(-1, 0.25), 0.75)
        # The low part shifts the fraction
        self.assertAlmostEqual(dd.frac_of_product(2, 1.0, 0.125), 0.25, places=15)
        x = dd.frac_of_product(numpy.array([1, 2, 3]), 0.5)
        self.assertEqual(list(x), [0.5, 0.0, 0.5])

    def test_complex_fsum(self):
        values = numpy.array([1e16, 1.0, -1e16, 1j])
        self.assertEqual(dd.complex_fsum(values), 1 + 1j)
        self.assertEqual(dd.complex_fsum(values[::-1]), 1 + 1j)
        # Tables of any shape are summed over all entries
        table = numpy.array([[1e16, 1.0], [-1e16, 1j]])
        self.assertEqual(dd.complex_fsum(table), 1 + 1j)
        self.assertEqual(dd.complex_fsum(numpy.ones((3, 4, 5))), 60)


class TestLi(unittest.TestCase):

    def setUp(self):
        setup_logging(level=40, update=True)

    def test_lower_limit(self):
        self.assertEqual(li_from_2(2).value, 0.0)
        self.assertEqual(li_from_2(2, 'dd').value, 0.0)

    def test_li_10(self):
        li = li_from_2(10)
        self.assertAlmostEqual(li.value, 5.1204358, places=6)
        self.assertAlmostEqual(li.value, li_quadrature(10), places=9)
        self.assertTrue(li.contains(li_from_2(10, 'dd').value))

    def test_li_3(self):
        # [Li(2), Li(3)) contains 0 and not 1
        self.assertTrue(0 < li_from_2(3).value < 1.2)
        self.assertGreater(li_from_2(3).value, 1.0)

    def test_dd_agrees_with_double(self):
        for x in [3.0, 10.0, 1e3, 1e6, 1e9]:
            double = li_from_2(x)
            escalated = li_from_2(x, 'dd')
            self.assertTrue(escalated.escalated)
            self.assertLessEqual(abs(double.value - escalated.value), double.abs_err + escalated.abs_err)
            self.assertLess(escalated.abs_err, 1e-9)

    def test_derivative(self):
        # Central differences of the escalated Li at 100 points
        rng = numpy.random.default_rng(7)
        for x in numpy.exp(rng.uniform(math.log(3.0), math.log(1e7), 100)):
            h = 1e-4 * x
            slope = (li_from_2(x + h, 'dd').value - li_from_2(x - h, 'dd').value) / (2 * h)
            self.assertLess(abs(slope / li_derivative(x) - 1), 1e-6)
        self.assertAlmostEqual(li_derivative(math.e), 1.0)

    def test_quadrature_oracle(self):
        for x in [2.5, 100.0, 12345.0]:
            self.assertAlmostEqual(li_from_2(x, 'dd').value / li_quadrature(x), 1.0, places=11)

    def test_array(self):
        x = numpy.array([2.0, 10.0, 1e5])
        hi, lo, err = li_array(x)
        for xi, value, e in zip(x, hi, err):
            self.assertLessEqual(abs(value - li_from_2(xi).value), 2 * e)
        hi, lo, err = li_array(x, 'dd')
        self.assertEqual(hi[0], 0.0)
        self.assertAlmostEqual(hi[1] + lo[1], li_from_2(10, 'dd').value, places=14)

    def test_domain(self):
        with self.assertRaises(ValueError):
            li_from_2(1.5)
        with self.assertRaises(OverflowError):
            li_from_2(float('inf'))
        with self.assertRaises(ValueError):
            li_from_2(10, 'quad')
        with self.assertRaises(ValueError):
            li_array([1.0, 3.0])


class TestInverseLi(unittest.TestCase):

    def setUp(self):
        setup_logging(level=40, update=True)

    def test_zero(self):
        self.assertEqual(inverse_li(0).value, 2.0)
        self.assertEqual(floor_inverse_li(0), (2, False))

    def test_round_trip(self):
        p = inverse_li(5.1204358)
        self.assertAlmostEqual(p.value, 10.0, places=5)
        for y in [0.5, 7.0, 1234.5, 1e6]:
            p = inverse_li(y, 'dd')
            li = li_from_2(p.value, 'dd')
            self.assertLessEqual(abs((li.value - y) + li.lo), 1e-9)

    def test_round_trip_random(self):
        rng = numpy.random.default_rng(0)
        for y in rng.uniform(0.0, 1e7, 1000):
            p = inverse_li(y)
            li = li_from_2(p.value, 'dd')
            self.assertLessEqual(abs((li.value - y) + li.lo), 1e-8, y)
            self.assertLessEqual(abs(li_from_2(p.value).value - y), 1e-8, y)

    def test_polish_large_arguments(self):
        # The double bound of Li exceeds the target near 1e7
        self.assertGreater(li_from_2(inverse_li(1e6).value).abs_err, 1e-9)
        self.assertTrue(inverse_li(1e6).escalated)
        self.assertFalse(inverse_li(10.0).escalated)

    def test_asymptotic(self):
        # iL(y) ~ y log y, approached slowly and not monotonically
        ratios = [inverse_li(y).value / (y * math.log(y)) for y in [1e3, 1e5, 1e7]]
        logging.getLogger(__name__).info('iL(y) / (y log y): %s', ratios)
        for ratio in ratios:
            self.assertTrue(1.0 < ratio < 1.2, ratio)

    def test_array(self):
        y = numpy.array([0.0, 1.0, 10.0, 1e4, 123456.0])
        p, err = inverse_li_array(y)
        for yi, pi, ei in zip(y, p, err):
            scalar = inverse_li(yi)
            self.assertLessEqual(abs(pi - scalar.value), ei + scalar.abs_err)
        with self.assertRaises(ValueError):
            inverse_li(-1.0)

    def test_floor(self):
        self.assertEqual(floor_inverse_li(1), (2, False))
        self.assertEqual(floor_inverse_li(2), (4, False))
        for n in range(1, 300):
            k, ambiguous = floor_inverse_li(n)
            self.assertFalse(ambiguous)
            self.assertLessEqual(li_from_2(k, 'dd').value, n)
            self.assertGreater(li_from_2(k + 1, 'dd').value, n)

    def test_floor_array(self):
        n = numpy.arange(0, 2000)
        floors, ambiguous = floor_inverse_li_array(n)
        self.assertFalse(ambiguous.any())
        for i in [0, 1, 2, 17, 999, 1999]:
            self.assertEqual(floors[i], floor_inverse_li(i)[0])
        # floor(iL(n)) is strictly increasing beyond n = 1
        self.assertTrue(numpy.all(numpy.diff(floors[1:]) > 0))

    def test_extreal(self):
        self.assertEqual(ExtReal(2.5, 0.1).floor(), (2, False))
        self.assertEqual(ExtReal(3.0, 1e-12).floor(), (3, True))
        self.assertEqual(ExtReal(3.0, 0.0, lo=-1e-20).floor()[0], 2)
        with self.assertRaises(ValueError):
            ExtReal(1.0, -1.0)


class TestFourier(unittest.TestCase):

    def setUp(self):
        setup_logging(level=40, update=True)

    def test_psi(self):
        self.assertEqual(psi_frac(0.0), -0.5)
        self.assertEqual(psi_frac(0.75), 0.25)
        self.assertEqual(psi_frac(-0.25), 0.25)
        self.assertEqual(list(psi_frac(numpy.array([1.0, 2.5]))), [-0.5, 0.0])

    def test_psi_truncated(self):
        for H in [1, 7, 100]:
            self.assertAlmostEqual(psi_truncated(0.0, H), 0.0, places=12)
        self.assertAlmostEqual(psi_truncated(0.5, 1), 0.0, places=12)
        self.assertLess(abs(psi_truncated(0.25, 50) + 0.25), 0.05)

    def test_coefficients(self):
        t = FourierTruncation(3)
        self.assertAlmostEqual(t.coefficient(1), 1j / (2 * math.pi))
        self.assertAlmostEqual(t.coefficient(-2), -1j / (4 * math.pi))
        with self.assertRaises(ValueError):
            t.coefficient(0)
        with self.assertRaises(ValueError):
            t.coefficient(4)
        with self.assertRaises(ValueError):
            FourierTruncation(0)

    def test_series_large_argument(self):
        # The phases are reduced exactly, so shifting by an integer is harmless
        t = FourierTruncation(20)
        self.assertAlmostEqual(t.evaluate(0.25), t.evaluate(2.0**40 + 0.25), places=10)

    def test_truncation_constant(self):
        thetas = numpy.linspace(0.0, 1.0, 1001)
        self.assertLess(truncation_constant(thetas, 100), 1.0)

    def test_truncation_constant_random(self):
        rng = numpy.random.default_rng(3)
        thetas = rng.uniform(-5.0, 5.0, 10**4)
        thetas = thetas[distance_to_integer(thetas) >= 1e-3]
        for H in [16, 256]:
            constant = truncation_constant(thetas, H)
            logging.getLogger(__name__).info('truncation constant at H=%d: %g', H, constant)
            self.assertLessEqual(constant, 2.0)

    def test_g_weight(self):
        self.assertAlmostEqual(g_weight(0.5, 10), 0.2)
        self.assertEqual(g_weight(0.0, 100), 1.0)
        self.assertEqual(g_weight(0.001, 10), 1.0)
        self.assertAlmostEqual(g_weight(2.75, 10), 0.4)
        with self.assertRaises(ValueError):
            g_weight(0.5, 0)

    def test_coeff_g(self):
        self.assertAlmostEqual(fourier_coeff_g(0, 10), 0.2 * (1 + math.log(5)), places=10)
        for h in [1, 3, 10, 37]:
            self.assertAlmostEqual(fourier_coeff_g(h, 10), fourier_coeff_g_closed_form(h, 10), places=8)
        # Even function of h
        self.assertAlmostEqual(fourier_coeff_g(-3, 10), fourier_coeff_g(3, 10), places=10)
        self.assertEqual(fourier_coeff_g(1, 2), 0.0)

    def test_coeff_g_decay(self):
        self.assertLessEqual(abs(fourier_coeff_g(100, 16)), 4 * 16 / 1e4)
        constant = coefficient_decay_constant([0, 1, 5, 50, 500], 64, closed_form=True)
        self.assertLess(constant, 10.0)


if __name__ == '__main__':
    unittest.main()
