#!/usr/bin/env python

import os
import math
import unittest
from sympy import factorint
from pseudotwin.core.utils import setup_logging
from pseudotwin.arith import DyadicRange, primes_between
from pseudotwin.specfun import li_from_2, psi_frac, g_weight, FourierTruncation
from pseudotwin.counting import PrimeSweep, Scheduler, SweepEnd, CountRecord, write_record, \
    indicator, pi_hat, pi_hat_via_n, pi_hat_table, prime_reciprocal_log_sum, \
    sigma_terms, sigma1_endpoint_report


def _pi_hat(x):
    """Count by scalar escalated Li evaluations."""
    count = 0
    for p in primes_between(2, x + 1):
        p = int(p)
        lower = math.floor(li_from_2(p, 'dd').value)
        upper = math.floor(li_from_2(p + 1, 'dd').value)
        count += upper - lower
    return count


def _mangoldt(n):
    factors = factorint(n)
    return math.log(list(factors)[0]) if len(factors) == 1 else 0.0


class TestPiHat(unittest.TestCase):

    def setUp(self):
        setup_logging(level=40, update=True)

    def test_indicator(self):
        self.assertEqual(indicator(2), (1, False))
        self.assertEqual(indicator(3), (0, False))
        with self.assertRaises(ValueError):
            indicator(1)

    def test_smallest(self):
        record = pi_hat(2)
        self.assertEqual(record.pi_hat, 1)
        self.assertEqual(record.ambiguous_count, 0)
        self.assertEqual(pi_hat_via_n(2), 1)

    def test_oracle(self):
        self.assertEqual(pi_hat(500).pi_hat, _pi_hat(500))

    def test_two_routes(self):
        for x in [100, 1000, 12345, 10**5]:
            self.assertEqual(pi_hat(x).pi_hat, pi_hat_via_n(x))
        self.assertEqual(pi_hat(10**5).pi_hat, 951)

    def test_threads(self):
        sweep = PrimeSweep(segment=1000, nthreads=1)
        sweep.run(50000)
        threaded = PrimeSweep(segment=1000, nthreads=4)
        threaded.run(50000)
        self.assertEqual(sweep.record(), threaded.record())

    def test_record(self):
        record = CountRecord(1000, 80)
        self.assertAlmostEqual(record.model, 1000 / math.log(1000)**2)
        self.assertAlmostEqual(record.ratio, 80 / record.model)
        with self.assertRaises(ValueError):
            CountRecord(1, 0)

    def test_table(self):
        self.assertEqual(pi_hat_table([]), [])
        records = pi_hat_table([1000])
        self.assertEqual(records, [pi_hat(1000)])
        records = pi_hat_table([1000, 2000, 5000])
        self.assertEqual([r.x for r in records], [1000, 2000, 5000])
        self.assertEqual(records[1].pi_hat, pi_hat(2000).pi_hat)
        with self.assertRaises(ValueError):
            pi_hat_table([2000, 1000])
        with self.assertRaises(ValueError):
            pi_hat_table([1, 1000])

    def test_table_trend(self):
        if not os.environ.get('PSEUDOTWIN_SLOW'):
            self.skipTest('slow test')
        records = pi_hat_table([10**4, 10**5, 10**6, 10**7, 10**8], nthreads=4)
        for record in records:
            self.assertEqual(record.ambiguous_count, 0)
        gaps = [abs(r.ratio - 1) for r in records]
        for a, b in zip(gaps[:-1], gaps[1:]):
            self.assertLessEqual(b, a + 0.05)
        self.assertTrue(0.5 <= records[-1].ratio <= 1.5)

    def test_reciprocal_log_sum(self):
        expected = sum(1 / math.log(p) for p in [2, 3, 5, 7])
        self.assertAlmostEqual(prime_reciprocal_log_sum(10), expected)
        self.assertEqual(prime_reciprocal_log_sum(1), 0.0)


class TestSweep(unittest.TestCase):

    def setUp(self):
        setup_logging(level=40, update=True)

    def test_interval(self):
        sweep = PrimeSweep(segment=100)
        records = []
        sweep.add(write_record, Scheduler(250), records)
        sweep.run(1000)
        self.assertEqual([r.x for r in records], [250, 500, 750, 1000])
        self.assertEqual(records[-1].pi_hat, pi_hat(1000).pi_hat)

    def test_integer_scheduler(self):
        sweep = PrimeSweep()
        records = []
        sweep.add(write_record, 100, records)
        sweep.run(300)
        self.assertEqual(len(records), 3)

    def test_calls(self):
        sweep = PrimeSweep()
        records = []
        sweep.add(write_record, Scheduler(calls=4), records)
        sweep.run(400)
        self.assertEqual([r.x for r in records], [100, 200, 300, 400])

    def test_multiple_run_calls(self):
        sweep = PrimeSweep()
        sweep.run(1000)
        sweep.run(3000)
        self.assertEqual(sweep.current_x, 3000)
        self.assertEqual(sweep.pi_hat, pi_hat(3000).pi_hat)
        sweep.run_until(4000)
        self.assertEqual(sweep.current_x, 4000)

    def test_custom_target(self):
        def target_count(sweep, n):
            if sweep.pi_hat >= n:
                raise SweepEnd('found %d' % n)

        sweep = PrimeSweep()
        sweep.add(target_count, Scheduler(10), 20)
        sweep.run(10**5)
        self.assertLess(sweep.current_x, 10**5)
        self.assertGreaterEqual(sweep.pi_hat, 20)

    def test_swapped_arguments(self):
        sweep = PrimeSweep()
        with self.assertRaises(AssertionError):
            sweep.add(Scheduler(10), lambda sweep: None)


class TestSigma(unittest.TestCase):

    def setUp(self):
        setup_logging(level=40, update=True)

    def test_empty_support(self):
        # 1327 and 1361 are consecutive primes, with no prime power in between
        report = sigma_terms(DyadicRange(1332, 1360), 10)
        self.assertEqual(report.sigma, 0.0)
        self.assertEqual(report.sigma1, 0j)
        self.assertEqual(report.sigma2, 0.0)
        self.assertEqual(report.truncation_constant, 0.0)

    def test_direct(self):
        rng, H = DyadicRange(64), 20
        truncation = FourierTruncation(H)
        sigma = sigma1 = sigma2 = 0.0
        for n in rng:
            weight = _mangoldt(n)
            if weight == 0:
                continue
            a, b = li_from_2(n, 'dd').value, li_from_2(n + 1, 'dd').value
            sigma += weight * (psi_frac(a) - psi_frac(b))
            sigma1 += weight * (truncation.evaluate(a) - truncation.evaluate(b))
            sigma2 += weight * (g_weight(a, H) + g_weight(b, H))
        report = sigma_terms(rng, H)
        self.assertAlmostEqual(report.sigma, sigma, places=9)
        self.assertAlmostEqual(report.sigma1.real, sigma1, places=9)
        self.assertAlmostEqual(report.sigma1.imag, 0.0, places=9)
        self.assertAlmostEqual(report.sigma2, sigma2, places=9)
        self.assertAlmostEqual(report.normalized, sigma * math.log(64)**2 / 64)

    def test_truncation(self):
        for H in [10, 1000, 2**16]:
            report = sigma_terms(DyadicRange(2**8), H)
            self.assertLess(report.truncation_constant, 1.0)
        with self.assertRaises(ValueError):
            sigma_terms(DyadicRange(2**8), 0)

    def test_endpoint(self):
        rng = DyadicRange(2**10)
        H = 30
        report = sigma1_endpoint_report(rng, H)
        self.assertAlmostEqual(report.lhs, abs(sigma_terms(rng, H).sigma1))
        self.assertGreater(report.bound, 0.0)
        self.assertLessEqual(report.ratio, 10.0)
        self.assertEqual(report['H'], H)


if __name__ == '__main__':
    unittest.main()
