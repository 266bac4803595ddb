#!/usr/bin/env python

import os
import shutil
import tempfile
import unittest
from pseudotwin.core import utils, parallel
from pseudotwin.core.utils import setup_logging


class Test(unittest.TestCase):

    def setUp(self):
        setup_logging(level=40, update=True)
        self.dirbase = tempfile.mkdtemp()

    def test_mkdir(self):
        dirout = os.path.join(self.dirbase, 'a', 'b')
        utils.mkdir([dirout, dirout])
        self.assertTrue(os.path.isdir(dirout))
        utils.mkdir(None)

    def test_timer(self):
        t = utils.Timer()
        t.start()
        t.stop()
        self.assertGreaterEqual(t.wall_time, 0.0)
        with utils.Timer() as t:
            pass
        self.assertGreaterEqual(t.cpu_time, 0.0)

    def test_timer_not_started(self):
        with self.assertRaises(ValueError):
            utils.Timer().stop()

    def test_log_to_stderr(self):
        log = utils.log_to_stderr()
        try:
            self.assertEqual(log.name, 'pseudotwin')
            self.assertLessEqual(log.level, 20)
        finally:
            log.removeHandler(log.handlers[-1])
            log.setLevel(40)

    def test_budget(self):
        utils.check_budget(10, 10, 'x')
        with self.assertRaises(utils.BudgetExceeded):
            utils.check_budget(11, 10, 'x')
        # Budget errors are value errors
        self.assertTrue(issubclass(utils.BudgetExceeded, ValueError))
        self.assertTrue(issubclass(utils.GoldenConflict, utils.AcceptanceFailure))

    def test_report_parameters(self):
        txt = utils.report_parameters({'N': 1024, 'h': 1}, self.dirbase + '/params', '1.0.0')
        self.assertIn('N       = 1024', txt)
        with open(self.dirbase + '/params') as fh:
            self.assertEqual(fh.read(), txt)

    def test_split(self):
        blocks = parallel.split(1, 11, 4)
        self.assertEqual(blocks, [(1, 5), (5, 9), (9, 11)])
        self.assertEqual(parallel.split(5, 5, 4), [])

    def test_block_map_threads(self):
        blocks = parallel.split(0, 1000, 7)

        def func(bounds):
            return sum(range(*bounds))

        serial = parallel.block_map(func, blocks, 1)
        threaded = parallel.block_map(func, blocks, 4)
        self.assertEqual(serial, threaded)
        self.assertEqual(sum(serial), 999 * 1000 // 2)

    def test_default_threads(self):
        current = parallel.threads
        try:
            parallel.threads = 3
            self.assertEqual(parallel.default_threads(), 3)
            parallel.threads = None
            os.environ['PSEUDOTWIN_THREADS'] = '2'
            self.assertEqual(parallel.default_threads(), 2)
            os.environ['PSEUDOTWIN_THREADS'] = 'many'
            self.assertEqual(parallel.default_threads(), 1)
        finally:
            parallel.threads = current
            os.environ.pop('PSEUDOTWIN_THREADS', None)

    def test_progress(self):
        from pseudotwin.core.progress import progress
        values = []
        with progress(total=3) as bar:
            for i in range(3):
                values.append(i)
                bar.update(i + 1)
        self.assertEqual(values, [0, 1, 2])

    def tearDown(self):
        shutil.rmtree(self.dirbase)


if __name__ == '__main__':
    unittest.main()
