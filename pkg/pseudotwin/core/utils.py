"""Helper functions"""

import os
import sys
import time
import logging


# Logging facilities

LOGGER_NAME = 'pseudotwin'

# We define the logging handler here to avoid "No handler found" warnings.
# Client classes should use this instead of logging.NullHandler
NullHandler = logging.NullHandler


class _MyFormatter(logging.Formatter):
    def format(self, record):
        if record.levelname in ['WARNING', 'ERROR']:
            return '# ' + record.levelname + ' ' + record.msg % record.args
        else:
            return '# ' + record.msg % record.args


def setup_logging(name=None, level=40, filename=None, update=False):
    """
    Logging API.

    Records go to stderr unless `filename` is given: stdout is
    reserved for CSV data.
    """
    if name is None:
        log = logging.getLogger()
    else:
        log = logging.getLogger(name)

    if update:
        # We only update the level of the logger
        log.setLevel(level)
    else:
        # The logger should always pass messages to all handlers
        current_level = log.getEffectiveLevel()
        log.setLevel(min(level, current_level))

    formatter = _MyFormatter()
    if filename is None:
        handler = logging.StreamHandler(sys.stderr)
    else:
        handler = logging.FileHandler(filename)

    handler.setFormatter(formatter)
    handler.setLevel(level)
    if update:
        if len(log.handlers) == 0:
            log.addHandler(handler)
        else:
            for other in log.handlers:
                other.setLevel(level)
    else:
        log.addHandler(handler)

    return log


def log_to_stderr(level=None):
    """
    Turn on logging and add a handler which prints to stderr
    """
    if level is None:
        level = logging.INFO
    return setup_logging(LOGGER_NAME, level)


# Exceptions

class BudgetExceeded(ValueError):
    """Raised when a request exceeds the desk compute budget."""
    pass

class ConvergenceError(RuntimeError):
    """Raised when an iterative solver or a quadrature does not converge."""
    pass

class AmbiguityError(ArithmeticError):
    """Raised when a floor cannot be decided even after escalation."""
    pass

class AcceptanceFailure(AssertionError):
    """Raised when an empirical acceptance property fails."""
    pass

class GoldenConflict(AcceptanceFailure):
    """Raised when a golden value would be overwritten or does not match."""
    pass

class UsageError(ValueError):
    """Raised on an invalid run configuration."""
    pass


def check_budget(value, limit, what):
    """Raise `BudgetExceeded` if `value` exceeds `limit`."""
    if value > limit:
        raise BudgetExceeded('%s %s exceeds budget %s' % (what, value, limit))


# Utility functions to mimic bash directory / file handling

def mkdir(dirname):
    """
    Create a directory `dirname` or a list `dirname` of directories,
    silently ignoring existing directories.

    This is just a wrapper to `os.makedirs`. All intermediate
    subdirectories are created as needed.
    """
    if dirname is None or dirname == '':
        return
    if isinstance(dirname, str):
        dirs = [dirname]
    else:
        dirs = dirname

    for dd in dirs:
        try:
            os.makedirs(dd)
        except OSError:
            pass


# Timings

class Timer(object):

    """Timer class inspired by John Paulett's stopwatch class."""

    def __init__(self):
        self.__start_cpu = None
        self.__start_wall = None
        self.cpu_time = 0.0
        self.wall_time = 0.0

    def __str__(self):
        return 'timer wall time [s]: {:.2f}, cpu time [s]: {:.2f}'.format(self.wall_time, self.cpu_time)

    __repr__ = __str__

    def start(self):
        self.__start_cpu = time.process_time()
        self.__start_wall = time.time()

    def stop(self):
        if self.__start_cpu is None:
            raise ValueError("Timer not started")
        self.cpu_time += time.process_time() - self.__start_cpu
        self.wall_time += time.time() - self.__start_wall

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, *args):
        self.stop()


def report_parameters(params, fileout, version, comment=''):
    """Report parameters."""
    maxlen = max([len(key) for key in params] + [len('version')])
    fmt = comment + '%-' + str(maxlen) + 's = %s\n'
    txt = ""
    txt += fmt % ('version', version)
    for key in sorted(params.keys()):
        txt += fmt % (key, params[key])
    if fileout is not None:
        with open(fileout, 'w') as fh:
            fh.write(txt)
    return txt
