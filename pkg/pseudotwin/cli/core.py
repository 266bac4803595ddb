# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Command line experiments.

Each command maps a `RunConfig` to a CSV table with a fixed column
order. Exit codes: 0 on success, 1 on acceptance failure, golden
conflict or undecided floor, 2 on usage error.
"""

import sys
import math
import datetime
import argparse
import logging
import numpy

from pseudotwin.core import __version__
from pseudotwin.core.utils import setup_logging, log_to_stderr, report_parameters, Timer, \
    UsageError, BudgetExceeded, AcceptanceFailure, AmbiguityError, ConvergenceError
from pseudotwin.core.parallel import default_threads
from pseudotwin.arith.sieve import DyadicRange, tabulate
from pseudotwin.specfun.li import li_from_2, inverse_li, floor_inverse_li
from pseudotwin.expsums.linear import linear_bound_report, s0_sum
from pseudotwin.expsums.bilinear import CoefficientPair, bilinear_sum, wvdc_check
from pseudotwin.vaughan.identity import coeff_a_table, verify_identity_range
from pseudotwin.vaughan.decomposition import VaughanParams, decompose_sum, s_total
from pseudotwin.counting.pihat import pi_hat, pi_hat_table
from pseudotwin.counting.sigma import sigma_terms
from .config import RunConfig, commands
from .goldens import GoldenStore, emit_goldens
from .table import TableCSV

__all__ = ['run', 'main', 'build_parser', 'columns']

_log = logging.getLogger(__name__)

# These module level variables can be tweaked at run time
ratio_ceiling = 10.0
"""Largest accepted bound ratio."""
rel_err_tolerance = 1e-6
"""Largest accepted relative error of the decomposition."""
ratio_window = (0.5, 1.5)
"""Accepted range of pi_hat/model from `window_start` on."""
window_start = 10**6
trend_start = 10**4
"""Smallest checkpoint entering the trend check of |ratio - 1|."""
trend_slack = 0.05
"""Allowed increase of |ratio - 1| between consecutive checkpoints."""
power_growth = 3.0
"""Largest accepted growth of S/N^{21/22} between consecutive N."""

columns = {
    'lival': ['x', 'li', 'abs_err', 'inverse_li', 'floor_inverse_li', 'ambiguous'],
    'pihat': ['x', 'pi_hat', 'model', 'ratio', 'ambiguous'],
    'pihat-table': ['x', 'pi_hat', 'model', 'ratio', 'ambiguous'],
    'expsum-linear': ['h', 'l', 'N', 'N1', 're', 'im', 'lhs', 'bound', 'ratio'],
    'expsum-s0': ['h', 'q', 'k', 'L', 're', 'im', 'lhs', 'bound', 'ratio'],
    'expsum-bilinear': ['h', 'K', 'L', 'u', 'A', 'B', 're', 'im', 'lhs', 'bound', 'ratio'],
    'wvdc-fuzz': ['trial', 'K', 'Q', 'lhs', 'rhs', 'ok'],
    'vaughan-verify': ['checked', 'failures'],
    'decompose': ['h', 'N', 'N2', 'u', 'v'] +
                 ['%s_%s' % (key, part) for key in ('S1', 'S2', 'S3', 'S4', 'S5', 'total', 'direct')
                  for part in ('re', 'im')] + ['rel_err'],
    's-total': ['N', 'N2', 'H', 'u', 'v', 'S', 'power_ratio', 'log_ratio'],
    'sigma': ['N', 'N1', 'H', 'sigma', 'sigma1_re', 'sigma1_im', 'sigma2', 'normalized',
              'truncation_constant'],
    'goldens': ['key', 'value', 'provenance'],
}


class _Outcome(object):

    """Rows, golden values and failed checks of a command."""

    def __init__(self):
        self.rows = []
        self.goldens = {}
        self.failures = []

    def check(self, condition, message):
        if not condition:
            self.failures.append(message)


def _key(command, what, **params):
    return '%s:%s:%s' % (command, what, ';'.join('%s=%s' % (k, params[k]) for k in sorted(params)))


def _as_list(value):
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


def _lival(config, out):
    for x in _as_list(config.param('x')):
        li = li_from_2(x, config.precision)
        inv = inverse_li(x, config.precision)
        floor, ambiguous = floor_inverse_li(int(math.floor(x)))
        out.rows.append([float(x), li.value, li.abs_err, inv.value, floor, bool(ambiguous)])
        out.check(not ambiguous, 'undecided floor of iL(%d)' % math.floor(x))


def _record_rows(command, records, out):
    for record in records:
        out.rows.append([record.x, record.pi_hat, record.model, record.ratio, record.ambiguous_count])
        out.goldens[_key(command, 'ratio', x=record.x)] = record.ratio
        out.check(record.ambiguous_count == 0, '%d undecided floors up to x=%d' %
                  (record.ambiguous_count, record.x))


def _pihat(config, out):
    _record_rows('pihat', [pi_hat(config.param('x'), config.threads)], out)


def _pihat_table(config, out):
    records = pi_hat_table(_as_list(config.param('checkpoints')), config.threads)
    _record_rows('pihat-table', records, out)
    low, high = ratio_window
    previous = None
    for record in records:
        if record.x >= window_start:
            out.check(low <= record.ratio <= high, 'ratio %g outside [%g, %g] at x=%d' %
                      (record.ratio, low, high, record.x))
        if record.x < trend_start:
            continue
        if previous is not None:
            out.check(abs(record.ratio - 1) <= abs(previous.ratio - 1) + trend_slack,
                      '|ratio - 1| grows from %g at x=%d to %g at x=%d' %
                      (abs(previous.ratio - 1), previous.x, abs(record.ratio - 1), record.x))
        previous = record


def _bound_row(command, keys, report, out):
    params = report.params
    out.rows.append([params[key] for key in keys] +
                    [report.value.real, report.value.imag, report.lhs, report.bound, report.ratio])
    out.goldens[_key(command, 'ratio', **{key: params[key] for key in keys})] = report.ratio
    out.check(report.ratio <= ratio_ceiling, 'ratio %g above %g for %s' %
              (report.ratio, ratio_ceiling, report))


def _expsum_linear(config, out):
    N = config.param('N')
    rng = DyadicRange(N, config.param('N1'))
    for h in _as_list(config.param('h')):
        report = linear_bound_report(h, config.param('l'), rng, config.precision, config.threads)
        _bound_row('expsum-linear', ['h', 'l', 'N', 'N1'], report, out)


def _expsum_s0(config, out):
    for h in _as_list(config.param('h')):
        _, report = s0_sum(h, config.param('q'), config.param('k'), config.param('L'), config.precision)
        _bound_row('expsum-s0', ['h', 'q', 'k', 'L'], report, out)


def _expsum_bilinear(config, out):
    # a(l) on the first factor, the von Mangoldt function on the second
    K, L, u = config.param('K'), config.param('L'), config.param('u')
    alpha = coeff_a_table(L + 1, 2 * L + 1, u)
    beta = tabulate(2 * K + 1)[0][K + 1:]
    pair = CoefficientPair(alpha, beta, L, K, A=1.5, B=0.5)
    for h in _as_list(config.param('h')):
        _, report = bilinear_sum(pair, h, precision=config.precision, nthreads=config.threads)
        report.params['u'] = u
        _bound_row('expsum-bilinear', ['h', 'K', 'L', 'u', 'A', 'B'], report, out)


def _wvdc_fuzz(config, out):
    rng = numpy.random.default_rng(config.seed)
    max_K = config.param('max_K', 64)
    for trial in range(config.param('trials', 1000)):
        K = int(rng.integers(1, max_K + 1))
        Q = int(rng.integers(1, K + 1))
        z = rng.standard_normal(K) + 1j * rng.standard_normal(K)
        lhs, rhs = wvdc_check(z, Q)
        ok = lhs <= rhs * (1 + 1e-9) + 1e-12
        out.rows.append([trial, K, Q, lhs, rhs, bool(ok)])
        out.check(ok, 'inequality fails at trial %d (K=%d, Q=%d)' % (trial, K, Q))


def _vaughan_verify(config, out):
    checked, failures = verify_identity_range(config.param('max_n'), config.param('u'), config.param('v'))
    out.rows.append([checked, len(failures)])
    out.check(len(failures) == 0, 'identity fails at n = %s' % failures[:10])


def _params(config):
    return VaughanParams(config.param('N'), config.param('N2'), config.param('u'),
                         config.param('v'), config.param('H'))


def _decompose(config, out):
    params = _params(config)
    for h in _as_list(config.param('h')):
        result = decompose_sum(h, params, config.precision)
        row = [h, params.N, params.N2, params.u, params.v]
        for key in ('S1', 'S2', 'S3', 'S4', 'S5', 'total', 'direct'):
            row += [result[key].real, result[key].imag]
        out.rows.append(row + [result['rel_err']])
        out.check(result['rel_err'] <= rel_err_tolerance, 'decomposition off by %g at h=%d' %
                  (result['rel_err'], h))


def _s_total(config, out):
    previous = None
    for N in _as_list(config.param('N')):
        params = VaughanParams(N, config.param('N2'), config.param('u'), config.param('v'), config.param('H'))
        result = s_total(params, config.precision, config.threads)
        out.rows.append([params.N, params.N2, params.H, params.u, params.v,
                         result['S'], result['power_ratio'], result['log_ratio']])
        out.goldens[_key('s-total', 'power_ratio', N=params.N, N2=params.N2, H=params.H)] = result['power_ratio']
        if previous is not None and previous > 0:
            out.check(result['power_ratio'] < power_growth * previous,
                      'S/N^(21/22) grows by %g from N=%d' % (result['power_ratio'] / previous, N))
        previous = result['power_ratio']


def _sigma(config, out):
    rng = DyadicRange(config.param('N'), config.param('N1'))
    H = config.param('H')
    if H is None:
        H = int(math.ceil(math.log(rng.N)**4))
    report = sigma_terms(rng, H, config.precision)
    out.rows.append([rng.N, rng.N1, H, report.sigma, report.sigma1.real, report.sigma1.imag,
                     report.sigma2, report.normalized, report.truncation_constant])
    out.goldens[_key('sigma', 'normalized', N=rng.N, N1=rng.N1, H=H)] = report.normalized


def _goldens(config, out):
    store = GoldenStore(config.goldens)
    for key in store.keys():
        value, provenance = store.entries[key]
        out.rows.append([key, value, provenance])


_commands = {
    'lival': _lival,
    'pihat': _pihat,
    'pihat-table': _pihat_table,
    'expsum-linear': _expsum_linear,
    'expsum-s0': _expsum_s0,
    'expsum-bilinear': _expsum_bilinear,
    'wvdc-fuzz': _wvdc_fuzz,
    'vaughan-verify': _vaughan_verify,
    'decompose': _decompose,
    's-total': _s_total,
    'sigma': _sigma,
    'goldens': _goldens,
}


def _provenance(config):
    return '%s %s seed=%d threads=%d precision=%s' % \
        (config.command, datetime.date.today().isoformat(), config.seed,
         config.threads, config.precision)


def _store_goldens(config, goldens):
    if config.goldens is None or config.command == 'goldens' or len(goldens) == 0:
        return
    store = GoldenStore(config.goldens)
    provenance = _provenance(config)
    # Check everything before writing anything
    for key in sorted(goldens):
        store.record(key, goldens[key], provenance, regenerate=config.regenerate)
    emit_goldens(store, config.goldens)


def run(config):
    """
    Execute the command of the `RunConfig` `config` and write its CSV
    table to `config.out`. Return the exit code.
    """
    try:
        config.validate()
        outcome = _Outcome()
        with Timer() as timer:
            _commands[config.command](config, outcome)
        _log.info('%s done in %s', config.command, timer)
        with TableCSV(columns[config.command], config.out) as table:
            for row in outcome.rows:
                table.write(row)
        if config.out not in (None, '-'):
            report_parameters(config.as_dict(), config.out + '.params', __version__)
        if outcome.failures:
            raise AcceptanceFailure('; '.join(outcome.failures))
        _store_goldens(config, outcome.goldens)
    except (UsageError, BudgetExceeded, OverflowError, ValueError) as error:
        _log.error('%s', error)
        return 2
    except (AssertionError, AmbiguityError, ConvergenceError) as error:
        _log.error('%s', error)
        return 1
    except Exception as error:
        _log.error('%s failed: %s: %s', config.command, type(error).__name__, error)
        return 1
    return 0


def _integers(value):
    return [int(x) for x in value.split(',')]


def _floats(value):
    return [float(x) for x in value.split(',')]


def build_parser():
    """Return the argparse parser with one sub-command per command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-t', '--threads', dest='threads', type=int, default=None, help='number of threads')
    common.add_argument(      '--precision', dest='precision', choices=['double', 'dd'], default='double', help='evaluation width of Li')
    common.add_argument(      '--seed', dest='seed', type=int, default=0, help='seed of random number generator')
    common.add_argument('-o', '--out', dest='out', default=None, help='output CSV file (default: stdout)')
    common.add_argument('-g', '--goldens', dest='goldens', default=None, help='golden store file')
    common.add_argument(      '--regenerate', dest='regenerate', action='store_true', help='overwrite golden values')
    common.add_argument(      '--progress', dest='progress', action='store_true', help='show progress bar on stderr')
    common.add_argument('-v', '--verbose', dest='verbose', action='store_true', help='verbose output')
    common.add_argument('-d', '--debug', dest='debug', action='store_true', help='debug output')

    parser = argparse.ArgumentParser(description='Verification experiments on primes of the form floor(iL(n)).')
    parser.set_defaults(command=None)
    subparsers = parser.add_subparsers()

    def add(command, *arguments):
        sub = subparsers.add_parser(command, parents=[common])
        for flag, dest, kind, help in arguments:
            sub.add_argument(flag, dest=dest, type=kind, default=None, help=help)
        sub.set_defaults(command=command)
        return sub

    x = ('--x', 'x', int, 'upper limit')
    h = ('--h', 'h', _integers, 'frequencies (comma separated)')
    N = ('--N', 'N', int, 'lower end of the range')
    u = ('--u', 'u', int, 'Vaughan parameter u')
    v = ('--v', 'v', int, 'Vaughan parameter v')
    H = ('--H', 'H', int, 'truncation of the Fourier series')
    add('lival', ('--x', 'x', _floats, 'arguments (comma separated)'))
    add('pihat', x)
    add('pihat-table', ('--checkpoints', 'checkpoints', _integers, 'ascending checkpoints (comma separated)'))
    add('expsum-linear', h, ('--l', 'l', int, 'multiplier'), N, ('--N1', 'N1', int, 'upper end of the range'))
    add('expsum-s0', h, ('--q', 'q', int, 'shift'), ('--k', 'k', int, 'base'), ('--L', 'L', int, 'range of l'))
    add('expsum-bilinear', h, ('--K', 'K', int, 'range of k'), ('--L', 'L', int, 'range of l'), u)
    add('wvdc-fuzz', ('--trials', 'trials', int, 'number of random sequences'),
        ('--max-K', 'max_K', int, 'largest sequence length'))
    add('vaughan-verify', u, v, ('--max-n', 'max_n', int, 'largest n'))
    add('decompose', h, N, ('--N2', 'N2', int, 'upper end of the range'), u, v)
    add('s-total', ('--N', 'N', _integers, 'lower ends of the ranges (comma separated)'),
        ('--N2', 'N2', int, 'upper end of the range'), H, u, v)
    add('sigma', N, ('--N1', 'N1', int, 'upper end of the range'), H)
    add('goldens')
    return parser


def _config(args):
    required, optional = commands[args.command]
    params = {key: getattr(args, key) for key in required + optional}
    threads = args.threads
    if threads is None:
        threads = default_threads()
    return RunConfig(args.command, params, threads=threads, precision=args.precision,
                     seed=args.seed, out=args.out, goldens=args.goldens,
                     regenerate=args.regenerate)


def main(argv=None):
    """Parse `argv` and run the command. Return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code
    if args.command is None:
        parser.print_help(sys.stderr)
        return 2

    if args.debug:
        log_to_stderr(logging.DEBUG)
    elif args.verbose:
        log_to_stderr()
    else:
        setup_logging('pseudotwin', 40, update=True)
    if args.progress:
        import pseudotwin.core.progress
        pseudotwin.core.progress.active = True

    try:
        config = _config(args)
    except UsageError as error:
        _log.error('%s', error)
        return 2
    return run(config)
