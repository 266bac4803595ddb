# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""Run configuration of the command line experiments."""

from pseudotwin.core.utils import UsageError

__all__ = ['RunConfig', 'commands']

# Parameters accepted by each command: (required, optional)
commands = {
    'lival': (['x'], []),
    'pihat': (['x'], []),
    'pihat-table': (['checkpoints'], []),
    'expsum-linear': (['h', 'l', 'N'], ['N1']),
    'expsum-s0': (['h', 'q', 'k', 'L'], []),
    'expsum-bilinear': (['h', 'K', 'L', 'u'], []),
    'wvdc-fuzz': ([], ['trials', 'max_K']),
    'vaughan-verify': (['u', 'v', 'max_n'], []),
    'decompose': (['h', 'N'], ['N2', 'u', 'v']),
    's-total': (['N'], ['N2', 'H', 'u', 'v']),
    'sigma': (['N'], ['N1', 'H']),
    'goldens': ([], []),
}

precisions = ('double', 'dd')


class RunConfig(object):

    """
    The configuration of a single run: a `command`, its numeric
    `params` and the execution settings `threads`, `precision`, `seed`
    and `out` (a path, or None for standard output).

    Only the parameters relevant to the command are accepted.
    """

    def __init__(self, command, params=None, threads=1, precision='double',
                 seed=0, out=None, goldens=None, regenerate=False):
        self.command = command
        self.params = {} if params is None else {k: v for k, v in params.items() if v is not None}
        self.threads = threads
        self.precision = precision
        self.seed = seed
        self.out = out
        self.goldens = goldens
        self.regenerate = regenerate
        self.validate()

    def __repr__(self):
        return 'RunConfig(command=%r, params=%r, threads=%r, precision=%r, seed=%r, out=%r)' % \
            (self.command, self.params, self.threads, self.precision, self.seed, self.out)

    def validate(self):
        """Raise `UsageError` if the configuration is not valid."""
        if self.command not in commands:
            raise UsageError('unknown command %s' % self.command)
        required, optional = commands[self.command]
        missing = [key for key in required if key not in self.params]
        if missing:
            raise UsageError('%s: missing parameters %s' % (self.command, ', '.join(missing)))
        unknown = [key for key in self.params if key not in required + optional]
        if unknown:
            raise UsageError('%s: unknown parameters %s' % (self.command, ', '.join(sorted(unknown))))
        if self.threads is None or int(self.threads) < 1:
            raise UsageError('threads must be a positive integer, got %s' % self.threads)
        if self.precision not in precisions:
            raise UsageError('precision must be one of %s, got %s' % (', '.join(precisions), self.precision))
        if not 0 <= int(self.seed) < 2**64:
            raise UsageError('seed must be a 64-bit unsigned integer, got %s' % self.seed)
        if self.command == 'goldens' and self.goldens is None:
            raise UsageError('goldens: a golden store path is required')

    def param(self, key, default=None):
        return self.params.get(key, default)

    def as_dict(self):
        """Flat dict of the configuration, for the parameter report."""
        db = {'command': self.command, 'threads': self.threads,
              'precision': self.precision, 'seed': self.seed}
        db.update(self.params)
        return db
