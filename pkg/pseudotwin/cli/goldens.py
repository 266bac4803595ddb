# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Golden values: empirical constants recorded on a first run and
compared against on every later run.

The store is a versioned text table

    # pseudotwin golden store
    # version: 1.0.0
    key,value,provenance
    pihat-table:ratio:x=1000,1.0394...,pihat-table 2024-05-01 seed=0 threads=1

A value is written once; overwriting it needs `regenerate=True`.
"""

import os
import csv
import math
import logging

from pseudotwin.core import __version__
from pseudotwin.core.utils import GoldenConflict, mkdir

__all__ = ['GoldenStore', 'emit_goldens']

_log = logging.getLogger(__name__)

header = ['key', 'value', 'provenance']


class GoldenStore(object):

    """Versioned map from experiment keys to (value, provenance)."""

    def __init__(self, path=None, rtol=1e-9):
        self.path = path
        self.rtol = rtol
        self.version = __version__
        self.entries = {}
        if path is not None and os.path.exists(path):
            self.read(path)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries

    def __getitem__(self, key):
        return self.entries[key][0]

    def keys(self):
        return sorted(self.entries)

    def read(self, path):
        with open(path) as fh:
            lines = fh.readlines()
        rows = []
        for line in lines:
            if line.startswith('# version:'):
                self.version = line.split(':', 1)[1].strip()
            elif not line.startswith('#') and line.strip():
                rows.append(line)
        for row in csv.reader(rows[1:]):
            key, value, provenance = row
            self.entries[key] = (float(value), provenance)

    def matches(self, key, value):
        stored = self.entries[key][0]
        return math.isclose(stored, value, rel_tol=self.rtol, abs_tol=self.rtol)

    def record(self, key, value, provenance, regenerate=False):
        """
        Record `value` under `key`.

        A new key is stored. An existing key is compared: a mismatch
        raises `GoldenConflict` unless `regenerate` is True, in which
        case the value is replaced.
        """
        value = float(value)
        if key in self.entries:
            if self.matches(key, value):
                return
            if not regenerate:
                raise GoldenConflict('golden %s = %r, new value %r (use regenerate to overwrite)' %
                                     (key, self.entries[key][0], value))
            _log.info('regenerating golden %s: %r -> %r', key, self.entries[key][0], value)
        else:
            _log.info('recording golden %s = %r', key, value)
        self.entries[key] = (value, provenance)

    def write(self, fh):
        fh.write('# pseudotwin golden store\n')
        fh.write('# version: %s\n' % self.version)
        writer = csv.writer(fh, lineterminator='\n')
        writer.writerow(header)
        for key in self.keys():
            value, provenance = self.entries[key]
            writer.writerow([key, '%.17g' % value, provenance])

    def save(self, path=None):
        path = self.path if path is None else path
        mkdir(os.path.dirname(path))
        with open(path, 'w', newline='') as fh:
            self.write(fh)


def emit_goldens(store, path):
    """Write the `GoldenStore` `store` to `path` as a text table."""
    if store is None:
        raise ValueError('missing golden store')
    store.save(path)
