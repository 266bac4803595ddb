# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""CSV tables with a header row, LF line endings and full float precision."""

import sys
import csv
import numbers

__all__ = ['TableCSV', 'format_value']


def format_value(value, precision=17):
    """Format `value` for a CSV cell: 17 significant digits for floats."""
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, numbers.Integral):
        return '%d' % value
    if isinstance(value, numbers.Real):
        return '%.*g' % (precision, value)
    if isinstance(value, numbers.Complex):
        raise TypeError('split complex values in real and imaginary columns')
    return str(value)


class TableCSV(object):

    """
    Write rows with a fixed column order to `filename`, or to stdout
    if `filename` is None or '-'.
    """

    def __init__(self, columns, filename=None):
        self.columns = list(columns)
        self.filename = filename
        self.precision = 17
        if filename is None or filename == '-':
            self._file = sys.stdout
            self._close = False
        else:
            self._file = open(filename, 'w', newline='')
            self._close = True
        self._writer = csv.writer(self._file, lineterminator='\n')
        self._writer.writerow(self.columns)

    def __enter__(self):
        return self

    def __exit__(self, *args):
        self.close()

    def write(self, row):
        """Write a row, given as a dict keyed by column or as a sequence."""
        if isinstance(row, dict):
            missing = [key for key in self.columns if key not in row]
            if missing:
                raise KeyError('missing columns %s' % missing)
            row = [row[key] for key in self.columns]
        if len(row) != len(self.columns):
            raise ValueError('row has %d cells, expected %d' % (len(row), len(self.columns)))
        self._writer.writerow([format_value(value, self.precision) for value in row])

    def close(self):
        self._file.flush()
        if self._close:
            self._file.close()
