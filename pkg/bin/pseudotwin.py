#!/usr/bin/env python

"""Verification experiments on primes of the form floor(iL(n))."""

import sys
from pseudotwin.cli import main

if __name__ == '__main__':
    sys.exit(main())
