# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Arithmetic functions over integer ranges: primality, von Mangoldt Λ,
Möbius μ, smallest prime factors and divisor counts, tabulated by a
segmented sieve.
"""

import logging
from .sieve import *
from pseudotwin.core.utils import NullHandler
logging.getLogger(__name__).addHandler(NullHandler())
