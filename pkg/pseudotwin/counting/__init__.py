# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Counting primes of the form floor(iL(n)).

The prime sweep counts π̂(x) with callbacks at checkpoints; the
Λ-weighted sums Σ, Σ1 and Σ2 measure the reduction to exponential
sums over dyadic ranges.
"""

import logging
from .sweep import *
from .pihat import *
from .sigma import *
from pseudotwin.core.utils import NullHandler
logging.getLogger(__name__).addHandler(NullHandler())
