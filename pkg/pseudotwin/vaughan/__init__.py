# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Vaughan's identity: exact verification in the log-prime basis, the
coefficients a(ℓ) and b(r), and the decomposition of the prime
exponential sum into S1, S2 and S3 = S4 + S5.
"""

import logging
from .logprime import *
from .identity import *
from .decomposition import *
from pseudotwin.core.utils import NullHandler
logging.getLogger(__name__).addHandler(NullHandler())
