# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Direct evaluation of exponential sums and empirical checks of the
estimates they obey: Type I sums, the Weyl-differenced S_0 sums, the
Weyl-van der Corput inequality and bilinear Type II sums.
"""

import logging
from .report import *
from .linear import *
from .bilinear import *
from pseudotwin.core.utils import NullHandler
logging.getLogger(__name__).addHandler(NullHandler())
