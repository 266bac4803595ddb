# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""
Special functions: the offset logarithmic integral Li, its inverse iL,
the sawtooth ψ with its truncated Fourier series, and the weight g
with its Fourier coefficients.
"""

import logging
from .li import *
from .fourier import *
from .dd import two_sum, two_prod, dd_add, frac_of_product, unit_phase, complex_fsum
from pseudotwin.core.utils import NullHandler
logging.getLogger(__name__).addHandler(NullHandler())
