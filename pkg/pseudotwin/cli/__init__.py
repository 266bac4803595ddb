# This file is part of pseudotwin
# Copyright 2024, the pseudotwin developers

"""Command line surface: run configuration, CSV tables and golden values."""

import logging
from .config import *
from .goldens import *
from .table import *
from .core import *
from pseudotwin.core.utils import NullHandler
logging.getLogger(__name__).addHandler(NullHandler())
