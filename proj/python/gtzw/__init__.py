"""Sampling, exact transition laws and growth diagnostics for zw-measures."""

from ._core import *  # noqa: F401,F403
from ._core import Params, __doc__  # noqa: F401

__version__ = "0.1.0"
