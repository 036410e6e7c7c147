"""Exact GF(2) equipartition certificates and discrete-mass verification.

The compiled core carries all functionality; this package re-exports it.
"""

from makeev._core import *  # noqa: F401,F403
from makeev._core import __doc__  # noqa: F401

__version__ = "0.1.0"
