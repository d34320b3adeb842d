"""Independent-particle approximation to elementary determinantal point processes."""

from ._dppipa import *  # noqa: F401,F403
from ._dppipa import DppError  # noqa: F401

__version__ = "0.1.0"
