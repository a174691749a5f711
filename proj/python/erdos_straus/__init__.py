"""Search, verify and survey solutions of 4/p = 1/x + 1/y + 1/z for primes p."""

from ._core import *  # noqa: F401,F403
from ._core import EscError, NoSolutionError, __version__  # noqa: F401
