"""Local graph clustering via evolving sets and threshold sweeps."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
