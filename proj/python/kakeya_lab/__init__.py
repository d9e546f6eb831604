"""Tube-compression and multiplier-norm laboratory (python bindings)."""

from ._kakeya_lab import *  # noqa: F401,F403
from ._kakeya_lab import __doc__  # noqa: F401
