"""Finsleroid geometry kernels (compiled extension)."""

from ._core import *  # noqa: F401,F403
from ._core import FinsleroidError, Param, Space

__all__ = ["FinsleroidError", "Param", "Space"]
