"""Exact arithmetic for angle m-sectability and height-density experiments."""

from msect.errors import InconsistencyError

__version__ = "0.1.0"

__all__ = ["InconsistencyError", "__version__"]
