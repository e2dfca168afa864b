"""Gog, magog and kagog triangles, de Finetti lattices, and alternating sign matrices."""

from .errors import GogmagogError, ValidationError
from .triangles import Triangle, triangle

__all__ = ["GogmagogError", "ValidationError", "Triangle", "triangle"]
__version__ = "0.1.0"
