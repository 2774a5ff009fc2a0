"""Exact rational-orbit computations for the trivector spaces k^7 and k^7 (x) k^2."""

from .fields import QuadElem, QuadField, is_norm, squarefree_part
from .g2rep import W_BAR, GroupElem1, TriVector, delta
from .linalg import Mat

__version__ = "0.1.0"

__all__ = [
    "QuadElem", "QuadField", "is_norm", "squarefree_part",
    "W_BAR", "GroupElem1", "TriVector", "delta", "Mat", "__version__",
]
