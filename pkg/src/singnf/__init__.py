"""Normal form equations for plane curve singularities with non-degenerate Newton boundary."""
from .poly import Poly, parse, serialize

__all__ = ["Poly", "parse", "serialize"]
__version__ = "0.1.0"
