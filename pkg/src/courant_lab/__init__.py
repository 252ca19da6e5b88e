"""Spectral screening and nodal-domain analysis for the equilateral torus
and the alcove triangles (equilateral, right-isosceles, hemiequilateral)."""

from .alcove_geometry import DomainKind

__all__ = ["DomainKind"]
__version__ = "0.1.0"
