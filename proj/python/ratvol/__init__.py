"""Exact G_n-invariant rational measures of rational polyhedra."""

from ._ratvol import (
    GeometryError,
    ParseError,
    Polyhedron,
    measure,
    measures,
    property_names,
    transform,
    triangulate,
    verify,
)

__all__ = [
    "GeometryError",
    "ParseError",
    "Polyhedron",
    "measure",
    "measures",
    "property_names",
    "transform",
    "triangulate",
    "verify",
]
