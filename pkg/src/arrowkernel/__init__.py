"""Exact computations for finite-dimensional bound quiver algebras and arrow removal."""

from .linalg import Field, Subspace
from .presentation import QuiverPresentation, load_fixture, parse_presentation, serialize_presentation
from .algebra import (
    FiniteDimAlgebra,
    NotFiniteDimensional,
    assemble_algebra,
    complete_reduction_system,
    enveloping_algebra,
    opposite_algebra,
)

__version__ = "0.1.0"

__all__ = [
    "Field",
    "Subspace",
    "QuiverPresentation",
    "load_fixture",
    "parse_presentation",
    "serialize_presentation",
    "FiniteDimAlgebra",
    "NotFiniteDimensional",
    "assemble_algebra",
    "complete_reduction_system",
    "enveloping_algebra",
    "opposite_algebra",
]
