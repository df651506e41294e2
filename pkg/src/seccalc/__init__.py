"""Dimensions and speciality certificates for linear systems with general fat points."""

from .lattice import (
    DivisorClass,
    F,
    K3,
    P,
    P2,
    SurfaceModel,
    arithmetic_genus,
    expected_dimension,
    intersect,
    make_class,
    plane_class,
    subtract,
    virtual_dimension,
)

__all__ = [
    "DivisorClass", "F", "K3", "P", "P2", "SurfaceModel", "arithmetic_genus",
    "expected_dimension", "intersect", "make_class", "plane_class", "subtract",
    "virtual_dimension",
]
__version__ = "0.1.0"
