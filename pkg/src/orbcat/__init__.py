"""Orbit categories, the category E_F(Gamma), nerves and homotopy fixed points."""

from .families import Family, all_families, close_family, named_family, parse_family, preimage_family
from .fincat import (
    CategoryError,
    FinCategory,
    Functor,
    NaturalTransformation,
    SetValuedFunctor,
    orbit_category,
)
from .groups import FiniteGroup, Homomorphism, Subgroup, make_group, make_homomorphism
from .kernels import BACKEND

__all__ = [
    "BACKEND",
    "CategoryError",
    "Family",
    "FinCategory",
    "FiniteGroup",
    "Functor",
    "Homomorphism",
    "NaturalTransformation",
    "SetValuedFunctor",
    "Subgroup",
    "all_families",
    "close_family",
    "make_group",
    "make_homomorphism",
    "named_family",
    "orbit_category",
    "parse_family",
    "preimage_family",
]
