"""mct: exact desk-scale calculators for finite model categories,
homotopy 2-categories, localization, chain complexes and simplicial sets."""

__version__ = "0.1.0"

from .fincat import FinCat, FinFunctor, NatTransf, Diagram, validate_category
from .model import ModelStructure, validate_model

__all__ = [
    "FinCat", "FinFunctor", "NatTransf", "Diagram", "validate_category",
    "ModelStructure", "validate_model",
]
