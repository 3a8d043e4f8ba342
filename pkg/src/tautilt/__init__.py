"""Exact computations with two-term silting complexes and support tau-tilting modules."""

from .algebra import Arrow, BoundQuiverAlgebra, Quiver, Relation, build_algebra
from .complexes import TwoTermComplex, hom_k
from .delta import build_delta, euler_and_homology
from .explorer import MutationGraph, explore
from .silting import SiltContext, SiltingObject
from .spec import bundled, bundled_algebra, parse_spec

__version__ = "0.1.0"

__all__ = [
    "Arrow",
    "BoundQuiverAlgebra",
    "MutationGraph",
    "Quiver",
    "Relation",
    "SiltContext",
    "SiltingObject",
    "TwoTermComplex",
    "build_algebra",
    "build_delta",
    "bundled",
    "bundled_algebra",
    "euler_and_homology",
    "explore",
    "hom_k",
    "parse_spec",
]
