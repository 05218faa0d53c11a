"""Nerve and clique complexes of circular arcs and their homotopy types."""
from .circle import Arc, ArcCollection, as_fraction, balls, evenly_spaced
from .complex import SimplicialComplex, cech, clique_nk, nerve, nerve_nk, vr
from .homotopy import HomotopyType, clique_homotopy, collection_homotopy, nerve_homotopy
from .reduce import ReductionResult, reduce_to_minimal, verify_reduction

__all__ = [
    "Arc",
    "ArcCollection",
    "HomotopyType",
    "ReductionResult",
    "SimplicialComplex",
    "as_fraction",
    "balls",
    "cech",
    "clique_homotopy",
    "clique_nk",
    "collection_homotopy",
    "evenly_spaced",
    "nerve",
    "nerve_homotopy",
    "nerve_nk",
    "reduce_to_minimal",
    "verify_reduction",
    "vr",
]
