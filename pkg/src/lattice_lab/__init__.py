"""Exact lattice, quadratic-form and permutation-group computations for Enriques surface lattices."""

from __future__ import annotations

__version__ = "0.1.0"

from .lattice import GramLattice, LatticeError, discriminant_group, gram_det, is_two_elementary
from .roots import DynkinType, fundamental_weights, weight_pairings

__all__ = ["DynkinType", "GramLattice", "LatticeError", "__version__", "discriminant_group",
           "fundamental_weights", "gram_det", "is_two_elementary", "weight_pairings"]
