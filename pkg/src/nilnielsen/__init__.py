"""Exact Reidemeister and Nielsen numbers of affine n-valued maps on nilmanifolds."""
from .endomorphism import Endomorphism, validate_homomorphism
from .errors import DimensionError, FiltrationError, InputError, NilNielsenError, SigmaError
from .group import GroupElement, GroupPresentation, abelian, builtin, check_group_axioms, heisenberg
from .linalg import INFINITE, ExtendedCount, abs_inf, det, lattice_index, smith_normal_form
from .nvalued import (
    AffineLift, AffineNValuedMap, analyze, compute_sigma, nielsen, reidemeister, sigma_orbits,
    validate_map,
)
from .report import CheckReport
from .torus import enumerate_fixed_points
from .twisted import LayerDatum, TwistedSetup, reidemeister_abelian, reidemeister_full, reidemeister_product

__version__ = "0.1.0"

__all__ = [
    "AffineLift", "AffineNValuedMap", "CheckReport", "DimensionError", "Endomorphism",
    "ExtendedCount", "FiltrationError", "GroupElement", "GroupPresentation", "INFINITE",
    "InputError", "LayerDatum", "NilNielsenError", "SigmaError", "TwistedSetup", "abelian",
    "abs_inf", "analyze", "builtin", "check_group_axioms", "compute_sigma", "det",
    "enumerate_fixed_points", "heisenberg", "lattice_index", "nielsen", "reidemeister",
    "reidemeister_abelian", "reidemeister_full", "reidemeister_product", "sigma_orbits",
    "smith_normal_form", "validate_homomorphism", "validate_map",
]
