"""Resolution-based invariants of isolated hypersurface singularities.

Minimal discrepancies, separating blowups, the E1 page of the fixed-point
Floer spectral sequence, and toric resolutions of Newton-nondegenerate plane
curves, with exact integer homological algebra underneath.
"""
from .errors import SingresError
from .invariants import (
    hf_euler,
    lct,
    lefschetz,
    md,
    md_bruteforce,
    md_plus,
    monodromy_zeta,
    multiplicity,
    s_m,
)
from .kernels import BACKEND
from .model import DivisorRecord, ResolutionData, parse_resolution, serialize_resolution, validate
from .newton import parse_poly, resolution_from_curve
from .separating import blow_up_pair, is_separating, min_pair_sum, separate
from .spectral import degeneration_check, e1_page, mu, nu

__all__ = [
    "BACKEND",
    "DivisorRecord",
    "ResolutionData",
    "SingresError",
    "blow_up_pair",
    "degeneration_check",
    "e1_page",
    "hf_euler",
    "is_separating",
    "lct",
    "lefschetz",
    "md",
    "md_bruteforce",
    "md_plus",
    "min_pair_sum",
    "monodromy_zeta",
    "mu",
    "multiplicity",
    "nu",
    "parse_poly",
    "parse_resolution",
    "resolution_from_curve",
    "s_m",
    "separate",
    "serialize_resolution",
    "validate",
]
