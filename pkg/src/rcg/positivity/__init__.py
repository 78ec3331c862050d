"""Tits signs, the φ chain, regions and the positivity checks built on them."""

from .chain import ImageConditionError, RegionChain, beta_chain, forward_chain, phi_forward, phi_inverse, sample_region
from .monoid import Decomposition, MonoidError, canonical_part, decompose_nonneg
from .signs import TitsSigns, sign_move_law, tits_signs, twist_factor
from .symbolic import Region, region_symbolic
from .theorems import (
    RegionError,
    TheoremViolation,
    cell_element,
    converse_check,
    positive_element,
    region_transport,
    suffix_region,
    verify_flag,
)

__all__ = [
    "ImageConditionError", "RegionChain", "beta_chain", "forward_chain", "phi_forward", "phi_inverse",
    "sample_region", "Decomposition", "MonoidError", "canonical_part", "decompose_nonneg", "TitsSigns",
    "sign_move_law", "tits_signs", "twist_factor", "Region", "region_symbolic", "RegionError",
    "TheoremViolation", "cell_element", "converse_check", "positive_element", "region_transport",
    "suffix_region", "verify_flag",
]
