"""Constructive pipelines that build certified realizations."""

from .realize import build_factored_realization, havel_hakimi, pack_factor, realize_with_factor, thm3_construct
from .result import Certificate, RealizationResult, certify
from .thm1 import thm1_construct
from .thm2 import Thm2SearchState, reduce_colors, thm2_construct
from .thm4 import thm4_pipeline

__all__ = [
    "Certificate",
    "Thm2SearchState",
    "RealizationResult",
    "build_factored_realization",
    "certify",
    "havel_hakimi",
    "pack_factor",
    "realize_with_factor",
    "reduce_colors",
    "thm1_construct",
    "thm2_construct",
    "thm3_construct",
    "thm4_pipeline",
]
