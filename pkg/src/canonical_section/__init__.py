"""Canonical Weierstrass sections for parabolic adjoint action in sl(n)."""

from .core import (
    Composition,
    NeighbourPair,
    Region,
    Tableau,
    build_tableau,
    compositions,
    neighbouring_pairs,
    parse_composition,
    region_of,
)
from .section import (
    CompositionMapImage,
    Label,
    SectionState,
    block_via_map,
    build_section,
    composition_map,
)
from .vs import VSPair, VSQuadruplet, VSReport, build_extended, find_quadruplets, find_vs_pairs, is_bad
from .orbital import excluded_sets, u_intersection
from .verify import VerificationReport, jordan_type, regularity_check, verify_composition
from .scan import scan

__all__ = [
    "Composition",
    "CompositionMapImage",
    "Label",
    "NeighbourPair",
    "Region",
    "SectionState",
    "Tableau",
    "VSPair",
    "VSQuadruplet",
    "VSReport",
    "block_via_map",
    "build_extended",
    "build_section",
    "build_tableau",
    "excluded_sets",
    "is_bad",
    "jordan_type",
    "regularity_check",
    "scan",
    "u_intersection",
    "verify_composition",
    "VerificationReport",
    "composition_map",
    "compositions",
    "find_quadruplets",
    "find_vs_pairs",
    "neighbouring_pairs",
    "parse_composition",
    "region_of",
]
