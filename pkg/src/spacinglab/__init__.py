"""Windowed integer-set families and spacing-shift analysis.

The package truncates the classical infinite-set notions (thick, syndetic,
piecewise syndetic, difference and finite-sum structure, Banach density)
to explicit finite windows, so every verdict is exact at a stated scale,
and drives a spacing-shift engine (return-time sets, their shift-
intersection decomposition, mixing/transitivity evidence) plus open-cover
complexity profiles on the resulting subshifts.
"""

from .constructions import (
    ConstructionSpec,
    alternating_thick,
    build_construction,
    ip_obstruction_check,
    progressive_gap_union,
    rapid_growth_differences,
    rapid_growth_sequence,
    squares_family,
)
from .covers import ClopenCover, ComplexityProfile, auto_cover, complexity_profile, min_subcover, refine_along
from .errors import SpacingLabError
from .families import (
    ClassificationReport,
    Detector,
    GeneratedFamily,
    ScaleParams,
    block_embeds,
    bohr_set,
    classify,
    find_delta_subset,
    find_ip_subset,
    has_progressive_gaps,
    is_cofinite_at,
    is_piecewise_syndetic_at,
    is_syndetic_at,
    is_thick_at,
    is_thickly_syndetic_at,
)
from .intset import (
    DensityProfile,
    GapStatistics,
    WindowedSet,
    density_profile,
    difference_set,
    finite_sums,
    format_set_text,
    gap_statistics,
    parse_set_text,
)
from .spacing import (
    EvidenceReport,
    NuvDecomposition,
    SpacingShift,
    Word,
    decomposition_agrees,
    mixing_evidence,
    nuv_decomposition,
    return_set,
)
from .suite import run_suite

__all__ = [
    "SpacingLabError",
    "WindowedSet",
    "DensityProfile",
    "GapStatistics",
    "density_profile",
    "difference_set",
    "finite_sums",
    "gap_statistics",
    "parse_set_text",
    "format_set_text",
    "ClassificationReport",
    "Detector",
    "GeneratedFamily",
    "ScaleParams",
    "block_embeds",
    "bohr_set",
    "classify",
    "find_delta_subset",
    "find_ip_subset",
    "has_progressive_gaps",
    "is_cofinite_at",
    "is_piecewise_syndetic_at",
    "is_syndetic_at",
    "is_thick_at",
    "is_thickly_syndetic_at",
    "SpacingShift",
    "Word",
    "return_set",
    "nuv_decomposition",
    "NuvDecomposition",
    "decomposition_agrees",
    "mixing_evidence",
    "EvidenceReport",
    "ConstructionSpec",
    "build_construction",
    "squares_family",
    "rapid_growth_sequence",
    "rapid_growth_differences",
    "ip_obstruction_check",
    "progressive_gap_union",
    "alternating_thick",
    "ClopenCover",
    "ComplexityProfile",
    "auto_cover",
    "refine_along",
    "min_subcover",
    "complexity_profile",
    "run_suite",
]
