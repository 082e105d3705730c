"""Exact counting toolkit for supersaturation above extremal graphs."""

from .graphs import (
    CapExceeded,
    Graph,
    chromatic_number,
    disjoint_union,
    join,
    k_colorable,
    matching_number,
    proper_colorings,
    scalar_union,
)
from .counting import (
    CountReport,
    IntersectionSignature,
    automorphism_count,
    count_copies,
    count_copies_by_contact,
    count_copies_by_edge_usage,
    count_copies_classified,
    count_copies_with_max_contact,
    count_copies_with_required,
    count_injections,
    engine_info,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CountReport",
    "Graph",
    "IntersectionSignature",
    "automorphism_count",
    "chromatic_number",
    "count_copies",
    "count_copies_by_contact",
    "count_copies_by_edge_usage",
    "count_copies_classified",
    "count_copies_with_max_contact",
    "count_copies_with_required",
    "count_injections",
    "disjoint_union",
    "engine_info",
    "join",
    "k_colorable",
    "matching_number",
    "proper_colorings",
    "scalar_union",
    "__version__",
]
