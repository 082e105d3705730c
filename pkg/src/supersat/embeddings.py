"""Classification of pattern placements by target region.

A placement type assigns each pattern vertex either to the top region
(label 0) or to one of r classes (labels 1..r). Against a host shaped like
an independent top set joined to a complete multipartite graph, a type
pins down which pattern edges must be realized inside a class; the bottom
graph collects exactly those edges.

Admissibility asks whether a type can absorb a planted matching: a type
with a small top set needs enough disjoint within-class edges to host the
matching, one more when the top set spans an edge. Patterns for which every
type is admissible behave uniformly under planting; a single inadmissible
type already explains why a pattern can escape the planted structure.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .counting import count_injections_restricted
from .criticality import is_color_k_critical
from .graphs import CapExceeded, Graph, matching_number

TYPE_CAP = 1 << 26


@dataclass(frozen=True)
class EmbeddingType:
    """Assignment of pattern vertices to regions: 0 is the top set, 1..r
    are the classes."""

    assign: tuple[int, ...]
    r: int

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("need at least one class")
        for a in self.assign:
            if not 0 <= a <= self.r:
                raise ValueError(f"region label {a} out of range 0..{self.r}")

    @property
    def order(self) -> int:
        return len(self.assign)

    @property
    def top(self) -> tuple[int, ...]:
        return tuple(v for v, a in enumerate(self.assign) if a == 0)

    def class_members(self, i: int) -> tuple[int, ...]:
        if not 1 <= i <= self.r:
            raise ValueError(f"class index {i} out of range 1..{self.r}")
        return tuple(v for v, a in enumerate(self.assign) if a == i)

    def class_sizes(self) -> list[int]:
        sizes = [0] * self.r
        for a in self.assign:
            if a:
                sizes[a - 1] += 1
        return sizes


def bottom_graph(pattern: Graph, etype: EmbeddingType) -> Graph:
    """Graph on the non-top vertices keeping only within-class edges."""
    if etype.order != pattern.n:
        raise ValueError("type and pattern order differ")
    kept = [v for v in range(pattern.n) if etype.assign[v] != 0]
    index = {v: i for i, v in enumerate(kept)}
    g = Graph(len(kept))
    for u, v in pattern.edges():
        if etype.assign[u] != 0 and etype.assign[u] == etype.assign[v]:
            g = g.add_edge(index[u], index[v])
    return g


@dataclass(frozen=True)
class TypeStats:
    ell: int
    bottom_matching: int
    bottom_isolated: int
    top_has_edge: bool


def type_stats(pattern: Graph, etype: EmbeddingType) -> TypeStats:
    if etype.order != pattern.n:
        raise ValueError("type and pattern order differ")
    top = set(etype.top)
    top_edge = any(u in top and v in top for u, v in pattern.edges())
    bottom = bottom_graph(pattern, etype)
    return TypeStats(
        ell=len(top),
        bottom_matching=matching_number(bottom),
        bottom_isolated=bottom.isolated_count(),
        top_has_edge=top_edge,
    )


def is_type_admissible(pattern: Graph, etype: EmbeddingType, k: int) -> bool:
    """Whether the type leaves room for a planted k-matching.

    With ell top vertices the matching can lose at most ell edges to the
    top, so the bottom must supply k - ell disjoint edges, one more when
    the top set spans an edge of the pattern. Types with ell > k are
    admissible outright.
    """
    stats = type_stats(pattern, etype)
    required = k - stats.ell + (1 if stats.top_has_edge else 0)
    return stats.bottom_matching >= required


def count_types(pattern: Graph, r: int) -> int:
    return (r + 1) ** pattern.n


def enumerate_types(pattern: Graph, r: int, cap: int = TYPE_CAP):
    """All (r+1)^f assignments in lexicographic order; capped.

    The cap is checked before the first type is produced, so an oversized
    request fails at the call site rather than deep inside a consumer loop.
    """
    total = count_types(pattern, r)
    if total > cap:
        raise CapExceeded(f"{total} types exceed the enumeration cap {cap}")

    def stream():
        for assign in product(range(r + 1), repeat=pattern.n):
            yield EmbeddingType(assign=assign, r=r)

    return stream()


def _require_color_critical(pattern: Graph, k: int) -> None:
    if is_color_k_critical(pattern, k) is None:
        raise ValueError(
            f"admissibility is only defined for color-k-critical patterns; "
            f"this pattern is not color-{k}-critical"
        )


def find_inadmissible_type(
    pattern: Graph, r: int, k: int, cap: int = TYPE_CAP
) -> EmbeddingType | None:
    """First inadmissible type in enumeration order, None when every type
    is admissible."""
    _require_color_critical(pattern, k)
    for etype in enumerate_types(pattern, r, cap=cap):
        if not is_type_admissible(pattern, etype, k):
            return etype
    return None


def is_admissible(pattern: Graph, r: int, k: int, cap: int = TYPE_CAP) -> bool:
    return find_inadmissible_type(pattern, r, k, cap=cap) is None


def admissibility_report(pattern: Graph, r: int, k: int, cap: int = TYPE_CAP) -> dict:
    """Full scan over all types; counts the inadmissible ones."""
    _require_color_critical(pattern, k)
    total = 0
    bad = 0
    first_bad: tuple[int, ...] | None = None
    for etype in enumerate_types(pattern, r, cap=cap):
        total += 1
        if not is_type_admissible(pattern, etype, k):
            bad += 1
            if first_bad is None:
                first_bad = etype.assign
    expected = count_types(pattern, r)
    assert total == expected, f"enumeration produced {total} of {expected} types"
    return {
        "schema": 1,
        "pattern_vertices": pattern.n,
        "r": r,
        "k": k,
        "types_total": total,
        "types_inadmissible": bad,
        "admissible": bad == 0,
        "first_inadmissible": list(first_bad) if first_bad is not None else None,
    }


def type_host(
    pattern: Graph, etype: EmbeddingType, sizes: list[int]
) -> tuple[Graph, list[list[int]]]:
    """Model host for a type: an independent top of size ell joined to a
    complete multipartite graph, with each class's pattern edges embedded
    on the leading vertices of its part.

    Returns the host and the allowed host vertices per pattern vertex.
    """
    if etype.order != pattern.n:
        raise ValueError("type and pattern order differ")
    if len(sizes) != etype.r:
        raise ValueError("one size per class required")
    class_sizes = etype.class_sizes()
    for i, (have, need) in enumerate(zip(sizes, class_sizes), start=1):
        if have < need:
            raise ValueError(f"class {i} holds {need} vertices but size is {have}")
    ell = len(etype.top)
    n_host = ell + sum(sizes)
    starts = []
    pos = ell
    for s in sizes:
        starts.append(pos)
        pos += s
    g = Graph(n_host)
    edges = []
    # top joined to every part vertex
    for t in range(ell):
        for w in range(ell, n_host):
            edges.append((t, w))
    # parts pairwise complete
    for i in range(etype.r):
        for j in range(i + 1, etype.r):
            for u in range(starts[i], starts[i] + sizes[i]):
                for w in range(starts[j], starts[j] + sizes[j]):
                    edges.append((u, w))
    # within-class pattern edges, embedded along sorted class members
    placement: dict[int, int] = {}
    for i in range(1, etype.r + 1):
        members = sorted(etype.class_members(i))
        for off, v in enumerate(members):
            placement[v] = starts[i - 1] + off
    for u, v in pattern.edges():
        if etype.assign[u] != 0 and etype.assign[u] == etype.assign[v]:
            edges.append((placement[u], placement[v]))
    g = g.add_edges(edges)
    top_region = list(range(ell))
    part_regions = [
        list(range(starts[i], starts[i] + sizes[i])) for i in range(etype.r)
    ]
    allowed = []
    for v in range(pattern.n):
        a = etype.assign[v]
        allowed.append(top_region if a == 0 else part_regions[a - 1])
    return g, allowed


def type_automorphism_count(pattern: Graph, etype: EmbeddingType) -> int:
    """Automorphisms of the pattern fixing every region setwise."""
    regions = [
        [w for w in range(pattern.n) if etype.assign[w] == etype.assign[v]]
        for v in range(pattern.n)
    ]
    return count_injections_restricted(pattern, pattern, regions)


def type_copy_count(pattern: Graph, etype: EmbeddingType, sizes: list[int]) -> int:
    """Copies of the pattern in the model host reachable by an injection
    that respects the type's regions.

    Region-respecting injections onto a fixed copy differ exactly by a
    region-preserving automorphism, so the injection total divides evenly.
    """
    host, allowed = type_host(pattern, etype, sizes)
    injections = count_injections_restricted(pattern, host, allowed)
    aut = type_automorphism_count(pattern, etype)
    assert injections % aut == 0, (
        f"{injections} region injections not divisible by {aut}"
    )
    return injections // aut
