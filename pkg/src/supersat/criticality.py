"""Color criticality of order k, and the stability thresholds.

A graph F is color-critical of order k when deleting some k edges lowers the
chromatic number while deleting any k-1 vertices does not. The vertex
condition forces every chromatic-number-dropping k-edge set to be a matching:
if two of the edges shared a vertex, the at most k-1 vertices covering the
set would already lower the chromatic number when deleted. The witness
search below therefore verifies the vertex condition first and then only
looks at matchings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .graphs import (
    CapExceeded,
    Edge,
    Graph,
    chromatic_number,
    k_colorable,
    proper_colorings,
)

SUBSET_CAP = 10**6


@dataclass(frozen=True)
class CriticalWitness:
    """A k-matching whose deletion lowers the chromatic number."""

    matching: tuple[Edge, ...]
    chi: int
    chi_after: int

    def verify(self, g: Graph) -> bool:
        """Re-check the claim against the graph it was issued for."""
        h = g.delete_edges(self.matching)
        return (
            chromatic_number(g) == self.chi
            and chromatic_number(h) == self.chi_after
            and self.chi_after < self.chi
        )


@dataclass(frozen=True)
class CriticalSubsetRecord:
    """A minimum vertex set whose deletion lowers the chromatic number."""

    vertices: tuple[int, ...]
    stable: bool


def _check_caps(f: int, k: int) -> None:
    if k >= 1 and math.comb(f, k - 1) > SUBSET_CAP:
        raise CapExceeded(
            f"C({f},{k - 1}) vertex subsets exceed the cap of {SUBSET_CAP}"
        )


def _matchings(g: Graph, k: int):
    """All k-matchings as sorted edge tuples, lexicographic order."""
    edges = g.edges()

    def extend(start: int, chosen: list[Edge], used: int):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for i in range(start, len(edges)):
            u, v = edges[i]
            if used >> u & 1 or used >> v & 1:
                continue
            chosen.append(edges[i])
            yield from extend(i + 1, chosen, used | 1 << u | 1 << v)
            chosen.pop()

    yield from extend(0, [], 0)


def vertex_deletion_stable(g: Graph, k: int, chi: int | None = None) -> bool:
    """True when no k-1 vertex deletions lower the chromatic number."""
    if chi is None:
        chi = chromatic_number(g)
    _check_caps(g.n, k)
    for subset in combinations(range(g.n), k - 1):
        if k_colorable(g.delete_vertices(subset), chi - 1) is not None:
            return False
    return True


def is_color_k_critical(g: Graph, k: int) -> CriticalWitness | None:
    """Witness that g is color-critical of order k, or None.

    Returns the lexicographically first dropping k-matching. The witness is
    verified before it is returned.
    """
    if k < 1:
        raise ValueError("criticality order must be positive")
    chi = chromatic_number(g)
    if chi < 2:
        return None
    if not vertex_deletion_stable(g, k, chi):
        return None
    for m in _matchings(g, k):
        stripped = g.delete_edges(m)
        if k_colorable(stripped, chi - 1) is not None:
            witness = CriticalWitness(
                matching=m, chi=chi, chi_after=chromatic_number(stripped)
            )
            assert witness.verify(g)
            return witness
    return None


@lru_cache(maxsize=128)
def critical_matchings(g: Graph, k: int) -> tuple[tuple[Edge, ...], ...]:
    """Every k-matching whose deletion lowers the chromatic number."""
    chi = chromatic_number(g)
    out = []
    for m in _matchings(g, k):
        if k_colorable(g.delete_edges(m), chi - 1) is not None:
            out.append(m)
    return tuple(out)


def _contract_pair(g: Graph, u: int, v: int) -> Graph:
    """Merge v into u; the pair must not be adjacent."""
    keep = [w for w in range(g.n) if w != v]
    index = {w: i for i, w in enumerate(keep)}
    edges = []
    for a, b in g.edges():
        a2 = u if a == v else a
        b2 = u if b == v else b
        if a2 != b2:
            edges.append((index[a2], index[b2]))
    return Graph(g.n - 1, edges)


@lru_cache(maxsize=128)
def critical_k_tuples(
    g: Graph, k: int
) -> tuple[tuple[tuple[int, ...], Edge], ...]:
    """Pairs (W, e) of k-1 vertices and a disjoint edge that witness a drop.

    (W, e) qualifies when g minus W minus the edge e admits a proper coloring
    with one color fewer in which both endpoints of e share a color. These
    are the index set of the planted-edge counting formula.
    """
    chi = chromatic_number(g)
    r = chi - 1
    _check_caps(g.n, k)
    out = []
    for w_set in combinations(range(g.n), k - 1):
        dropped = set(w_set)
        for u, v in g.edges():
            if u in dropped or v in dropped:
                continue
            h = g.delete_edge(u, v).delete_vertices(w_set)
            keep = [x for x in range(g.n) if x not in dropped]
            index = {x: i for i, x in enumerate(keep)}
            merged = _contract_pair(h, index[u], index[v])
            if k_colorable(merged, r) is not None:
                out.append((w_set, (u, v)))
    return tuple(out)


# -- minimum dropping vertex sets ------------------------------------------


@lru_cache(maxsize=64)
def critical_size(g: Graph) -> int:
    """Fewest vertex deletions that lower the chromatic number."""
    chi = chromatic_number(g)
    if chi == 0:
        raise ValueError("empty graph has no chromatic number to lower")
    for size in range(g.n + 1):
        if math.comb(g.n, size) > SUBSET_CAP:
            raise CapExceeded(f"C({g.n},{size}) subsets exceed the cap")
        for subset in combinations(range(g.n), size):
            if k_colorable(g.delete_vertices(subset), chi - 1) is not None:
                return size
    raise AssertionError("deleting all vertices always lowers a positive count")


@lru_cache(maxsize=64)
def critical_subsets(g: Graph) -> tuple[CriticalSubsetRecord, ...]:
    """All minimum vertex sets whose deletion lowers the chromatic number."""
    chi = chromatic_number(g)
    size = critical_size(g)
    out = []
    for subset in combinations(range(g.n), size):
        if k_colorable(g.delete_vertices(subset), chi - 1) is None:
            continue
        stable = all(
            not g.has_edge(a, b) for a, b in combinations(subset, 2)
        )
        out.append(CriticalSubsetRecord(vertices=subset, stable=stable))
    return tuple(out)


# -- neighborhood thresholds -----------------------------------------------


def _stable_partitions(g: Graph, r: int):
    """Unordered partitions of V(g) into at most r independent classes."""
    seen = set()
    for coloring in proper_colorings(g, r):
        classes = [[] for _ in range(r)]
        for v, c in enumerate(coloring):
            classes[c].append(v)
        key = frozenset(
            frozenset(cls) for cls in classes if cls
        )
        if key not in seen:
            seen.add(key)
            yield [tuple(cls) for cls in classes]


def part_degree_min(g: Graph, subset: tuple[int, ...], ell: int) -> int | float:
    """Smallest class-degree of the subset that is still at least ell.

    Ranges over every vertex x of the subset, every partition of the rest of
    the graph into at most chi-1 independent classes, and every class; takes
    the smallest count of neighbors of x inside a class among counts >= ell.
    Infinity when no count reaches ell.
    """
    chi = chromatic_number(g)
    r = chi - 1
    rest = g.delete_vertices(subset)
    keep = [v for v in range(g.n) if v not in set(subset)]
    back = {i: v for i, v in enumerate(keep)}
    best: int | float = math.inf
    nbrs = {x: set(g.neighbors(x)) for x in subset}
    for classes in _stable_partitions(rest, r):
        for cls in classes:
            members = {back[i] for i in cls}
            for x in subset:
                d = len(nbrs[x] & members)
                if d >= ell and d < best:
                    best = d
    return best


@lru_cache(maxsize=64)
def stable_threshold(g: Graph) -> int | float:
    """Minimum over stable minimum dropping sets of their 2-bounded class
    degree; infinity when every such set misses the bound or none is stable."""
    best: int | float = math.inf
    for rec in critical_subsets(g):
        if rec.stable:
            best = min(best, part_degree_min(g, rec.vertices, 2))
    return best


@lru_cache(maxsize=64)
def unstable_threshold(g: Graph) -> int | float:
    """Same minimum over the non-stable minimum dropping sets, bound 1."""
    best: int | float = math.inf
    for rec in critical_subsets(g):
        if not rec.stable:
            best = min(best, part_degree_min(g, rec.vertices, 1))
    return best
