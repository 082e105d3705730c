"""Builders for the graphs the toolkit studies.

Hosts follow one vertex layout convention throughout: the universal clique
(or independent set) X comes first, then the balanced parts in descending
size order, each part a contiguous vertex range. Part sizes are n1 >= n2 >=
... >= nr with n1 = ceil(m / r). Edge counts are asserted at build time, so a
miscounted construction fails immediately instead of poisoning results
downstream.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .counting import count_copies
from .graphs import Edge, Graph, disjoint_union, join


def balanced_sizes(n: int, r: int) -> list[int]:
    """Sizes of r balanced classes covering n vertices, descending."""
    if r < 1:
        raise ValueError("need at least one class")
    if n < 0:
        raise ValueError("negative vertex count")
    q, rem = divmod(n, r)
    return [q + 1] * rem + [q] * (r - rem)


# -- elementary patterns ---------------------------------------------------


def matching(k: int) -> Graph:
    """k disjoint edges on 2k vertices."""
    return Graph(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])


def star(k: int) -> Graph:
    """Star on k vertices: center 0 joined to k-1 leaves."""
    if k < 1:
        raise ValueError("star needs at least one vertex")
    return Graph(k, [(0, i) for i in range(1, k)])


def path(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def independent(k: int) -> Graph:
    return Graph(k)


def complete(k: int) -> Graph:
    return Graph(k, list(combinations(range(k), 2)))


def cycle(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def kneser(t: int, m: int = 2) -> Graph:
    """Kneser graph: m-subsets of {0..t-1} in lexicographic order, adjacent
    when disjoint. t=5, m=2 is the Petersen graph."""
    if t < 2 * m + 1:
        raise ValueError("need t >= 2m+1 for a connected Kneser graph")
    verts = list(combinations(range(t), m))
    index = {s: i for i, s in enumerate(verts)}
    edges = []
    for i, a in enumerate(verts):
        sa = set(a)
        for j in range(i + 1, len(verts)):
            if sa.isdisjoint(verts[j]):
                edges.append((i, j))
    return Graph(len(verts), edges)


def turan(n: int, r: int) -> Graph:
    """Balanced complete r-partite graph, parts in descending size order."""
    sizes = balanced_sizes(n, r)
    part_of = []
    for i, s in enumerate(sizes):
        part_of.extend([i] * s)
    g = Graph(n)
    adj = []
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    full = (1 << n) - 1
    for i, s in enumerate(sizes):
        part_mask = ((1 << offsets[i + 1]) - 1) ^ ((1 << offsets[i]) - 1)
        other = full & ~part_mask
        adj.extend([other] * s)
    return Graph._from_adj(n, tuple(adj))


def turan_edge_count(n: int, r: int) -> int:
    sizes = balanced_sizes(n, r)
    return (n * n - sum(s * s for s in sizes)) // 2


# -- parameter records -----------------------------------------------------


@dataclass(frozen=True)
class ExtremalParams:
    """Host parameters: n vertices, r balanced parts, surplus order k."""

    n: int
    r: int
    k: int

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("need at least 2 parts")
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.n < self.r + self.k - 1:
            raise ValueError(
                f"n={self.n} too small for r={self.r}, k={self.k}: "
                f"need n >= {self.r + self.k - 1}"
            )

    @property
    def m(self) -> int:
        """Vertices outside the universal set X."""
        return self.n - self.k + 1

    def part_sizes(self) -> list[int]:
        return balanced_sizes(self.m, self.r)


@dataclass(frozen=True)
class StarProfile:
    """How many star edges to plant in each part."""

    ells: tuple[int, ...]

    def __post_init__(self):
        if any(l < 0 for l in self.ells):
            raise ValueError("star sizes must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.ells)

    @property
    def active(self) -> int:
        """Number of parts that actually receive a star."""
        return sum(1 for l in self.ells if l > 0)


@dataclass
class LabeledHost:
    """A host graph with its construction structure attached.

    pieces maps names like "X", "V1", "V2" to disjoint contiguous vertex
    tuples covering the vertex set. added_edges and removed_edges record how
    the host differs from the unmodified extremal graph.
    """

    graph: Graph
    pieces: dict[str, tuple[int, ...]]
    added_edges: tuple[Edge, ...] = ()
    removed_edges: tuple[Edge, ...] = ()
    params: dict = field(default_factory=dict)

    def piece(self, name: str) -> tuple[int, ...]:
        if name not in self.pieces:
            raise ValueError(f"host has no piece named {name!r}")
        return self.pieces[name]

    def part(self, i: int) -> tuple[int, ...]:
        """1-based accessor for the balanced parts."""
        return self.piece(f"V{i}")


# -- extremal hosts --------------------------------------------------------


def _part_pieces(k: int, sizes: list[int]) -> dict[str, tuple[int, ...]]:
    pieces = {"X": tuple(range(k - 1))}
    at = k - 1
    for i, s in enumerate(sizes, start=1):
        pieces[f"V{i}"] = tuple(range(at, at + s))
        at += s
    return pieces


def extremal_edge_count(n: int, r: int, k: int) -> int:
    """Edges of the clique-over-Turan host, in closed form."""
    p = ExtremalParams(n, r, k)
    return (
        math.comb(k - 1, 2)
        + (k - 1) * p.m
        + turan_edge_count(p.m, r)
    )


def extremal_host(n: int, r: int, k: int) -> LabeledHost:
    """Clique on k-1 vertices joined to the balanced r-partite graph on the
    rest. For color-k-critical patterns with chromatic number r+1 this is the
    conjectured extremal configuration."""
    p = ExtremalParams(n, r, k)
    sizes = p.part_sizes()
    g = join(complete(k - 1), turan(p.m, r))
    expect = extremal_edge_count(n, r, k)
    assert g.edge_count == expect, f"edge count {g.edge_count} != {expect}"
    return LabeledHost(
        graph=g,
        pieces=_part_pieces(k, sizes),
        params={"n": n, "r": r, "k": k, "sizes": sizes},
    )


def extremal_host_with_edge(n: int, r: int, k: int, part: int = 1) -> LabeledHost:
    """Extremal host plus one edge inside the given part (1-based)."""
    host = extremal_host(n, r, k)
    vs = host.part(part)
    if len(vs) < 2:
        raise ValueError(f"part {part} has fewer than 2 vertices")
    e = (vs[0], vs[1])
    host.graph = host.graph.add_edge(*e)
    host.added_edges = (e,)
    host.params["edge_part"] = part
    return host


def extremal_host_with_star(
    n: int,
    r: int,
    k: int,
    q: int,
    pattern: Graph | None = None,
    part: int | None = None,
) -> LabeledHost:
    """Extremal host plus a q-edge star inside one part.

    The part is either given explicitly (1-based) or chosen by exact
    counting: the part whose planted star creates the fewest copies of the
    pattern, lowest index on ties.
    """
    if q < 1:
        raise ValueError("star must have at least one edge")
    p = ExtremalParams(n, r, k)
    sizes = p.part_sizes()

    def build(idx: int) -> LabeledHost:
        host = extremal_host(n, r, k)
        vs = host.part(idx)
        if len(vs) < q + 1:
            raise ValueError(
                f"part {idx} has {len(vs)} vertices, too small for a "
                f"{q}-edge star"
            )
        edges = tuple((vs[0], vs[1 + i]) for i in range(q))
        host.graph = host.graph.add_edges(edges)
        host.added_edges = edges
        host.params.update({"q": q, "star_part": idx})
        return host

    if part is not None:
        return build(part)
    if pattern is None:
        raise ValueError("need either an explicit part or a pattern to minimize")
    best = None
    best_count = None
    for idx in range(1, r + 1):
        if sizes[idx - 1] < q + 1:
            continue
        cand = build(idx)
        c = count_copies(pattern, cand.graph)
        if best_count is None or c < best_count:
            best, best_count = cand, c
    if best is None:
        raise ValueError(f"no part can hold a {q}-edge star")
    best.params["copies"] = best_count
    return best


def star_planted_host(n: int, k: int, q: int) -> LabeledHost:
    """The three-part comparison host used against the planted-matching one.

    Start from the extremal host on three parts, clear the edges inside X,
    plant a star with q + C(k,2) edges inside the first part, and detach the
    star center from X. Net effect: exactly q more edges than the extremal
    host, but the pattern copies it carries grow with a smaller coefficient.
    """
    r = 3
    p = ExtremalParams(n, r, k)
    sizes = p.part_sizes()
    t = q + math.comb(k, 2) + 1  # star vertex count, center included
    if sizes[0] < t:
        raise ValueError(
            f"first part has {sizes[0]} vertices, too small for the "
            f"{t - 1}-edge star (need {t})"
        )
    host = extremal_host(n, r, k)
    g = host.graph
    X = host.piece("X")
    removed = []
    for a, b in combinations(X, 2):
        g = g.delete_edge(a, b)
        removed.append((a, b))
    v1 = host.part(1)
    center = v1[0]
    for x in X:
        g = g.delete_edge(x, center)
        removed.append((x, center))
    star_edges = tuple((center, v1[1 + i]) for i in range(t - 1))
    g = g.add_edges(star_edges)
    expect = extremal_edge_count(n, r, k) + q
    assert g.edge_count == expect, f"edge count {g.edge_count} != {expect}"
    host.graph = g
    host.added_edges = star_edges
    host.removed_edges = tuple(removed)
    host.params.update({"q": q, "t": t, "center": center})
    return host


def starred_host(n: int, r: int, k: int, profile: StarProfile | tuple) -> LabeledHost:
    """Extremal host plus one star per part, sizes given by the profile.

    Star i has profile.ells[i-1] edges, centered on the first vertex of part
    i. Centers of active stars are recorded in the "C" entry of params.
    """
    if not isinstance(profile, StarProfile):
        profile = StarProfile(tuple(profile))
    if len(profile.ells) != r:
        raise ValueError(f"profile has {len(profile.ells)} entries, need {r}")
    host = extremal_host(n, r, k)
    sizes = host.params["sizes"]
    edges: list[Edge] = []
    centers: list[int] = []
    for i, l in enumerate(profile.ells, start=1):
        if l == 0:
            continue
        vs = host.part(i)
        if len(vs) < l + 1:
            raise ValueError(
                f"part {i} has {sizes[i - 1]} vertices, too small for a "
                f"{l}-edge star"
            )
        centers.append(vs[0])
        edges.extend((vs[0], vs[1 + j]) for j in range(l))
    host.graph = host.graph.add_edges(edges)
    host.added_edges = tuple(edges)
    host.params.update({"profile": profile.ells, "centers": tuple(centers)})
    expect = extremal_edge_count(n, r, k) + profile.total
    assert host.graph.edge_count == expect
    return host


def trimmed_starred_host(
    n: int, r: int, k: int, profile: StarProfile | tuple
) -> LabeledHost:
    """Starred host with every edge inside X union the star centers removed.

    The deletion takes out a clique on k-1+alpha vertices (alpha = number of
    active stars), so the edge deficit against the extremal count is exactly
    C(k-1+alpha, 2) minus the planted star edges.
    """
    host = starred_host(n, r, k, profile)
    core = list(host.piece("X")) + list(host.params["centers"])
    g = host.graph
    removed = []
    for a, b in combinations(sorted(core), 2):
        if g.has_edge(a, b):
            g = g.delete_edge(a, b)
            removed.append((a, b))
    alpha = len(host.params["centers"])
    total = sum(host.params["profile"])
    expect = extremal_edge_count(n, r, k) + total - math.comb(k - 1 + alpha, 2)
    assert g.edge_count == expect, f"edge count {g.edge_count} != {expect}"
    host.graph = g
    host.removed_edges = tuple(removed)
    return host


# -- patterns from the counterexample families -----------------------------


def counterexample_pattern(k: int) -> Graph:
    """Matching of size k joined to a 4-path plus a matching of size k-2.

    Color-(k)-critical with chromatic number 4 on 4k vertices. Its planted
    star hosts beat the planted matching host for small surplus, which is
    what makes the family interesting.
    """
    if k < 2:
        raise ValueError("family starts at k=2")
    right = disjoint_union(path(4), matching(k - 2))
    g = join(matching(k), right)
    assert g.n == 4 * k
    return g


def star_cluster_pattern(k: int, s: int) -> Graph:
    """Matching of size k joined to k stars with s leaves each, plus one
    extra edge between the first two star centers.

    Color-k-critical with chromatic number 4; its stability thresholds
    evaluate to k + s - 1 and s, which separates the two star-planting
    regimes in the sharpness analysis.
    """
    if k < 3:
        raise ValueError("family starts at k=3")
    if s < 2:
        raise ValueError("stars need at least 2 leaves")
    cluster = star(s + 1)
    right = cluster
    for _ in range(k - 1):
        right = disjoint_union(right, cluster)
    # star centers sit at offsets 0, s+1, 2(s+1), ...
    right = right.add_edge(0, s + 1)
    g = join(matching(k), right)
    assert g.n == 2 * k + k * (s + 1)
    return g
