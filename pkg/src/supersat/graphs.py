"""Immutable finite simple graphs plus the exact invariants everything else uses.

Graphs are plain values: vertex set 0..n-1, adjacency stored as one Python int
bitmask per vertex. All mutating-style operations return new graphs, so
instances can be shared freely across threads.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping

Edge = tuple[int, int]

# Exact algorithms (chromatic number, matching, coloring enumeration) refuse
# graphs above this size; counting hosts may be larger but stay materializable.
PATTERN_MAX = 64
HOST_MAX = 4096


class CapExceeded(RuntimeError):
    """An exhaustive enumeration hit its configured resource cap."""


class Graph:
    """Simple undirected graph on vertices 0..n-1, no loops or multi-edges."""

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if n > HOST_MAX:
            raise ValueError(f"graph too large: {n} > {HOST_MAX} vertices")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)

    @classmethod
    def _from_adj(cls, n: int, adj: tuple[int, ...]) -> "Graph":
        g = object.__new__(cls)
        g.n = n
        g._adj = adj
        return g

    # -- basic queries ----------------------------------------------------

    def adjacency_mask(self, v: int) -> int:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> Iterator[int]:
        m = self._adj[v]
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self._adj) // 2

    def edges(self) -> list[Edge]:
        out = []
        for u in range(self.n):
            m = self._adj[u] >> (u + 1) << (u + 1)
            while m:
                low = m & -m
                out.append((u, low.bit_length() - 1))
                m ^= low
        return out

    def isolated_count(self) -> int:
        return sum(1 for m in self._adj if m == 0)

    # -- derived graphs ---------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> "Graph":
        keep = sorted(set(vertices))
        for v in keep:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range")
        index = {v: i for i, v in enumerate(keep)}
        g = Graph(len(keep))
        adj = [0] * len(keep)
        for v in keep:
            m = self._adj[v]
            for w in keep:
                if m >> w & 1:
                    adj[index[v]] |= 1 << index[w]
        return Graph._from_adj(len(keep), tuple(adj))

    def delete_vertices(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def add_edge(self, u: int, v: int) -> "Graph":
        if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
            raise ValueError(f"invalid edge ({u},{v})")
        adj = list(self._adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph._from_adj(self.n, tuple(adj))

    def add_edges(self, edges: Iterable[Edge]) -> "Graph":
        g = self
        adj = list(self._adj)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise ValueError(f"invalid edge ({u},{v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph._from_adj(self.n, tuple(adj))

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise ValueError(f"no edge ({u},{v}) to delete")
        adj = list(self._adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph._from_adj(self.n, tuple(adj))

    def delete_edges(self, edges: Iterable[Edge]) -> "Graph":
        g = self
        for u, v in edges:
            g = g.delete_edge(u, v)
        return g

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        adj = tuple((full & ~self._adj[v]) & ~(1 << v) for v in range(self.n))
        return Graph._from_adj(self.n, adj)

    def relabel(self, perm: Iterable[int]) -> "Graph":
        """Return the graph with vertex v renamed to perm[v]."""
        p = list(perm)
        if sorted(p) != list(range(self.n)):
            raise ValueError("perm is not a permutation of the vertex set")
        adj = [0] * self.n
        for v in range(self.n):
            m = self._adj[v]
            while m:
                low = m & -m
                adj[p[v]] |= 1 << p[low.bit_length() - 1]
                m ^= low
        return Graph._from_adj(self.n, tuple(adj))

    # -- value semantics --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


# -- combinators ----------------------------------------------------------


def join(g: Graph, h: Graph) -> Graph:
    """All of g, all of h, and every cross edge."""
    n = g.n + h.n
    if n > HOST_MAX:
        raise ValueError(f"join too large: {n} vertices")
    g_all = (1 << g.n) - 1
    h_all = ((1 << h.n) - 1) << g.n
    adj = [g._adj[v] | h_all for v in range(g.n)]
    adj += [(h._adj[w] << g.n) | g_all for w in range(h.n)]
    return Graph._from_adj(n, tuple(adj))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    if n > HOST_MAX:
        raise ValueError(f"union too large: {n} vertices")
    adj = list(g._adj) + [h._adj[w] << g.n for w in range(h.n)]
    return Graph._from_adj(n, tuple(adj))


def scalar_union(k: int, g: Graph) -> Graph:
    """k vertex-disjoint copies of g."""
    if k < 0:
        raise ValueError("copy count must be non-negative")
    out = Graph(0)
    for _ in range(k):
        out = disjoint_union(out, g)
    return out


# -- chromatic number -----------------------------------------------------


def _greedy_clique(g: Graph) -> int:
    best = 0
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    for start in order[: min(g.n, 8)]:
        clique_mask = 1 << start
        common = g._adj[start]
        size = 1
        m = common
        while m:
            # extend by the candidate with most neighbors among candidates
            pick, pick_deg = -1, -1
            mm = m
            while mm:
                low = mm & -mm
                v = low.bit_length() - 1
                d = (g._adj[v] & m).bit_count()
                if d > pick_deg:
                    pick, pick_deg = v, d
                mm ^= low
            clique_mask |= 1 << pick
            size += 1
            m &= g._adj[pick]
        best = max(best, size)
    return max(best, 1 if g.n else 0)


def _dsatur_greedy(g: Graph) -> int:
    """Upper bound: number of colors the DSATUR greedy heuristic uses."""
    n = g.n
    if n == 0:
        return 0
    colors = [-1] * n
    nbr_colors = [0] * n
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (nbr_colors[u].bit_count(), g.degree(u), -u),
        )
        c = 0
        while nbr_colors[v] >> c & 1:
            c += 1
        colors[v] = c
        for w in g.neighbors(v):
            nbr_colors[w] |= 1 << c
    return max(colors) + 1


def k_colorable(
    g: Graph, k: int, fixed: Mapping[int, int] | None = None
) -> tuple[int, ...] | None:
    """Exact k-colorability test.

    Returns a proper coloring (tuple of colors, one per vertex) extending
    ``fixed`` when one exists, else None. DSATUR-style branching: always color
    the most saturated vertex next; without fixed colors, symmetry is broken
    by allowing at most one previously unused color.
    """
    n = g.n
    if n > PATTERN_MAX:
        raise ValueError(f"exact coloring limited to {PATTERN_MAX} vertices")
    if n == 0:
        return ()
    if k <= 0:
        return None
    colors = [-1] * n
    nbr_colors = [0] * n
    full = (1 << k) - 1
    if fixed:
        for v, c in fixed.items():
            if not (0 <= v < n and 0 <= c < k):
                return None
            colors[v] = c
        for v, c in fixed.items():
            for w in g.neighbors(v):
                if colors[w] == c:
                    return None  # fixed assignment is already improper
                nbr_colors[w] |= 1 << c
    uncolored = [v for v in range(n) if colors[v] < 0]
    degs = [g.degree(v) for v in range(n)]
    symmetry = not fixed
    used = {c for c in colors if c >= 0}
    used_count = len(used)

    def solve(remaining: int, used_count: int) -> bool:
        if remaining == 0:
            return True
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (nbr_colors[u].bit_count(), degs[u], -u),
        )
        avail = ~nbr_colors[v] & full
        if symmetry and used_count < k:
            avail &= (1 << (used_count + 1)) - 1
        while avail:
            low = avail & -avail
            c = low.bit_length() - 1
            avail ^= low
            colors[v] = c
            touched = []
            ok = True
            for w in g.neighbors(v):
                if colors[w] < 0 and not nbr_colors[w] >> c & 1:
                    nbr_colors[w] |= 1 << c
                    touched.append(w)
                    if nbr_colors[w] & full == full:
                        ok = False  # w just ran out of colors
            if ok and solve(remaining - 1, max(used_count, c + 1)):
                return True
            colors[v] = -1
            for w in touched:
                nbr_colors[w] &= ~(1 << c)
        return False

    if solve(len(uncolored), used_count):
        return tuple(colors)
    return None


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number; 0 for the empty graph."""
    if g.n == 0:
        return 0
    if all(m == 0 for m in g._adj):
        return 1
    lower = max(2, _greedy_clique(g))
    upper = _dsatur_greedy(g)
    for k in range(lower, upper):
        if k_colorable(g, k) is not None:
            return k
    return upper


# -- matching number ------------------------------------------------------


def matching_number(g: Graph) -> int:
    """Exact maximum matching size, branch and bound with memoization."""
    if g.n > PATTERN_MAX:
        raise ValueError(f"exact matching limited to {PATTERN_MAX} vertices")
    adj = g._adj
    memo: dict[int, int] = {}

    def strip_isolated(active: int) -> int:
        core = 0
        m = active
        while m:
            low = m & -m
            v = low.bit_length() - 1
            if adj[v] & active:
                core |= low
            m ^= low
        return core

    def nu(active: int) -> int:
        core = strip_isolated(active)
        if core == 0:
            return 0
        cached = memo.get(core)
        if cached is not None:
            return cached
        cap = core.bit_count() // 2
        low = core & -core
        v = low.bit_length() - 1
        rest = core ^ low
        best = 0
        nbrs = adj[v] & core
        while nbrs:
            nl = nbrs & -nbrs
            best = max(best, 1 + nu(rest ^ nl))
            if best == cap:
                break
            nbrs ^= nl
        if best < cap:
            best = max(best, nu(rest))  # leave v unmatched
        memo[core] = best
        return best

    return nu((1 << g.n) - 1)


# -- proper coloring enumeration ------------------------------------------


def proper_colorings(
    g: Graph,
    r: int,
    fixed: Mapping[int, int] | None = None,
    max_steps: int = 100_000_000,
) -> Iterator[tuple[int, ...]]:
    """Yield every labeled proper r-coloring extending ``fixed``, once each.

    Colorings are tuples indexed by vertex with colors 0..r-1. Color classes
    are distinguished (no quotient by color permutation). Raises CapExceeded
    after max_steps search steps.
    """
    n = g.n
    if n > PATTERN_MAX:
        raise ValueError(f"coloring enumeration limited to {PATTERN_MAX} vertices")
    if r < 0:
        raise ValueError("color count must be non-negative")
    colors = [-1] * n
    if fixed:
        for v, c in fixed.items():
            if not (0 <= v < n):
                raise ValueError(f"fixed vertex {v} out of range")
            if not (0 <= c < r):
                return  # a fixed color outside the palette: nothing to yield
            colors[v] = c
        for v, c in fixed.items():
            for w in g.neighbors(v):
                if colors[w] == c:
                    return  # fixed assignment already improper
    free = [v for v in range(n) if colors[v] < 0]
    # high-degree first prunes earlier; output tuples are vertex-indexed so
    # the visiting order is invisible to callers
    free.sort(key=lambda v: (-g.degree(v), v))
    steps = 0

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        nonlocal steps
        if i == len(free):
            yield tuple(colors)
            return
        v = free[i]
        forbidden = 0
        for w in g.neighbors(v):
            if colors[w] >= 0:
                forbidden |= 1 << colors[w]
        for c in range(r):
            if forbidden >> c & 1:
                continue
            steps += 1
            if steps > max_steps:
                raise CapExceeded(
                    f"coloring enumeration exceeded {max_steps} steps"
                )
            colors[v] = c
            yield from extend(i + 1)
            colors[v] = -1

    yield from extend(0)
