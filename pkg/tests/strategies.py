"""Shared hypothesis strategies."""

from __future__ import annotations

from hypothesis import strategies as st

from supersat.graphs import Graph


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    npairs = n * (n - 1) // 2
    mask = draw(st.integers(0, (1 << npairs) - 1))
    edges = []
    bit = 0
    for a in range(n):
        for b in range(a + 1, n):
            if mask >> bit & 1:
                edges.append((a, b))
            bit += 1
    return Graph(n, edges)


@st.composite
def graph_pairs(draw, max_pattern: int = 4, max_host: int = 7) -> tuple[Graph, Graph]:
    pattern = draw(graphs(1, max_pattern))
    host = draw(graphs(pattern.n, max_host))
    return pattern, host


@st.composite
def permutations_of(draw, n: int):
    return draw(st.permutations(list(range(n))))
