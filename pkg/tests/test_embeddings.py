import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from supersat.constructions import (
    complete,
    counterexample_pattern,
    cycle,
    kneser,
    path,
)
from supersat.embeddings import (
    EmbeddingType,
    admissibility_report,
    bottom_graph,
    count_types,
    enumerate_types,
    find_inadmissible_type,
    is_admissible,
    is_type_admissible,
    type_copy_count,
    type_stats,
)
from supersat.graphs import CapExceeded, Graph, disjoint_union


def test_type_validation():
    t = EmbeddingType((1, 1, 2), 2)
    assert t.order == 3
    assert t.top == ()
    assert t.class_members(1) == (0, 1)
    assert t.class_sizes() == [2, 1]
    with pytest.raises(ValueError):
        EmbeddingType((1, 1, 3), 2)
    with pytest.raises(ValueError):
        EmbeddingType((-1, 0), 2)


def test_type_cardinality():
    assert count_types(complete(3), 2) == 27
    assert count_types(counterexample_pattern(2), 3) == 4**8
    assert sum(1 for _ in enumerate_types(complete(3), 2)) == 27
    assert sum(1 for _ in enumerate_types(path(4), 1)) == 16


def test_enumeration_cap_is_eager():
    with pytest.raises(CapExceeded):
        enumerate_types(complete(3), 2, cap=5)


def test_bottom_graph_keeps_within_class_edges_only():
    # triangle with one edge inside class 1, apex in class 2
    t = EmbeddingType((1, 1, 2), 2)
    bg = bottom_graph(complete(3), t)
    assert bg.n == 3
    assert sorted(bg.edges()) == [(0, 1)]
    # all of the pattern in the top leaves an empty bottom
    t_top = EmbeddingType((0, 0, 0), 2)
    assert bottom_graph(complete(3), t_top).n == 0


def test_type_stats_fields():
    t = EmbeddingType((1, 2, 1), 2)
    st_ = type_stats(path(3), t)
    assert st_.ell == 0
    assert st_.bottom_matching == 0
    assert st_.bottom_isolated == 3
    assert not st_.top_has_edge
    t2 = EmbeddingType((0, 0, 1), 2)
    st2 = type_stats(complete(3), t2)
    assert st2.ell == 2
    assert st2.top_has_edge


def test_stats_bound_and_matching_oracle():
    pattern = counterexample_pattern(2)
    rng = random.Random(11)
    pool = list(enumerate_types(pattern, 2))
    for etype in rng.sample(pool, 120):
        st_ = type_stats(pattern, etype)
        assert st_.bottom_matching + st_.bottom_isolated <= pattern.n - st_.ell
        bg = bottom_graph(pattern, etype)
        assert st_.bottom_matching == oracles.exhaustive_matching_number(bg)


def test_admissibility_condition_arithmetic():
    # a 2 K3 type: k = 2, empty top, both triangle edges within classes
    g = disjoint_union(complete(3), complete(3))
    t = EmbeddingType((1, 1, 2, 1, 1, 2), 2)
    st_ = type_stats(g, t)
    assert st_.bottom_matching >= 2
    assert is_type_admissible(g, t, 2)
    # an edged top over an edgeless bottom misses the raised requirement
    pattern = counterexample_pattern(2)
    t2 = EmbeddingType((1, 2, 1, 2, 3, 0, 0, 3), 3)
    st2 = type_stats(pattern, t2)
    assert st2.top_has_edge
    assert st2.bottom_matching == 0
    assert not is_type_admissible(pattern, t2, 2)


def test_type_copy_count_small_pins():
    assert type_copy_count(complete(3), EmbeddingType((1, 1, 2), 2), [3, 3]) == 3
    assert type_copy_count(path(3), EmbeddingType((1, 2, 1), 2), [3, 3]) == 9
    assert type_copy_count(complete(3), EmbeddingType((0, 0, 1), 2), [3, 3]) == 0


def test_type_copy_count_identity_embedding():
    t = EmbeddingType((1, 1, 2), 2)
    assert type_copy_count(complete(3), t, [2, 1]) >= 1


def test_type_copy_count_monotone_in_sizes():
    t = EmbeddingType((1, 2, 1), 2)
    a = type_copy_count(path(3), t, [3, 3])
    b = type_copy_count(path(3), t, [4, 3])
    c = type_copy_count(path(3), t, [4, 4])
    assert a <= b <= c


def test_type_count_polynomial_in_class_size():
    # with balanced class sizes m the count is a polynomial in m whose
    # degree equals the number of isolated bottom vertices
    cases = [
        (complete(3), EmbeddingType((1, 1, 2), 2)),
        (path(3), EmbeddingType((1, 2, 1), 2)),
        (disjoint_union(complete(3), complete(3)), EmbeddingType((1, 1, 2, 2, 2, 1), 2)),
    ]
    for pattern, etype in cases:
        degree = type_stats(pattern, etype).bottom_isolated
        samples = [
            type_copy_count(pattern, etype, [m, m])
            for m in range(4, 4 + degree + 2)
        ]
        diffs = list(samples)
        for _ in range(degree + 1):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        assert diffs == [0]
        if degree:
            assert samples[-1] > samples[0]


def test_admissibility_requires_criticality():
    with pytest.raises(ValueError):
        is_admissible(path(4), 1, 1)
    with pytest.raises(ValueError):
        admissibility_report(complete(3), 2, 2)


def test_petersen_fully_admissible():
    rep = admissibility_report(kneser(5), 2, 3)
    assert rep["types_total"] == 3**10
    assert rep["types_inadmissible"] == 0
    assert rep["admissible"] is True
    assert rep["first_inadmissible"] is None
    assert is_admissible(kneser(5), 2, 3)


def test_counterexample_pattern_not_admissible():
    pattern = counterexample_pattern(2)
    rep = admissibility_report(pattern, 3, 2)
    assert rep["types_total"] == 4**8
    assert rep["types_inadmissible"] == 12
    assert rep["admissible"] is False
    assert rep["first_inadmissible"] == [1, 2, 1, 2, 3, 0, 0, 3]
    found = find_inadmissible_type(pattern, 3, 2)
    assert found is not None
    assert list(found.assign) == [1, 2, 1, 2, 3, 0, 0, 3]


def test_admissibility_invariant_under_relabeling():
    rng = random.Random(23)
    g = disjoint_union(complete(3), complete(3))
    base = is_admissible(g, 2, 2)
    for _ in range(3):
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert is_admissible(g.relabel(perm), 2, 2) == base
