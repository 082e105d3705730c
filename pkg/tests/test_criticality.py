import itertools
import math
import random

from supersat.constructions import (
    complete,
    counterexample_pattern,
    cycle,
    extremal_host,
    kneser,
    star_cluster_pattern,
)
from supersat.counting import count_copies
from supersat.criticality import (
    critical_k_tuples,
    critical_matchings,
    critical_size,
    critical_subsets,
    is_color_k_critical,
    stable_threshold,
    unstable_threshold,
    vertex_deletion_stable,
)
from supersat.graphs import chromatic_number, disjoint_union

K3 = complete(3)
TWO_K3 = disjoint_union(K3, K3)
THREE_K3 = disjoint_union(TWO_K3, K3)
PAT2 = counterexample_pattern(2)
CLUSTER32 = star_cluster_pattern(3, 2)
CLUSTER33 = star_cluster_pattern(3, 3)


def test_triangle_is_one_critical_only():
    w = is_color_k_critical(K3, 1)
    assert w is not None
    assert w.chi == 3 and w.chi_after == 2
    assert len(w.matching) == 1
    assert is_color_k_critical(K3, 2) is None


def test_witness_reverification():
    for g, k in [(K3, 1), (cycle(5), 1), (TWO_K3, 2), (kneser(5), 3)]:
        w = is_color_k_critical(g, k)
        assert w is not None
        assert w.verify(g)
        # the witness edges form a matching of size exactly k
        assert len(w.matching) == k
        used = set(itertools.chain.from_iterable(w.matching))
        assert len(used) == 2 * k


def test_critical_matching_counts():
    assert len(critical_matchings(cycle(5), 1)) == 5
    assert len(critical_matchings(K3, 1)) == 3
    # one deletable edge from each triangle, independently
    assert len(critical_matchings(TWO_K3, 2)) == 9


def test_critical_k_tuples_for_triangle():
    tuples = critical_k_tuples(K3, 1)
    assert tuples == (((), (0, 1)), ((), (0, 2)), ((), (1, 2)))


def test_critical_size_pins():
    assert critical_size(K3) == 1
    assert critical_size(cycle(5)) == 1
    assert critical_size(TWO_K3) == 2
    assert critical_size(THREE_K3) == 3
    assert critical_size(PAT2) == 2
    assert critical_size(CLUSTER32) == 3
    assert critical_size(CLUSTER33) == 3


def test_kneser_graphs_are_three_critical():
    for t in (5, 6):
        g = kneser(t)
        w = is_color_k_critical(g, 3)
        assert w is not None
        assert w.verify(g)
        # condition on vertex deletions holds pair by pair
        chi = chromatic_number(g)
        pairs = list(itertools.combinations(range(g.n), 2))
        assert len(pairs) == math.comb(g.n, 2)
        for pair in pairs:
            assert chromatic_number(g.delete_vertices(pair)) == chi


def test_deleting_fewer_vertices_never_drops_chi():
    for g in (TWO_K3, PAT2, CLUSTER32):
        lam = critical_size(g)
        chi = chromatic_number(g)
        for subset in itertools.combinations(range(g.n), lam - 1):
            assert chromatic_number(g.delete_vertices(subset)) == chi


def test_extremal_hosts_are_pattern_free():
    cases = [
        (K3, 1, (8, 11)),
        (TWO_K3, 2, (9, 12)),
        (PAT2, 2, (11, 13)),
        (kneser(5), 3, (12, 14)),
    ]
    for pattern, k, n_values in cases:
        r = chromatic_number(pattern) - 1
        for n in n_values:
            host = extremal_host(n, r, k)
            assert count_copies(pattern, host.graph) == 0


def test_critical_subsets_of_petersen_all_stable():
    assert critical_size(kneser(5)) == 3
    recs = critical_subsets(kneser(5))
    assert len(recs) == 30
    assert all(r.stable for r in recs)
    assert all(len(r.vertices) == 3 for r in recs)


def test_critical_subsets_of_counterexample_pattern():
    recs = critical_subsets(PAT2)
    assert [(r.vertices, r.stable) for r in recs] == [
        ((0, 2), True),
        ((0, 3), True),
        ((1, 2), True),
        ((1, 3), True),
        ((4, 6), True),
        ((5, 6), False),
        ((5, 7), True),
    ]


def test_critical_subsets_of_star_cluster():
    recs = critical_subsets(CLUSTER32)
    assert len(recs) == 9
    assert sum(1 for r in recs if r.stable) == 8


def test_stability_flag_matches_edge_span():
    for g in (PAT2, CLUSTER32):
        for r in critical_subsets(g):
            spans_edge = any(
                g.has_edge(a, b)
                for a, b in itertools.combinations(r.vertices, 2)
            )
            assert r.stable == (not spans_edge)


def test_vertex_deletion_stability_boundary():
    for g in (TWO_K3, PAT2, CLUSTER32):
        lam = critical_size(g)
        assert vertex_deletion_stable(g, lam)
        assert not vertex_deletion_stable(g, lam + 1)


def test_threshold_parameter_pins():
    assert stable_threshold(TWO_K3) == math.inf
    assert unstable_threshold(TWO_K3) == math.inf
    assert stable_threshold(THREE_K3) == math.inf
    assert unstable_threshold(THREE_K3) == math.inf
    assert (stable_threshold(CLUSTER32), unstable_threshold(CLUSTER32)) == (4, 2)
    assert (stable_threshold(CLUSTER33), unstable_threshold(CLUSTER33)) == (5, 3)
    assert (stable_threshold(PAT2), unstable_threshold(PAT2)) == (2, 1)


def test_thresholds_survive_relabeling():
    rng = random.Random(7)
    for g in (PAT2, CLUSTER32):
        want = (stable_threshold(g), unstable_threshold(g), critical_size(g))
        for _ in range(3):
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = g.relabel(perm)
            got = (stable_threshold(h), unstable_threshold(h), critical_size(h))
            assert got == want
