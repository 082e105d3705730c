import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strategies import graph_pairs, graphs
from supersat.constructions import (
    complete,
    counterexample_pattern,
    cycle,
    extremal_host_with_edge,
    independent,
    kneser,
    matching,
    path,
    turan,
)
from supersat.counting import (
    IntersectionSignature,
    active_backend,
    automorphism_count,
    count_copies,
    count_copies_by_contact,
    count_copies_by_edge_usage,
    count_copies_classified,
    count_copies_with_max_contact,
    count_copies_with_required,
    count_injections,
    count_injections_restricted,
    count_report,
    engine_info,
)
from supersat.graphs import Graph


def test_small_frozen_counts():
    assert count_copies(complete(3), complete(5)) == 10
    assert count_copies(path(3), complete(4)) == 12
    assert count_copies(matching(2), complete(4)) == 3
    assert count_copies(complete(4), complete(4)) == 1
    assert count_copies(cycle(5), kneser(5)) == 12
    assert count_copies(complete(4), complete(3)) == 0
    assert count_copies(independent(3), independent(5)) == 10


def test_automorphism_counts():
    assert automorphism_count(complete(4)) == 24
    assert automorphism_count(cycle(5)) == 10
    assert automorphism_count(path(4)) == 2
    assert automorphism_count(matching(3)) == 48
    assert automorphism_count(kneser(5)) == 120


@settings(max_examples=80, deadline=None)
@given(graph_pairs())
def test_engine_matches_naive_oracle(pair):
    pattern, host = pair
    assert count_injections(pattern, host) == oracles.naive_injection_count(pattern, host)
    assert count_copies(pattern, host) == oracles.naive_copy_count(pattern, host)


@settings(max_examples=80, deadline=None)
@given(graph_pairs())
def test_injections_factor_as_copies_times_aut(pair):
    pattern, host = pair
    inj = count_injections(pattern, host)
    aut = automorphism_count(pattern)
    assert inj == count_copies(pattern, host) * aut


@settings(max_examples=50, deadline=None)
@given(graph_pairs(), st.randoms(use_true_random=False))
def test_count_invariant_under_host_relabeling(pair, rng):
    pattern, host = pair
    perm = list(range(host.n))
    rng.shuffle(perm)
    assert count_copies(pattern, host.relabel(perm)) == count_copies(pattern, host)


@settings(max_examples=50, deadline=None)
@given(graph_pairs(max_pattern=4, max_host=6))
def test_count_monotone_under_host_edges(pair):
    pattern, host = pair
    missing = [
        (a, b)
        for a in range(host.n)
        for b in range(a + 1, host.n)
        if not host.has_edge(a, b)
    ]
    base = count_copies(pattern, host)
    for edge in missing[:3]:
        assert count_copies(pattern, host.add_edge(*edge)) >= base


def test_required_edge_decomposition():
    pattern = counterexample_pattern(2)
    host = extremal_host_with_edge(12, 3, 2, 1).graph
    e = extremal_host_with_edge(12, 3, 2, 1).added_edges[0]
    with_e = count_copies_with_required(pattern, host, [e])
    without_e = count_copies(pattern, host.delete_edge(*e))
    assert with_e + without_e == count_copies(pattern, host)
    assert count_copies_with_required(pattern, host, []) == count_copies(pattern, host)


def test_forbidden_edges_complement_required():
    host = complete(5)
    e = (0, 1)
    total = count_copies(complete(3), host)
    req = count_copies_with_required(complete(3), host, [e])
    forb = count_copies_with_required(complete(3), host, [], forbidden=[e])
    assert req + forb == total
    assert req == 3


def test_edge_usage_histogram():
    pattern = complete(3)
    host = turan(9, 3)
    inside = (0, 1)
    g = host.add_edge(*inside)
    hist = count_copies_by_edge_usage(pattern, g, [inside])
    assert sum(hist.values()) == count_copies(pattern, g)
    assert hist[0] == count_copies(pattern, host)
    assert hist[1] == count_copies_with_required(pattern, g, [inside])


def test_contact_histograms():
    pattern = complete(3)
    host = complete(6)
    core = [0, 1]
    hist = count_copies_by_contact(pattern, host, core)
    assert hist == {0: 4, 1: 12, 2: 4}
    assert sum(hist.values()) == count_copies(pattern, host) == 20
    assert count_copies_with_max_contact(pattern, host, core, 0) == 4
    assert count_copies_with_max_contact(pattern, host, core, 1) == 16
    assert count_copies_with_max_contact(pattern, host, core, 2) == 20


def test_restricted_injections():
    host = complete(6)
    # triangle with each vertex confined to its own pair of host vertices
    regions = [[0, 1], [2, 3], [4, 5]]
    assert count_injections_restricted(complete(3), host, regions) == 8
    full = [list(range(6))] * 3
    assert count_injections_restricted(complete(3), host, full) == count_injections(
        complete(3), host
    )


def test_classified_totals_and_single_signature():
    host = turan(9, 3)
    cls = count_copies_classified(
        complete(3), host, {"A": range(3), "B": range(3, 9)}
    )
    assert len(cls) == 1
    (sig, value), = cls.items()
    assert value == 27
    assert str(sig) == "F: A=1 B=2"
    assert sig.count("F", "A") == 1
    assert sig.count("F", "B") == 2


def test_classified_multi_piece_agrees_on_totals():
    pattern = counterexample_pattern(2)
    labeled = extremal_host_with_edge(12, 3, 2, 1)
    host = labeled.graph
    host_pieces = dict(labeled.pieces)
    single = count_copies_classified(pattern, host, host_pieces)
    split = count_copies_classified(
        pattern, host, host_pieces, {"A": range(4), "B": range(4, 8)}
    )
    total = count_copies(pattern, host)
    assert sum(single.values()) == total
    assert sum(split.values()) == total


def test_classified_rejects_non_partition():
    host = turan(6, 2)
    with pytest.raises(ValueError):
        count_copies_classified(complete(3), host, {"A": range(4)})
    with pytest.raises(ValueError):
        count_copies_classified(
            complete(3), host, {"A": range(4), "B": range(3, 6)}
        )


def test_classified_ambiguous_placement_raises():
    pattern = matching(1)
    host = Graph(2, [(0, 1)])
    with pytest.raises(ValueError, match="ambiguous"):
        count_copies_classified(
            pattern,
            host,
            {"L": [0], "R": [1]},
            {"A": [0], "B": [1]},
        )


def test_count_report_json_shape():
    rep = count_report(
        complete(3),
        turan(9, 3),
        "triangle",
        "host",
        host_pieces={"A": range(3), "B": range(3, 9)},
    )
    doc = rep.to_json_dict()
    assert doc["copies"] == "27"
    assert doc["injections"] == "162"
    assert doc["aut"] == "6"
    assert doc["backend"] in ("compiled", "pure")
    assert doc["classification"] == {"F: A=1 B=2": "27"}
    json.dumps(doc)


def test_engine_info_reports_backend():
    info = engine_info()
    assert info["backend_default"] in ("compiled", "pure")
    assert active_backend(5) in ("compiled", "pure")


def test_large_hosts_fall_back_to_pure_kernel():
    big = turan(70, 2).add_edge(0, 1)
    assert big.n > 64
    assert active_backend(big.n) == "pure"
    assert count_copies(complete(3), big) == 35


def test_pure_kernel_agrees_with_compiled():
    if engine_info()["backend_default"] != "compiled":
        pytest.skip("compiled kernel not active")
    pattern = counterexample_pattern(2)
    host = extremal_host_with_edge(12, 3, 2, 1).graph
    here = count_copies(pattern, host)
    code = (
        "from supersat.counting import count_copies, engine_info\n"
        "from supersat.constructions import counterexample_pattern, extremal_host_with_edge\n"
        "assert engine_info()['backend_default'] == 'pure'\n"
        "host = extremal_host_with_edge(12, 3, 2, 1).graph\n"
        "print(count_copies(counterexample_pattern(2), host))\n"
    )
    env = dict(os.environ, SUPERSAT_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    assert int(out.stdout.strip()) == here == 288
