"""Closed forms and evaluators against exhaustive counts.

The counting engine itself is validated in test_counting.py, so here it
serves as the oracle: every formula value gets recomputed by brute count
on an explicitly built host at least once.
"""

import math
from fractions import Fraction

import pytest

from supersat.constructions import (
    complete,
    counterexample_pattern,
    extremal_host_with_edge,
    star_cluster_pattern,
    starred_host,
    trimmed_starred_host,
    turan,
    extremal_edge_count,
)
from supersat.counting import count_copies, count_copies_by_edge_usage
from supersat.graphs import CapExceeded, disjoint_union
from supersat import formulas as F
from supersat import suites


K3 = complete(3)
K4 = complete(4)
TWO_K3 = disjoint_union(K3, K3)
PAT2 = counterexample_pattern(2)
CLUSTER32 = star_cluster_pattern(3, 2)

# Planted-edge copy counts of the order-2 counterexample pattern, by part,
# over the window where the per-part minimum settles into the first part.
WINDOW = {
    11: [144, 144, 144],
    12: [288, 288, 288],
    13: [576, 576, 576],
    14: [864, 960, 960],
    15: [1440, 1440, 1600],
}


class TestPartWindow:
    def test_by_part_matches_frozen_window(self):
        for n, expected in WINDOW.items():
            assert F.one_edge_copies_by_part(PAT2, 2, n) == expected

    def test_closed_form_matches_evaluator(self):
        for n in WINDOW:
            for part in (1, 2, 3):
                assert F.counterexample_part_copies(n, 2, part) == WINDOW[n][part - 1]
            assert F.counterexample_part_copies_all(n, 2) == WINDOW[n]

    def test_minimum_lands_in_first_part(self):
        for n, row in WINDOW.items():
            assert F.min_one_edge_copies(PAT2, 2, n) == row[0] == min(row)

    def test_evaluator_matches_brute_count(self):
        # Independent of the closed form: build each planted-edge host and
        # count the pattern directly.
        for n in (11, 14):
            for part in (1, 2, 3):
                host = extremal_host_with_edge(n, 3, 2, part=part)
                assert count_copies(PAT2, host.graph) == WINDOW[n][part - 1]

    def test_undersized_parts_report_none(self):
        # n=5 leaves parts 2 and 3 with a single vertex: no edge fits there.
        assert F.one_edge_copies_by_part(PAT2, 2, 5) == [0, None, None]
        # n=9 fits an edge everywhere but part 3 is too tight for a copy.
        assert F.one_edge_copies_by_part(PAT2, 2, 9) == [24, 24, 0]


class TestPetersenFormula:
    def test_frozen_values(self):
        expected = {16: 33600, 18: 100800, 20: 254016}
        for n, value in expected.items():
            assert F.petersen_one_edge_formula(n) == value

    def test_reduces_to_binomials(self):
        for n in range(13, 30):
            value = 96 * math.comb(math.ceil(n / 2) - 3, 2) * math.comb(n // 2 - 1, 4)
            assert F.petersen_one_edge_formula(n) == value

    def test_guard_below_thirteen(self):
        with pytest.raises(ValueError, match="n >= 13"):
            F.petersen_one_edge_formula(12)


class TestThreshold:
    def test_threshold_values(self):
        assert [F.counterexample_threshold(k) for k in (2, 3, 4)] == [4, 11, 22]

    def test_ratio_is_one_below_threshold(self):
        n = 10**6
        for k in (2, 3, 4):
            thr = F.counterexample_threshold(k)
            assert F.main_term_ratio(n, k, thr - 1) == 1

    def test_ratio_drops_below_one_at_threshold(self):
        n = 10**6
        assert F.main_term_ratio(n, 2, 4) == Fraction(15, 16)
        assert F.main_term_ratio(n, 3, 11) == Fraction(140, 143)
        assert F.main_term_ratio(n, 4, 22) == Fraction(98, 99)
        for k in (2, 3, 4):
            thr = F.counterexample_threshold(k)
            for q in (thr, thr + 1, thr + 5):
                assert F.main_term_ratio(n, k, q) < 1

    def test_star_host_main_term(self):
        assert F.star_host_main_term(18, 2, 4) == 18000
        assert F.star_host_main_term(20, 2, 5) == 40500


class TestDetachedEvaluators:
    def test_matching_evaluator_matches_brute(self):
        # Two disjoint triangles, a 2-matching planted in one side of the
        # balanced bipartite Turan graph.
        host = turan(12, 2).add_edges([(0, 1), (2, 3)])
        assert count_copies(TWO_K3, host) == 30
        assert F.min_matching_copies(TWO_K3, 2, 12) == 30

    def test_matching_reduces_to_one_edge_for_k1(self):
        for n in (10, 11, 12):
            assert F.min_matching_copies(K3, 1, n) == F.min_one_edge_copies(K3, 1, n)

    def test_one_edge_pins_for_triangle(self):
        assert [F.min_one_edge_copies(K3, 1, n) for n in (10, 11, 12)] == [5, 5, 6]

    def test_detached_edge_matches_brute(self):
        # Drop the spine edges from the planted-edge host by hand and count.
        for n, expected in ((12, 144), (13, 288), (14, 432)):
            host = extremal_host_with_edge(n, 3, 2, part=1)
            (u, v) = host.added_edges[0]
            x0 = host.piece("X")[0]
            stripped = host.graph.delete_edges([(x0, u), (x0, v)])
            assert count_copies(PAT2, stripped) == expected
            assert F.min_detached_edge_copies(PAT2, 2, n) == expected

    def test_detached_edge_equals_one_edge_for_k1(self):
        assert F.min_detached_edge_copies(K3, 1, 12) == F.min_one_edge_copies(K3, 1, 12)


class TestSurplus:
    # Minimum copies over all ways of adding q edges to the extremal host,
    # next to the one-edge minimum c.
    TABLE = {
        "K3": (K3, 1, 12, 6, [6, 12, 18]),
        "K4": (K4, 1, 12, 16, [16, 32, 48]),
        "2K3": (TWO_K3, 2, 12, 80, [80, 160, 240]),
        "pat2": (PAT2, 2, 12, 288, [288, 828, 1876]),
    }

    @pytest.mark.parametrize("name", sorted(TABLE))
    def test_surplus_table(self, name):
        pattern, k, n, c, t_values = self.TABLE[name]
        assert F.min_one_edge_copies(pattern, k, n) == c
        for q, t in enumerate(t_values, start=1):
            assert F.min_surplus_copies(pattern, n, k, q) == t
            assert t >= q * c

    def test_surplus_exceeds_additive_bound_for_counterexample(self):
        # The order-2 pattern is the one where q disjoint planted edges do
        # not stay optimal: the true minimum is strictly larger.
        assert F.min_surplus_copies(PAT2, 12, 2, 2) > 2 * 288

    def test_cap_aborts_search(self):
        with pytest.raises(CapExceeded):
            F.min_surplus_copies(K3, 12, 1, 3, cap=10)


class TestStarBuckets:
    def test_single_star_decomposition(self):
        # Copies of the 3-star cluster in the trimmed host, split by how
        # many star edges each copy uses. One-star copies scale linearly
        # with the number of leaves; multi-star copies appear only once
        # the star is big enough to hold two pattern edges.
        n, r, k = 17, 3, 3
        base = F.min_one_edge_copies(CLUSTER32, k, n)
        assert base == 21600
        assert F.min_detached_edge_copies(CLUSTER32, k, n) == base
        for leaves in (1, 2, 3, 4):
            host = trimmed_starred_host(n, r, k, (leaves, 0, 0))
            hist = count_copies_by_edge_usage(CLUSTER32, host.graph, host.added_edges)
            assert hist.get(0, 0) == 0
            assert hist.get(1, 0) == leaves * base
            multi = sum(v for u, v in hist.items() if u >= 2)
            assert multi == (43200 if leaves == 4 else 0)

    def test_core_exceptions_vanish(self):
        # Every copy in the trimmed host must put at least k vertices on
        # the spine-plus-centers core.
        for profile in ((2, 0), (2, 1)):
            host = trimmed_starred_host(12, 2, 2, profile)
            core = tuple(host.piece("X")) + tuple(host.params["centers"])
            assert F.trimmed_core_exceptions(TWO_K3, host.graph, core, 2) == 0


class TestConsistency:
    # Any host sitting q edges above the extremal count must carry at least
    # q times the detached-edge minimum.
    CASES = [
        (TWO_K3, 2, 2, 12, (3, 0)),
        (PAT2, 3, 2, 14, (3, 1, 0)),
    ]

    @pytest.mark.parametrize("pattern,r,k,n,profile", CASES)
    def test_starred_and_trimmed_hosts(self, pattern, r, k, n, profile):
        floor = F.min_detached_edge_copies(pattern, k, n)
        for build in (starred_host, trimmed_starred_host):
            host = build(n, r, k, profile)
            q_actual = host.graph.edge_count - extremal_edge_count(n, r, k)
            assert q_actual >= 1
            assert count_copies(pattern, host.graph) >= q_actual * floor


class TestReports:
    def test_part_window_report(self):
        report = F.verify_part_window()
        assert report.agreement
        assert report.quantity == "counterexample-part-window"

    def test_petersen_report(self):
        report = F.verify_petersen(n_values=(16,))
        assert report.agreement

    def test_surplus_report_json(self):
        report = F.verify_surplus(PAT2, 12, 2, 2)
        assert report.agreement
        assert report.details["holds"]
        doc = report.to_json_dict()
        assert doc["schema"] == 1
        assert doc["formula_value"] == "576"
        assert doc["oracle_value"] == "828"
        assert doc["parameters"]["pattern_vertices"] == "8"

    def test_counterexample_exact_mode(self):
        report = F.verify_counterexample(18, 2, 4)
        assert report.agreement
        assert report.details["zero_star"] == 0
        assert report.details["one_star"] == F.star_host_main_term(18, 2, 4)
        assert report.details["multi_star"] == 54000
        # The star host loses to four separate edges at this size even
        # though it wins asymptotically.
        assert report.details["predicted_beat"] and not report.details["beats"]

    def test_counterexample_star_too_large(self):
        with pytest.raises(ValueError, match="too small"):
            F.verify_counterexample(18, 2, 5)

    def test_counterexample_formula_mode(self):
        low = F.verify_counterexample(10**6, 2, 3, mode="formula")
        high = F.verify_counterexample(10**6, 2, 4, mode="formula")
        assert low.agreement and not low.details["predicted_beat"]
        assert high.agreement and high.details["predicted_beat"]


class TestSuites:
    def test_part_window_suite_document(self):
        doc = suites.run_suite("part-window")
        assert doc["schema"] == 1 and doc["passed"]
        names = [m["name"] for m in doc["members"]]
        assert len(names) == 20
        assert "n=13 part=2" in names

    def test_summary_table_mentions_members(self):
        doc = suites.run_suite("part-window")
        table = suites.summary_table(doc)
        assert "part-window" in table
        assert "pass" in table.lower()

    def test_unknown_suite_rejected(self):
        with pytest.raises(ValueError):
            suites.run_suite("no-such-suite")
