
import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_triangles, random_simple_stream
from wrs_triangles.exact import (
    ContractError,
    ExactCounter,
    TriangleRecord,
    closing_interval,
    count_triangles_batch,
    exact_counts,
    interval_ccdf,
    interval_distribution,
    total_interval,
    triangle_records,
)
from wrs_triangles.stream import TimedEdge, shuffle_stream, timed
from wrs_triangles.synthetic import synthetic_edges


def test_k3_closes_one_triangle(k3_stream):
    ex = ExactCounter()
    assert ex.insert(k3_stream[0]) == []
    assert ex.insert(k3_stream[1]) == []
    assert ex.insert(k3_stream[2]) == [TriangleRecord((1, 2, 3), 1, 2, 3)]
    assert exact_counts(ex) == (1, {1: 1, 2: 1, 3: 1})


def test_fresh_state():
    assert exact_counts(ExactCounter()) == (0, {})


@pytest.mark.parametrize("seed", range(5))
def test_k4_any_order(k4_stream, seed):
    edges = timed(shuffle_stream(k4_stream, seed))
    ex = ExactCounter().extend(edges)
    expected_total, expected_local = brute_force_triangles(edges)
    assert (expected_total, expected_local) == (4, {1: 3, 2: 3, 3: 3, 4: 3})
    assert exact_counts(ex) == (expected_total, expected_local)


def test_star_has_no_triangles():
    ex = ExactCounter()
    for e in timed((0, leaf) for leaf in range(1, 30)):
        assert ex.insert(e) == []
    assert ex.global_count == 0


def test_out_of_order_rejected():
    ex = ExactCounter()
    with pytest.raises(ContractError):
        ex.insert(TimedEdge(1, 2, 2))


def test_duplicate_rejected():
    ex = ExactCounter()
    ex.insert(TimedEdge(1, 2, 1))
    with pytest.raises(ContractError):
        ex.insert(TimedEdge(1, 2, 2))


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 25), st.integers(0, 200), st.integers(0, 2**32))
def test_incremental_matches_batch_on_every_prefix(n_nodes, n_edges, seed):
    edges = random_simple_stream(n_nodes, n_edges, seed)
    ex = ExactCounter()
    for i, e in enumerate(edges):
        ex.insert(e)
        assert sum(ex.local_counts.values()) == 3 * ex.global_count
        if i % 17 == 0 or i == len(edges) - 1:
            assert exact_counts(ex) == brute_force_triangles(edges[: i + 1])


def test_batch_enumerator_matches_networkx():
    edges = synthetic_edges(5000, 0.7, 3)
    g = nx.Graph(edges)
    local = {u: c for u, c in nx.triangles(g).items() if c}
    assert count_triangles_batch(edges) == (sum(local.values()) // 3, local)
    ex = ExactCounter().extend(timed(edges))
    assert exact_counts(ex) == (sum(local.values()) // 3, local)


def test_final_counts_permutation_invariant_intervals_not():
    edges = synthetic_edges(3000, 0.9, 11)
    real = ExactCounter(keep_records=True).extend(timed(edges))
    shuf = ExactCounter(keep_records=True).extend(timed(shuffle_stream(edges, 1)))
    assert exact_counts(real) == exact_counts(shuf)
    real_d = interval_distribution(real.records, "closing")
    shuf_d = interval_distribution(shuf.records, "closing")
    assert real_d.mean < shuf_d.mean


def test_record_times_sorted():
    r = TriangleRecord.from_times((3, 1, 2), (9, 4, 6))
    assert (r.nodes, r.t1, r.t2, r.t3) == ((1, 2, 3), 4, 6, 9)


def test_record_requires_distinct_times():
    with pytest.raises(ValueError):
        TriangleRecord((1, 2, 3), 1, 2, 2)


@pytest.mark.parametrize(
    "times, closing, total",
    [((1, 2, 3), 1, 2), ((5, 80, 100), 20, 95)],
)
def test_intervals(times, closing, total):
    r = TriangleRecord((1, 2, 3), *times)
    assert closing_interval(r) == closing
    assert total_interval(r) == total


@given(st.lists(st.integers(1, 10**6), min_size=3, max_size=3, unique=True))
def test_total_at_least_closing(times):
    r = TriangleRecord.from_times((1, 2, 3), times)
    assert total_interval(r) >= closing_interval(r) >= 1


class TestIntervalDistribution:
    def test_empty(self):
        table = interval_distribution([], "closing")
        assert len(table) == 0 and table.rows() == []

    def test_single_record(self):
        table = interval_distribution([TriangleRecord((1, 2, 3), 1, 2, 3)], "closing")
        assert table.rows() == [(1, 2, 1, 1.0)]
        assert interval_ccdf([TriangleRecord((1, 2, 3), 1, 2, 3)], "closing", [0]) == [1.0]

    def test_log2_bins_cover_values(self):
        recs = [TriangleRecord((1, 2, 3), 1, 2, 2 + x) for x in (1, 2, 3, 4, 9)]
        table = interval_distribution(recs, "closing")
        assert table.bin_low == [1, 2, 4, 8]
        assert table.bin_high == [2, 4, 8, 16]
        assert table.count == [1, 2, 1, 1]
        assert table.ccdf == [1.0, 0.8, 0.4, 0.2]

    def test_explicit_bins(self):
        recs = [TriangleRecord((1, 2, 3), 1, 2, 2 + x) for x in (1, 5, 50)]
        table = interval_distribution(recs, "total", bins=[1, 10, 100])
        assert table.count == [2, 1]  # totals 2, 6, 51

    def test_unknown_which(self):
        with pytest.raises(ValueError):
            interval_distribution([TriangleRecord((1, 2, 3), 1, 2, 3)], "median")

    def test_geometric_ccdf(self):
        # X ~ Geometric(q) on {1, 2, ...}: P(X >= x) = (1 - q) ** (x - 1)
        q = 0.05
        xs = np.random.default_rng(7).geometric(q, size=1000)
        recs = [TriangleRecord((1, 2, 3), 1, 2, 2 + int(x)) for x in xs]
        points = [1, 10, 100]
        emp = interval_ccdf(recs, "closing", points)
        for x, e in zip(points, emp):
            assert abs(e - (1 - q) ** (x - 1)) <= 0.03
        table = interval_distribution(recs, "closing", bins="log10")
        assert table.bin_low[:3] == [1, 10, 100]
        for low, c in zip(table.bin_low, table.ccdf):
            assert abs(c - (1 - q) ** (low - 1)) <= 0.03

    def test_csv(self, tmp_path):
        recs = triangle_records(timed([(1, 2), (1, 3), (2, 3)]))
        p = interval_distribution(recs, "total").write_csv(tmp_path / "t.csv")
        assert p.read_text().splitlines() == ["bin_low,bin_high,count,ccdf", "1,2,0,1.0", "2,4,1,1.0"]
