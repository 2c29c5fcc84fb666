"""Tests for binary and valued betweenness centrality."""

import time

import numpy as np
import pytest

from helpers import (
    CITATION_LINKS,
    bc_oracle,
    network_from_dense,
    peak_memory_bytes,
    random_dense,
    scale_model,
    shortest_path_oracle,
)
from raonet.errors import DataError, LengthMappingError
from raonet.indicators import (
    LengthMapping,
    bc_binary,
    bc_valued,
    centrality_table,
    normalize_bc,
    rank_table,
)
from raonet.indicators.centrality import binary_betweenness, valued_betweenness
from raonet.models import CentralityRecord, LengthMode


def raw_binary(matrix, **kwargs) -> np.ndarray:
    return binary_betweenness(network_from_dense(matrix), **kwargs)


def raw_valued(matrix, mode=LengthMode.INVERSE, **kwargs) -> np.ndarray:
    net = network_from_dense(matrix)
    return valued_betweenness(net, LengthMapping.for_network(net, mode), **kwargs)


class TestBinaryBetweenness:
    def test_directed_path(self):
        records = bc_binary(network_from_dense([[0, 1, 0], [0, 0, 1], [0, 0, 0]], ["A", "B", "C"]))
        assert [r.bc_raw for r in records] == [0.0, 1.0, 0.0]
        assert records[1].bc_normalized == pytest.approx(50.0)
        assert records[1].node == 2
        assert records[1].label == "B"

    def test_directed_star(self):
        matrix = np.zeros((4, 4))
        matrix[0, 1:] = 1
        np.testing.assert_array_equal(raw_binary(matrix), np.zeros(4))

    def test_two_nodes(self):
        records = bc_binary(network_from_dense([[0, 1], [1, 0]]))
        assert all(r.bc_raw == 0.0 and r.bc_normalized == 0.0 for r in records)

    def test_parallel_geodesics_share_credit(self):
        # A -> B -> D and A -> C -> D
        matrix = np.zeros((4, 4))
        matrix[0, 1] = matrix[0, 2] = matrix[1, 3] = matrix[2, 3] = 1
        np.testing.assert_allclose(raw_binary(matrix), [0, 0.5, 0.5, 0])

    def test_against_oracle(self, rng):
        for _ in range(100):
            n = int(rng.integers(3, 11))
            matrix = random_dense(rng, n, 0.3)
            np.testing.assert_allclose(raw_binary(matrix), shortest_path_oracle(matrix), rtol=0, atol=1e-9)

    def test_simple_path_oracle_small(self, rng):
        for _ in range(20):
            n = int(rng.integers(3, 7))
            matrix = random_dense(rng, n, 0.4)
            np.testing.assert_allclose(raw_binary(matrix), bc_oracle(matrix), rtol=0, atol=1e-9)

    def test_loops_never_matter(self, rng):
        for _ in range(10):
            matrix = random_dense(rng, 9, 0.3, loops=False)
            looped = matrix + np.diag(rng.integers(1, 5, size=9))
            np.testing.assert_array_equal(raw_binary(matrix), raw_binary(looped))
            np.testing.assert_array_equal(raw_valued(matrix), raw_valued(looped))

    def test_worker_count_does_not_change_bits(self, rng):
        matrix = random_dense(rng, 40, 0.1)
        single = raw_binary(matrix, workers=1, batch_size=7)
        several = raw_binary(matrix, workers=4, batch_size=7)
        assert single.tobytes() == several.tobytes()


class TestValuedBetweenness:
    def test_strong_detour_beats_weak_arc(self):
        # A -> C w=1, A -> B w=10, B -> C w=10
        matrix = [[0, 10, 1], [0, 0, 10], [0, 0, 0]]
        np.testing.assert_allclose(raw_valued(matrix), [0, 1, 0])
        np.testing.assert_array_equal(raw_binary(matrix), [0, 0, 0])

    def test_single_arc(self):
        records = bc_valued(network_from_dense([[0, 4], [0, 0]]), LengthMapping())
        assert [r.bc_valued_raw for r in records] == [0.0, 0.0]

    @pytest.mark.parametrize("mode", list(LengthMode))
    def test_uniform_weights_match_binary(self, rng, mode):
        for _ in range(20):
            matrix = random_dense(rng, 9, 0.3, loops=False)
            uniform = np.where(matrix > 0, 3.0, 0.0)
            np.testing.assert_allclose(raw_valued(uniform, mode), raw_binary(uniform), rtol=0, atol=1e-9)

    def test_against_weighted_oracle(self, rng):
        for _ in range(100):
            n = int(rng.integers(3, 9))
            matrix = random_dense(rng, n, 0.3, max_weight=10)
            expected = bc_oracle(matrix, lengths=lambda w: 1.0 / w)
            np.testing.assert_allclose(raw_valued(matrix), expected, rtol=0, atol=1e-9)

    def test_scale_invariance_under_inverse_lengths(self, rng):
        for _ in range(20):
            matrix = random_dense(rng, 10, 0.3, max_weight=10)
            np.testing.assert_allclose(raw_valued(matrix * 7.5), raw_valued(matrix), rtol=0, atol=1e-9)

    def test_worker_count_does_not_change_bits(self, rng):
        matrix = random_dense(rng, 40, 0.1, max_weight=10)
        single = raw_valued(matrix, workers=1, batch_size=5)
        several = raw_valued(matrix, workers=3, batch_size=5)
        assert single.tobytes() == several.tobytes()


class TestLengthMapping:
    def test_modes(self):
        weights = np.array([1.0, 2.0, 4.0])
        np.testing.assert_allclose(LengthMapping(LengthMode.INVERSE).lengths(weights), [1, 0.5, 0.25])
        np.testing.assert_allclose(LengthMapping(LengthMode.UNIT).lengths(weights), [1, 1, 1])
        mapping = LengthMapping(LengthMode.MAX_PLUS_ONE_MINUS, max_weight=4.0)
        np.testing.assert_allclose(mapping.lengths(weights), [4, 3, 1])

    def test_for_network_ignores_loops(self):
        net = network_from_dense([[9, 2], [3, 0]])
        assert LengthMapping.for_network(net, LengthMode.MAX_PLUS_ONE_MINUS).max_weight == 3.0

    def test_non_positive_length(self):
        with pytest.raises(LengthMappingError):
            LengthMapping(LengthMode.MAX_PLUS_ONE_MINUS, max_weight=2.0).lengths(np.array([5.0]))

    def test_infinite_length(self):
        with pytest.raises(LengthMappingError):
            LengthMapping(LengthMode.INVERSE).lengths(np.array([0.0]))

    def test_missing_maximum(self):
        with pytest.raises(LengthMappingError):
            LengthMapping(LengthMode.MAX_PLUS_ONE_MINUS).lengths(np.array([1.0]))


class TestCentralityTable:
    def test_normalization(self):
        np.testing.assert_allclose(normalize_bc([2.0, 0.0], 5), [100 * 2 / 12, 0])
        np.testing.assert_array_equal(normalize_bc([1.0, 1.0], 2), [0.0, 0.0])

    def test_valued_columns_filled(self):
        net = network_from_dense([[0, 10, 1], [0, 0, 10], [0, 0, 0]], ["A", "B", "C"])
        records = centrality_table(net, valued=True)
        assert records[1].bc_raw == 0.0
        assert records[1].bc_valued_raw == pytest.approx(1.0)
        assert records[1].bc_valued_normalized == pytest.approx(50.0)

    def test_binary_only(self):
        records = centrality_table(network_from_dense([[0, 1], [0, 0]]))
        assert records[0].bc_valued_raw is None

    def test_symmetrize_first(self):
        # A -> B -> C becomes an undirected path: B lies between (A, C) and (C, A)
        net = network_from_dense([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        records = centrality_table(net, symmetrize_first=True)
        assert records[1].bc_raw == 2.0

    def test_normalized_within_percent_range(self, rng):
        net = network_from_dense(random_dense(rng, 25, 0.2))
        for record in centrality_table(net, valued=True):
            assert 0.0 <= record.bc_normalized <= 100.0
            assert 0.0 <= record.bc_valued_normalized <= 100.0


class TestRankTable:
    @staticmethod
    def records(values: dict[str, float]) -> list[CentralityRecord]:
        return [CentralityRecord(node=i, label=label, bc_raw=value)
                for i, (label, value) in enumerate(values.items(), start=1)]

    def test_ties_share_smaller_rank_in_label_order(self):
        rows = rank_table(self.records({"A": 2, "B": 5, "C": 2}), "bc_raw")
        assert [(row.label, row.rank) for row in rows] == [("B", 1), ("A", 2), ("C", 2)]

    def test_empty(self):
        assert rank_table([], "bc_raw") == []

    def test_all_equal(self):
        rows = rank_table(self.records({"C": 1, "A": 1, "B": 1}), "bc_raw")
        assert [(row.label, row.rank) for row in rows] == [("A", 1), ("B", 1), ("C", 1)]

    def test_missing_values_last(self):
        rows = rank_table(self.records({"A": 1}) + [CentralityRecord(node=2, label="B")], "bc_raw")
        assert [row.label for row in rows] == ["A", "B"]
        assert rows[1].value is None

    def test_unknown_key(self):
        with pytest.raises(DataError, match="unknown ranking key"):
            rank_table(self.records({"A": 1}), "impact")


@pytest.mark.scale
def test_full_size_network_is_deterministic_and_fast(rng):
    net = scale_model(rng)
    assert abs(net.links - CITATION_LINKS) < 0.05 * CITATION_LINKS
    timings = {}
    results = {}
    for workers in (1, 4):
        start = time.perf_counter()
        results[workers] = binary_betweenness(net, workers=workers)
        timings[workers] = time.perf_counter() - start
    assert results[1].tobytes() == results[4].tobytes()
    assert timings[4] < 10 * 60
    assert peak_memory_bytes() < 8 * 2**30
    normalized = normalize_bc(results[4], net.n)
    assert normalized.min() >= 0.0 and normalized.max() <= 100.0
