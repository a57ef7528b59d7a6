from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from tl.code_io import to_networkx
from tl.code_types import (
    BudgetExceededError,
    FieldMismatchError,
    InternalError,
    PreconditionError,
    RankDeficientError,
)
from tl.fields import get_field
from tl.graph_metric import (
    GraphCode,
    GraphWord,
    MatrixWord,
    clique_number,
    code_distance,
    composite_distance_report,
    directed_distance_witness,
    directed_graph_distance,
    graph_distance,
    graph_distance_witness,
    independence_number,
    singleton_check,
)

F2 = get_field(1)


def _random_graph(rng: np.random.Generator, n: int) -> GraphWord:
    upper = np.triu(rng.integers(0, 2, size=(n, n), dtype=np.int64), 1)
    return GraphWord(F2, upper + upper.T)


def _random_matrix(rng: np.random.Generator, n: int, density: float = 0.3) -> MatrixWord:
    return MatrixWord(F2, (rng.random((n, n)) < density).astype(np.int64))


def _brute_graph_distance(g: GraphWord, h: GraphWord) -> int:
    diff = (g.entries ^ h.entries) != 0
    n = g.n
    for size in range(n + 1):
        for removed in itertools.combinations(range(n), size):
            keep = [v for v in range(n) if v not in removed]
            if not diff[np.ix_(keep, keep)].any():
                return size
    raise AssertionError("unreachable")


def _brute_directed_distance(a: MatrixWord, b: MatrixWord) -> int:
    diff = (a.entries ^ b.entries) != 0
    n = a.n
    best = n
    for s_mask in range(1 << n):
        rows = [i for i in range(n) if not s_mask >> i & 1]
        cols = np.flatnonzero(diff[rows].any(axis=0)) if rows else []
        best = min(best, max(bin(s_mask).count("1"), len(cols)))
    return best


# ----------------------------------------------------------------------
# 码字与单对距离
# ----------------------------------------------------------------------


def test_graph_word_rejects_asymmetric_or_loops() -> None:
    with pytest.raises(FieldMismatchError, match="对称"):
        GraphWord(F2, np.array([[0, 1], [0, 0]]))
    with pytest.raises(FieldMismatchError, match="对角线"):
        GraphWord(F2, np.eye(2, dtype=np.int64))


def test_matrix_word_addition_is_xor_and_checks_field() -> None:
    a = MatrixWord(F2, np.array([[1, 0], [1, 1]]))
    b = MatrixWord(F2, np.array([[1, 1], [0, 1]]))
    assert (a + b).entries.tolist() == [[0, 1], [1, 0]]
    assert isinstance(GraphWord.complete(3) + GraphWord.empty(3), GraphWord)
    with pytest.raises(FieldMismatchError, match="域不一致"):
        _ = a + MatrixWord(get_field(2), np.zeros((2, 2), dtype=np.int64))


def test_graph_distance_small_cases() -> None:
    assert graph_distance(GraphWord.complete(3), GraphWord.empty(3)) == 2
    single_edge = GraphWord.from_edges(4, [(0, 1)])
    assert graph_distance(single_edge, GraphWord.empty(4)) == 1
    assert graph_distance(single_edge, single_edge) == 0


def test_graph_distance_matches_exhaustive_search() -> None:
    rng = np.random.Generator(np.random.Philox(11))
    for n in range(2, 8):
        g, h = _random_graph(rng, n), _random_graph(rng, n)
        assert graph_distance(g, h) == _brute_graph_distance(g, h)


def test_graph_distance_witness_is_a_valid_deletion_set() -> None:
    rng = np.random.Generator(np.random.Philox(12))
    g, h = _random_graph(rng, 9), _random_graph(rng, 9)
    d, removed = graph_distance_witness(g, h)
    assert d == len(removed) == graph_distance(g, h)
    keep = [v for v in range(9) if v not in removed]
    assert np.array_equal(g.entries[np.ix_(keep, keep)], h.entries[np.ix_(keep, keep)])


def test_independence_and_clique_numbers_match_networkx() -> None:
    rng = np.random.Generator(np.random.Philox(13))
    for _ in range(6):
        g = _random_graph(rng, 12)
        graph = to_networkx(g)
        _, omega = nx.max_weight_clique(graph, weight=None)
        _, alpha = nx.max_weight_clique(nx.complement(graph), weight=None)
        assert clique_number(g) == omega
        assert independence_number(g) == alpha


def test_distance_to_trivial_graphs_is_dual_to_alpha_and_omega() -> None:
    rng = np.random.Generator(np.random.Philox(14))
    for n in range(3, 9):
        g = _random_graph(rng, n)
        assert graph_distance(g, GraphWord.empty(n)) == n - independence_number(g)
        assert graph_distance(g, GraphWord.complete(n)) == n - clique_number(g)


def _check_metric_triples(seed: int, trials: int, n: int = 8) -> None:
    rng = np.random.Generator(np.random.Philox(seed))
    for _ in range(trials):
        g, h, k = (_random_graph(rng, n) for _ in range(3))
        d_gh = graph_distance(g, h)
        assert graph_distance(g, g) == 0
        assert (d_gh == 0) == np.array_equal(g.entries, h.entries)
        assert graph_distance(h, g) == d_gh
        assert graph_distance(g, k) <= d_gh + graph_distance(h, k)
        assert d_gh == _brute_graph_distance(g, h)
        diff = GraphWord(F2, g.entries ^ h.entries)
        assert d_gh == n - independence_number(diff)

        a, b, c = (_random_matrix(rng, n) for _ in range(3))
        d_ab = directed_graph_distance(a, b)
        assert directed_graph_distance(a, a) == 0
        assert directed_graph_distance(b, a) == d_ab
        assert directed_graph_distance(a, c) <= d_ab + directed_graph_distance(b, c)
        assert d_ab == _brute_directed_distance(a, b)


def test_metric_axioms_on_random_triples() -> None:
    _check_metric_triples(seed=15, trials=40)


@pytest.mark.slow
def test_metric_axioms_on_thousand_triples() -> None:
    _check_metric_triples(seed=16, trials=1000)


def test_clique_number_requires_binary_graph() -> None:
    word = GraphWord(get_field(2), np.array([[0, 2], [2, 0]]))
    with pytest.raises(PreconditionError, match="二元图"):
        clique_number(word)


def test_directed_distance_small_cases() -> None:
    zero = MatrixWord(F2, np.zeros((4, 4), dtype=np.int64))
    assert directed_graph_distance(zero, zero) == 0
    single = np.zeros((4, 4), dtype=np.int64)
    single[1, 2] = 1
    assert directed_graph_distance(MatrixWord(F2, single), zero) == 1
    matching = GraphWord.from_edges(4, [(0, 1), (2, 3)])
    assert directed_graph_distance(matching, zero) == 2


def test_directed_distance_matches_exhaustive_search() -> None:
    rng = np.random.Generator(np.random.Philox(15))
    for n in range(2, 7):
        a, b = _random_matrix(rng, n), _random_matrix(rng, n)
        assert directed_graph_distance(a, b) == _brute_directed_distance(a, b)


def test_directed_witness_covers_every_difference() -> None:
    rng = np.random.Generator(np.random.Philox(16))
    a, b = _random_matrix(rng, 8, 0.4), _random_matrix(rng, 8, 0.4)
    d, rows, cols = directed_distance_witness(a, b)
    assert max(len(rows), len(cols)) == d
    diff = a.entries ^ b.entries
    keep_rows = [i for i in range(8) if i not in rows]
    keep_cols = [j for j in range(8) if j not in cols]
    assert not diff[np.ix_(keep_rows, keep_cols)].any()


def test_directed_distance_is_dominated_and_transpose_invariant() -> None:
    rng = np.random.Generator(np.random.Philox(17))
    for n in range(3, 11):
        g, h = _random_graph(rng, n), _random_graph(rng, n)
        assert directed_graph_distance(g, h) <= graph_distance(g, h)
        a = _random_matrix(rng, n)
        zero = MatrixWord(F2, np.zeros((n, n), dtype=np.int64))
        assert directed_graph_distance(a, zero) == directed_graph_distance(a.transpose(), zero)


# ----------------------------------------------------------------------
# 图码
# ----------------------------------------------------------------------


def test_graph_code_validates_basis() -> None:
    k3 = GraphWord.complete(3).entries
    with pytest.raises(RankDeficientError):
        GraphCode(F2, np.stack([k3, k3]))
    with pytest.raises(FieldMismatchError, match="对称"):
        GraphCode(F2, np.array([[[0, 1], [0, 0]]]))


def test_graph_code_rate_and_metric() -> None:
    code = GraphCode(F2, GraphWord.complete(3).entries[None])
    assert code.dim == 1 and code.bits == 1
    assert code.coordinates == 3
    assert code.rate == Fraction(1, 3)
    assert code.metric == "graph"


def test_code_distance_of_triangle_code() -> None:
    code = GraphCode(F2, GraphWord.complete(3).entries[None])
    report = code_distance(code)
    assert report.mode == "exact"
    assert report.value == report.certified_lower == 2
    assert report.witness_index == 1
    assert len(report.rows) == 2


def test_code_distance_of_single_edge_code() -> None:
    code = GraphCode(F2, GraphWord.from_edges(4, [(0, 1)]).entries[None])
    assert code_distance(code).value == 1


def test_code_distance_prefers_smallest_witness_index() -> None:
    k4 = GraphWord.complete(4).entries
    edge = GraphWord.from_edges(4, [(0, 1)]).entries
    code = GraphCode(F2, np.stack([k4, edge]))
    report = code_distance(code)
    # 码字 2（单边）距离 1；码字 1（K4）距离 3；码字 3 = K4 - 边，距离 2
    assert report.value == 1
    assert report.witness_index == 2


def test_non_binary_scalars_use_projective_representatives() -> None:
    f4 = get_field(2)
    triangle = GraphWord.complete(3).entries
    code = GraphCode(f4, triangle[None])
    report = code_distance(code)
    assert report.value == 2
    assert report.witness_index == 1
    assert report.enumerated == 1


def test_parallel_scan_matches_serial() -> None:
    rng = np.random.Generator(np.random.Philox(18))
    basis = np.stack([_random_graph(rng, 8).entries for _ in range(6)])
    code = GraphCode(F2, basis)
    serial = code_distance(code)
    parallel = code_distance(code, workers=2)
    assert (serial.value, serial.witness_index) == (parallel.value, parallel.witness_index)


def test_code_distance_preconditions() -> None:
    empty = GraphCode(F2, np.zeros((0, 3, 3), dtype=np.int64))
    with pytest.raises(PreconditionError, match="零维码"):
        code_distance(empty)
    code = GraphCode(F2, GraphWord.complete(3).entries[None])
    with pytest.raises(PreconditionError, match="至少需要 1 个样本"):
        code_distance(code, mode="sampled", samples=0)
    with pytest.raises(BudgetExceededError, match="预算"):
        code_distance(code, budget=1)
    with pytest.raises(BudgetExceededError, match="顶点上限"):
        code_distance(code, mis_vertex_limit=2)


def test_sampled_distance_never_claims_a_lower_bound() -> None:
    rng = np.random.Generator(np.random.Philox(19))
    basis = np.stack([_random_graph(rng, 7).entries for _ in range(4)])
    code = GraphCode(F2, basis)
    exact = code_distance(code)
    sampled = code_distance(code, mode="sampled", samples=8, seed=1)
    assert sampled.certified_lower is None
    assert sampled.upper >= exact.value


def test_composite_report_detects_inconsistent_lower_bound() -> None:
    code = GraphCode(F2, GraphWord.complete(3).entries[None])
    report = composite_distance_report(code, 1, samples=4, seed=0)
    assert report.mode == "composed"
    assert report.certified_lower == 1 and report.upper == 2
    with pytest.raises(InternalError, match="采样上界"):
        composite_distance_report(code, 3, samples=4, seed=0)


def test_singleton_check() -> None:
    code = GraphCode(F2, GraphWord.complete(3).entries[None])
    report = code_distance(code)
    check = singleton_check(code, report)
    assert check.passed
    assert check.bound_bits == 1.0  # C(3 - 2 + 1, 2) · 1
    sampled = code_distance(code, mode="sampled", samples=2)
    with pytest.raises(PreconditionError, match="Singleton"):
        singleton_check(code, sampled)


def test_singleton_violation_is_an_internal_error(log_records) -> None:
    code = GraphCode(F2, GraphWord.complete(3).entries[None], family="bogus")
    report = code_distance(code)
    report.value = 3
    with pytest.raises(InternalError, match="Singleton"):
        singleton_check(code, report)
    assert any("违反 Singleton 界" in message for message in log_records.errors)
    assert not singleton_check(code, report, enforce=False).passed
