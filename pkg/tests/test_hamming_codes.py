from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from tl.code_types import (
    BudgetExceededError,
    DistanceReport,
    InternalError,
    PreconditionError,
    RankDeficientError,
)
from tl.fields import get_field
from tl.hamming_codes import (
    LinearCode,
    hamming_min_distance,
    parity_check_code,
    repetition_code,
    rs_generate,
    systematic_form,
    wozencraft_code,
    wozencraft_ensemble,
)
from tl.tl_utils import index_digits


def test_rs_parameters_and_mds_distance() -> None:
    code = rs_generate(7, 3, get_field(3))
    assert (code.n, code.k, code.q) == (7, 3, 8)
    assert code.designed_distance == 5
    assert code.rate == Fraction(3, 7)
    report = hamming_min_distance(code)
    assert report.mode == "exact"
    assert report.value == 5
    assert int(np.count_nonzero(report.witness)) == 5


def test_rs_encoding_evaluates_message_polynomial() -> None:
    ctx = get_field(3)
    code = rs_generate(7, 2, ctx)
    word = code.encode([1, 1])  # 1 + x at x = 0..6
    assert word.tolist() == [1, 0, 3, 2, 5, 4, 7]
    assert code.contains(word)
    assert not code.contains([1, 0, 0, 0, 0, 0, 0])


def test_rs_length_cannot_exceed_field_size() -> None:
    with pytest.raises(PreconditionError, match="1 ≤ k ≤ n ≤ q"):
        rs_generate(9, 3, get_field(3))


def test_rank_deficient_generator_is_rejected() -> None:
    with pytest.raises(RankDeficientError):
        LinearCode(get_field(1), np.array([[1, 1, 0], [1, 1, 0]]))


def test_systematic_form_spans_the_same_code() -> None:
    code = rs_generate(6, 3, get_field(3))
    sys_code = systematic_form(code)
    perm = sys_code.column_permutation
    assert np.array_equal(sys_code.generator[:, :3], np.eye(3, dtype=np.int64))
    for row in sys_code.generator:
        original = np.empty_like(row)
        original[list(perm)] = row
        assert code.contains(original)


def test_small_binary_codes() -> None:
    assert hamming_min_distance(parity_check_code(4)).value == 2
    assert hamming_min_distance(repetition_code(5)).value == 5


def test_exact_distance_respects_budget() -> None:
    with pytest.raises(BudgetExceededError, match="枚举预算"):
        hamming_min_distance(rs_generate(7, 3, get_field(3)), budget=100)


def test_sampled_distance_only_reports_upper_bound() -> None:
    code = rs_generate(7, 3, get_field(3))
    report = hamming_min_distance(code, mode="sampled", samples=32, seed=3)
    assert report.mode == "sampled"
    assert report.value is None and report.certified_lower is None
    assert report.upper >= 5
    with pytest.raises(PreconditionError, match="至少需要 1 个样本"):
        hamming_min_distance(code, mode="sampled", samples=0)


def test_distance_report_rejects_unknown_mode_or_metric() -> None:
    with pytest.raises(InternalError, match="报告模式"):
        DistanceReport(mode="guess", metric="graph")
    with pytest.raises(InternalError, match="距离度量"):
        DistanceReport(mode="exact", metric="rank")


def test_sampled_distance_beyond_enumeration_budget() -> None:
    # 256^8 = 2^64 个码字，超出 int64
    code = rs_generate(16, 8, get_field(8))
    with pytest.raises(BudgetExceededError):
        hamming_min_distance(code)
    report = hamming_min_distance(code, mode="sampled", samples=16, seed=1)
    assert 9 <= report.upper <= 16
    assert report.witness_index >= 1
    message = index_digits(report.witness_index, code.q, code.k)
    assert np.array_equal(code.encode(message), report.witness)


def test_sampled_distance_skips_zero_message() -> None:
    report = hamming_min_distance(repetition_code(3), mode="sampled", samples=8, seed=0)
    assert report.upper == 3
    assert report.witness_index == 1


def test_wozencraft_code_shape_and_membership() -> None:
    ctx = get_field(3)
    alpha = ctx.element(0b011)
    code = wozencraft_code(3, alpha)
    assert (code.n, code.k, code.q) == (6, 3, 2)
    assert code.rate == Fraction(1, 2)
    # x = X: 左半为 X，右半为 α·X
    x = ctx.element(0b010)
    right = (x * alpha).value
    word = [0, 1, 0] + [(right >> i) & 1 for i in range(3)]
    assert code.contains(word)


def test_wozencraft_identity_index_has_distance_two() -> None:
    code = wozencraft_code(3, get_field(3).one)
    assert hamming_min_distance(code).value == 2


def test_wozencraft_ensemble_size() -> None:
    ensemble = wozencraft_ensemble(4)
    assert len(ensemble) == 15
    assert all(c.rate == Fraction(1, 2) for c in ensemble)


def test_wozencraft_zero_index_is_rejected() -> None:
    with pytest.raises(PreconditionError, match="非零"):
        wozencraft_code(3, get_field(3).zero)
