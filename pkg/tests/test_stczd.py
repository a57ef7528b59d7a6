from __future__ import annotations

import math

import numpy as np
import pytest

from tl.code_types import PreconditionError
from tl.fields import get_field
from tl.graph_metric import GraphWord, MatrixWord, code_distance
from tl.hamming_codes import parity_check_code, repetition_code, rs_generate
from tl.stczd import (
    is_in_tensor_code,
    span_contains,
    stczd_basis,
    stczd_rs_entry,
    stczd_rs_explicit,
    stczd_rs_pairs,
    tensor_code,
)


def test_even_weight_code_gives_the_triangle() -> None:
    code = stczd_basis(parity_check_code(3))
    assert code.dim == 1
    assert np.array_equal(code.basis[0], GraphWord.complete(3).entries)
    assert code_distance(code).value == 2


def test_repetition_code_gives_the_zero_code() -> None:
    code = stczd_basis(repetition_code(3))
    assert code.dim == 0
    assert code.n == 3


def test_rs_stczd_dimension_and_rows() -> None:
    rs = rs_generate(7, 4, get_field(3))
    code = stczd_basis(rs)
    assert code.dim == 6
    assert code.metadata["nominal_dimension"] == math.comb(5, 2) - 7
    assert code.certified_lower == 4
    for word in code.basis:
        assert np.array_equal(word, word.T)
        assert not np.any(np.diagonal(word))
        assert all(rs.contains(row) for row in word)


def test_stczd_directed_distance_reaches_row_code_distance() -> None:
    code = stczd_basis(rs_generate(4, 2, get_field(2)))
    assert code.dim == 1
    report = code_distance(code, metric="directed")
    assert report.value >= 3


def test_tensor_code_distance_equals_row_code_distance() -> None:
    rs = rs_generate(4, 2, get_field(2))
    code = tensor_code(rs)
    assert code.dim == 4
    assert code.directed and not code.symmetric_zero_diag
    for word in code.basis:
        assert is_in_tensor_code(MatrixWord(code.ctx, word), rs)
    assert code_distance(code).value == 3


def test_stczd_is_contained_in_tensor_code() -> None:
    rs = rs_generate(4, 2, get_field(2))
    sym, full = stczd_basis(rs), tensor_code(rs)
    assert span_contains(full, sym)
    assert not span_contains(sym, full)


def test_explicit_pairs_order() -> None:
    assert stczd_rs_pairs(5) == [(0, 1), (0, 2), (1, 2), (0, 0), (1, 1), (2, 2)]
    assert stczd_rs_pairs(2) == []


def test_explicit_subcode_lies_in_stczd() -> None:
    ctx = get_field(3)
    explicit = stczd_rs_explicit(8, 4, ctx)
    assert explicit.dim == math.comb(3, 2)
    assert span_contains(stczd_basis(rs_generate(8, 4, ctx)), explicit)


def test_explicit_entries_match_basis_words() -> None:
    ctx = get_field(3)
    explicit = stczd_rs_explicit(8, 5, ctx)
    for index in range(explicit.dim):
        for x in range(8):
            for y in range(8):
                assert stczd_rs_entry(x, y, index, 5, ctx) == explicit.basis[index, x, y]
    with pytest.raises(PreconditionError, match="超出范围"):
        stczd_rs_entry(0, 1, explicit.dim, 5, ctx)


def test_explicit_subcode_is_empty_below_three() -> None:
    code = stczd_rs_explicit(4, 2, get_field(2))
    assert code.dim == 0
    assert code.certified_lower == 3
