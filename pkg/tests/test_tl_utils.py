from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest

from tl.code_types import UsageError
from tl.tl_utils import (
    canonical_json,
    digits_base,
    fraction_to_str,
    iter_bits,
    mask_to_tuple,
    parse_fraction,
    popcount,
    row_masks,
)


def test_bit_helpers() -> None:
    assert popcount(0b1011) == 3
    assert list(iter_bits(0b10100)) == [2, 4]
    assert mask_to_tuple(0) == ()


def test_row_masks_support_wide_rows() -> None:
    nonzero = np.zeros((2, 70), dtype=bool)
    nonzero[0, [0, 9, 69]] = True
    assert row_masks(nonzero) == [1 | 1 << 9 | 1 << 69, 0]


def test_digits_base_low_digit_first() -> None:
    assert digits_base(np.array([0, 5, 7]), 4, 2).tolist() == [[0, 0], [1, 1], [3, 1]]


@pytest.mark.parametrize(
    ("value", "expected"),
    [("1/2", Fraction(1, 2)), ("0.25", Fraction(1, 4)), (0.1, Fraction(1, 10)), (3, Fraction(3))],
)
def test_parse_fraction(value, expected) -> None:
    assert parse_fraction(value) == expected


def test_parse_fraction_errors() -> None:
    with pytest.raises(UsageError, match="rho"):
        parse_fraction("half", "rho")
    with pytest.raises(UsageError):
        parse_fraction(True)
    with pytest.raises(UsageError):
        parse_fraction("1/0")


def test_canonical_json_is_sorted_and_typed() -> None:
    text = canonical_json({"b": Fraction(1, 3), "a": np.int64(2), "c": (1, 2)})
    assert text.endswith("\n")
    assert list(json.loads(text)) == ["a", "b", "c"]
    assert json.loads(text) == {"a": 2, "b": "1/3", "c": [1, 2]}
    assert fraction_to_str(Fraction(4, 2)) == "2"
