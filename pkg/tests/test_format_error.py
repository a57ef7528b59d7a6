from __future__ import annotations

import pytest

from tl.code_types import (
    BudgetExceededError,
    FieldMismatchError,
    GraphCodeError,
    InternalError,
    PreconditionError,
    RankDeficientError,
    UsageError,
)
from tl.format_error import error_hint, format_error_message


@pytest.mark.parametrize(
    ("error", "expected"),
    [
        (UsageError("缺少 --n"), "error=usage exit=2 message=缺少 --n"),
        (PreconditionError("d 过大"), "error=precondition exit=3 message=d 过大"),
        (FieldMismatchError("域不一致"), "error=field_mismatch exit=3 message=域不一致"),
        (RankDeficientError("秩不足"), "error=rank_deficient exit=3 message=秩不足"),
        (BudgetExceededError("超出预算"), "error=budget exit=4 message=超出预算"),
        (InternalError("违反界"), "error=internal exit=5 message=违反界"),
    ],
)
def test_error_line_per_category(error: GraphCodeError, expected: str) -> None:
    assert format_error_message(error) == expected


def test_unknown_exceptions_are_internal() -> None:
    assert format_error_message(ValueError("boom")) == "error=internal exit=5 message=boom"
    assert format_error_message(KeyError()) == "error=internal exit=5 message=KeyError"


def test_message_is_folded_to_one_line() -> None:
    error = PreconditionError("第一行\n  第二行")
    assert format_error_message(error) == "error=precondition exit=3 message=第一行 第二行"


def test_overridden_category_and_details() -> None:
    error = GraphCodeError("x", category="budget", exit_code=4, details={"attempts": [1]})
    assert format_error_message(error).startswith("error=budget exit=4")
    assert error.details == {"attempts": [1]}


def test_hints() -> None:
    assert "--budget" in error_hint(BudgetExceededError("x"))
    assert error_hint("plain text") == error_hint(InternalError("x"))
