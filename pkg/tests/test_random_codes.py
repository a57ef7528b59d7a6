from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

import tl.random_codes as random_codes
from tl.code_types import BudgetExceededError, DistanceReport, PreconditionError
from tl.graph_metric import code_distance
from tl.random_codes import (
    binary_entropy,
    inverse_binary_entropy,
    random_dimension,
    sample_random_graph_code,
    search_opt_directed,
)


def test_binary_entropy_values() -> None:
    assert binary_entropy(0) == 0.0
    assert binary_entropy(1) == 0.0
    assert binary_entropy(Fraction(1, 2)) == 1.0
    assert binary_entropy(0.11) == pytest.approx(0.4999, abs=1e-3)
    with pytest.raises(PreconditionError):
        binary_entropy(1.5)


def test_inverse_binary_entropy() -> None:
    assert inverse_binary_entropy(0) == 0.0
    assert inverse_binary_entropy(1) == 0.5
    assert inverse_binary_entropy(binary_entropy(0.2)) == pytest.approx(0.2, abs=1e-10)
    assert inverse_binary_entropy(Fraction(1, 2)) == pytest.approx(0.110028, abs=1e-6)


def test_random_dimension_formula() -> None:
    assert random_dimension(14, Fraction(1, 2)) == (5, 7)


def test_random_dimension_floors_non_integral_side(log_records) -> None:
    k, m = random_dimension(14, Fraction(1, 3))
    assert m == 9
    assert k == math.floor(math.comb(9, 2) - binary_entropy(Fraction(1, 3)) * 14 - 2)
    assert any("非整数" in message for message in log_records.infos)


def test_random_dimension_rejects_vacuous_regime() -> None:
    with pytest.raises(PreconditionError, match="≤ 0"):
        random_dimension(6, Fraction(1, 2))
    with pytest.raises(PreconditionError, match="≤ 0"):
        random_dimension(14, Fraction(3, 5))
    for delta in (Fraction(0), Fraction(1)):
        with pytest.raises(PreconditionError, match=r"\(0, 1\)"):
            random_dimension(20, delta)


def test_random_dimension_above_one_half() -> None:
    # m = 8, C(8, 2) - h_2(3/5)·20 - 2 ≈ 6.58
    assert random_dimension(20, Fraction(3, 5)) == (6, 8)


def test_random_graph_code_above_one_half() -> None:
    code = sample_random_graph_code(20, Fraction(3, 5), seed=1)
    assert code.dim == 6
    assert code.certified_lower > 12


def test_random_graph_code_is_certified() -> None:
    code = sample_random_graph_code(14, Fraction(1, 2), seed=5)
    assert code.dim == 5
    assert code.certificate is not None and code.certificate.mode == "exact"
    assert code.certified_lower > 7
    attempts = code.metadata["attempts"]
    assert attempts[-1]["success"]
    assert all(not a["success"] for a in attempts[:-1])


def test_random_graph_code_is_reproducible() -> None:
    first = sample_random_graph_code(14, Fraction(1, 2), seed=9)
    second = sample_random_graph_code(14, Fraction(1, 2), seed=9)
    assert np.array_equal(first.basis, second.basis)
    assert first.metadata["attempts"] == second.metadata["attempts"]


def test_random_graph_code_reports_every_failed_attempt(monkeypatch) -> None:
    def _too_close(code, budget, **kwargs):
        return DistanceReport(mode="exact", metric="graph", value=1, lower=1, upper=1)

    monkeypatch.setattr(random_codes, "code_distance", _too_close)
    with pytest.raises(BudgetExceededError) as excinfo:
        sample_random_graph_code(14, Fraction(1, 2), seed=0, retries=3)
    attempts = excinfo.value.details["attempts"]
    assert len(attempts) == 3
    assert all(a["distance"] in (None, 1) for a in attempts)


def test_opt_directed_search_small_instance() -> None:
    code = search_opt_directed(Fraction(1, 2), 10, 3, seed=2)
    assert code.directed and not code.symmetric_zero_diag
    assert code.dim == 3
    assert code.certified_lower >= 5
    assert code_distance(code).value == code.certified_lower


def test_opt_directed_checks_dimension_bound() -> None:
    with pytest.raises(PreconditionError, match="k < ε²n² - 2n"):
        search_opt_directed(Fraction(1, 2), 12, 12, seed=0)


@pytest.mark.slow
def test_opt_directed_desk_instance() -> None:
    code = search_opt_directed(Fraction(1, 2), 12, 8, seed=0)
    report = code_distance(code)
    assert report.enumerated == 255
    assert report.value >= 6


@pytest.mark.slow
def test_random_graph_code_success_rate_over_seeds() -> None:
    successes = failures = 0
    for seed in range(20):
        code = sample_random_graph_code(14, Fraction(1, 2), seed=seed)
        assert code.certified_lower > 7
        for attempt in code.metadata["attempts"]:
            if attempt["distance"] is None:
                continue
            successes += attempt["success"]
            failures += not attempt["success"]
    assert successes / (successes + failures) >= 0.5
