from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from tl.code_types import FieldMismatchError, PreconditionError
from tl.concatenation import (
    InnerEncoder,
    concat_rs,
    double_concat,
    justesen_inner,
    justesen_like,
    plan_layers,
    symmetric_concatenate,
    triple_concat,
    wozencraft_good_fraction,
)
from tl.fields import get_field
from tl.graph_metric import code_distance
from tl.hamming_codes import parity_check_code, rs_generate
from tl.stczd import stczd_basis, tensor_code

F2 = get_field(1)
F4 = get_field(2)


def _blocks(entries: np.ndarray, big_n: int, n: int) -> np.ndarray:
    return entries.reshape(big_n, n, big_n, n).transpose(0, 2, 1, 3)


def _small_outer():
    return stczd_basis(rs_generate(4, 2, F4))


def _small_inner() -> InnerEncoder:
    return InnerEncoder.from_graph_code(tensor_code(parity_check_code(3)), F4, name="tc")


def test_inner_encoder_is_f2_linear() -> None:
    encoder = _small_inner()
    assert encoder.message_bits == 2 and encoder.n == 3
    assert encoder.distance == 2
    assert not encoder.encode(0).any()
    assert np.array_equal(encoder.encode(3), encoder.encode(1) ^ encoder.encode(2))
    batch = encoder.encode_matrix(np.array([[0, 1], [2, 3]]))
    assert np.array_equal(batch[1, 1], encoder.encode(3))


def test_inner_encoder_from_symbol_table_checks_linearity() -> None:
    e1 = np.zeros((2, 2), dtype=np.int64)
    e1[0, 1] = 1
    e2 = np.eye(2, dtype=np.int64)
    table = {0: np.zeros((2, 2)), 1: e1, 2: e2, 3: e1 ^ e2}
    encoder = InnerEncoder.from_symbol_table(F2, F4, table, distance=1)
    assert np.array_equal(encoder.encode(3), e1 ^ e2)
    with pytest.raises(PreconditionError, match="F_2 线性"):
        InnerEncoder.from_symbol_table(F2, F4, {**table, 3: e1})
    with pytest.raises(PreconditionError, match="E\\(0\\) = 0"):
        InnerEncoder.from_symbol_table(F2, F4, {**table, 0: e1})


def test_inner_encoder_must_be_injective() -> None:
    word = np.eye(2, dtype=np.int64)
    with pytest.raises(PreconditionError, match="单射"):
        InnerEncoder(F2, F4, np.stack([word, word]))


def test_symmetric_concatenation_block_layout() -> None:
    outer, encoder = _small_outer(), _small_inner()
    code = symmetric_concatenate(outer, encoder)
    assert code.n == 12
    assert code.bits == outer.bits
    assert code.symmetric_zero_diag and code.scalars == F2
    blocks = _blocks(code.word_at(1).entries, 4, 3)
    outer_word = outer.basis[0]
    for i in range(4):
        for j in range(i, 4):
            expected = encoder.encode(int(outer_word[i, j]))
            assert np.array_equal(blocks[i, j], expected)
            assert np.array_equal(blocks[j, i], expected.T)


def test_symmetric_concatenation_distance_bound() -> None:
    outer, encoder = _small_outer(), _small_inner()
    code = symmetric_concatenate(outer, encoder)
    assert code.certified_lower == 2 * 3
    assert code_distance(code).value >= code.certified_lower


def test_concatenation_rejects_mismatched_alphabet() -> None:
    encoder = InnerEncoder.from_graph_code(
        tensor_code(parity_check_code(4)), get_field(3), name="tc"
    )
    with pytest.raises(FieldMismatchError, match="字母表"):
        symmetric_concatenate(_small_outer(), encoder)


def test_concat_rs_small_instance() -> None:
    code = concat_rs(Fraction(1, 2), 10, 3, 4, Fraction(1, 2), seed=1, samples=0)
    assert code.n == 40
    assert code.bits == 3
    assert code.claimed_relative_distance == Fraction(1, 4)
    components = code.metadata["components"]
    inner_d = components["inner"]["certified_lower"]
    assert components["outer"]["certified_lower"] == 3
    assert code.certified_lower == inner_d * 3
    assert code.certificate.mode == "composed"
    assert code.certificate.certified_lower == code.certified_lower


def test_concat_rs_rejects_oversized_outer_code() -> None:
    with pytest.raises(PreconditionError, match="超过字母表大小"):
        concat_rs(Fraction(1, 2), 10, 3, 9, Fraction(1, 2), seed=0)


def test_layer_plan_for_half_rate() -> None:
    plan = plan_layers(Fraction(1, 2), 8, 2)
    assert plan.outer_k == 4
    assert plan.tensor_sides == [4, 4]
    assert plan.tensor_ks == [2, 2]
    assert (plan.opt_n, plan.opt_k) == (9, 2)
    assert plan.side == 1152
    assert plan_layers(Fraction(1, 2), 8, 1).side == 8 * 4 * 9


def test_layer_plan_preconditions() -> None:
    with pytest.raises(PreconditionError, match="2 的幂"):
        plan_layers(Fraction(1, 2), 6, 2)
    with pytest.raises(PreconditionError, match="< 3"):
        plan_layers(Fraction(1, 4), 8, 2)


def test_double_concatenation_certificate() -> None:
    code = double_concat(Fraction(1, 2), 8, seed=0)
    assert code.n == 288
    assert code.bits == 9
    layers = code.metadata["layers"]
    assert [layer["family"] for layer in layers] == ["stczd_rs", "tensor", "opt"]
    assert layers[1]["certification"] == "exact"
    assert code.certified_lower >= 5 * 3 * 5
    assert code.certificate.mode == "composed"


@pytest.mark.slow
def test_triple_concatenation_certificate() -> None:
    code = triple_concat(Fraction(1, 2), 8, seed=0, samples=2)
    assert code.n == 1152
    assert code.certified_lower >= 225
    assert code.certificate.upper >= code.certified_lower


def test_justesen_inner_codes() -> None:
    for index in range(1, 16):
        inner, d = justesen_inner(4, index)
        assert inner.dim >= 10 - 8
        assert inner.certified_lower == d


def test_justesen_block_arrangement() -> None:
    code = justesen_like(Fraction(1, 4), 3, Fraction(1, 2))
    assert code.n == 7 * 6
    outer = stczd_basis(rs_generate(7, 3, get_field(3)))
    encoders = {
        i: InnerEncoder.from_graph_code(justesen_inner(3, i)[0], get_field(3))
        for i in range(1, 8)
    }
    blocks = _blocks(code.word_at(1).entries, 7, 6)
    outer_word = outer.basis[0]
    for i in range(7):
        for j in range(i, 7):
            expected = encoders[i + 1].encode(int(outer_word[i, j]))
            assert np.array_equal(blocks[i, j], expected)
            assert np.array_equal(blocks[j, i], expected.T)
    inner_min = min(code.metadata["inner_distances"].values())
    assert code.certified_lower == inner_min * 5


def test_justesen_requires_k_at_least_three() -> None:
    with pytest.raises(PreconditionError, match=r"C\(k, 2\) = 1 小于外码符号的 2 比特"):
        justesen_like(Fraction(1, 4), 2, Fraction(1, 2))


def test_wozencraft_good_fraction() -> None:
    fraction, distances = wozencraft_good_fraction(4, Fraction(1, 4))
    assert len(distances) == 15
    assert 0 <= fraction <= 1
    assert all(1 <= d <= 8 for d in distances.values())
