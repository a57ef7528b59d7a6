"""
Hamming 度量下的线性码

包含 Reed-Solomon 码、系统形式、最小距离计算以及 Wozencraft 码族。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .code_types import (
    BudgetExceededError,
    DistanceReport,
    FieldMismatchError,
    PreconditionError,
    RankDeficientError,
)
from .fields import FieldContext, FieldElement, get_field, vec_embed
from .gf_linalg import combine, rank, row_reduce
from .log import logger
from .tl_utils import digits_base, message_index

DEFAULT_HAMMING_BUDGET = 1 << 20
_CHUNK = 1 << 14


@dataclass(eq=False)
class LinearCode:
    """F_q 上的 [n, k] 线性码，以 k×n 生成矩阵表示"""

    ctx: FieldContext
    generator: np.ndarray
    eval_points: tuple[int, ...] | None = None
    designed_distance: int | None = None
    column_permutation: tuple[int, ...] | None = None
    name: str = ""
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        g = np.array(self.generator, dtype=np.int64, copy=True)
        if g.ndim != 2:
            raise FieldMismatchError(f"生成矩阵必须是二维数组，收到形状 {g.shape}")
        if g.size and (g.min() < 0 or g.max() >= self.ctx.order):
            raise FieldMismatchError(f"生成矩阵含有不属于 {self.ctx.label} 的元素")
        k, n = g.shape
        if n < 1:
            raise PreconditionError("码长必须为正")
        if k and rank(self.ctx, g) != k:
            raise RankDeficientError(f"生成矩阵秩不足 {k}（{self.name or '未命名码'}）")
        if self.eval_points is not None:
            points = tuple(int(x) for x in self.eval_points)
            if len(points) != n or len(set(points)) != n:
                raise PreconditionError("求值点必须是 n 个互不相同的域元素")
            self.eval_points = points
        g.setflags(write=False)
        self.generator = g

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def q(self) -> int:
        return self.ctx.order

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    def encode(self, message) -> np.ndarray:
        """编码 k 个系数（整数或 FieldElement）为长度 n 的码字"""
        values = [self._coerce(m) for m in message]
        if len(values) != self.k:
            raise FieldMismatchError(f"消息长度 {len(values)} 与维数 k={self.k} 不一致")
        return combine(self.ctx, np.array(values, dtype=np.int64), self.generator)

    def _coerce(self, value) -> int:
        if isinstance(value, FieldElement):
            if value.ctx != self.ctx:
                raise FieldMismatchError(
                    f"消息元素属于 {value.ctx.label}，码定义在 {self.ctx.label}"
                )
            return value.value
        return self.ctx.check(value)

    def contains(self, word) -> bool:
        word = np.asarray(word, dtype=np.int64).reshape(1, -1)
        if word.shape[1] != self.n:
            return False
        return rank(self.ctx, np.vstack([self.generator, word])) == self.k


def rs_generate(n: int, k: int, ctx: FieldContext) -> LinearCode:
    """
    Reed-Solomon 码 RS(n, k)：次数 < k 的多项式在求值点 0..n-1（整数表示）上的取值

    生成矩阵第 i 行为 x ↦ x^i（约定 0^0 = 1）。
    """
    if not 1 <= k <= n <= ctx.order:
        raise PreconditionError(
            f"RS 参数需满足 1 ≤ k ≤ n ≤ q，收到 n={n}, k={k}, q={ctx.order}"
        )
    points = np.arange(n, dtype=np.int64)
    rows = [ctx.pow_vec(points, i) for i in range(k)]
    generator = np.stack(rows)
    return LinearCode(
        ctx,
        generator,
        eval_points=tuple(range(n)),
        designed_distance=n - k + 1,
        name=f"RS({n},{k})/F_{ctx.order}",
    )


def parity_check_code(n: int) -> LinearCode:
    """二元偶重码 [n, n-1]"""
    if n < 2:
        raise PreconditionError("偶重码要求 n ≥ 2")
    generator = np.hstack(
        [np.eye(n - 1, dtype=np.int64), np.ones((n - 1, 1), dtype=np.int64)]
    )
    return LinearCode(get_field(1), generator, designed_distance=2, name=f"EVEN({n})")


def repetition_code(n: int) -> LinearCode:
    """二元重复码 [n, 1]"""
    generator = np.ones((1, n), dtype=np.int64)
    return LinearCode(get_field(1), generator, designed_distance=n, name=f"REP({n})")


def systematic_form(c: LinearCode) -> LinearCode:
    """
    化为系统形式 [I_k | A]

    列置换记录在返回码的 ``column_permutation`` 中：系统码第 j 列是原码第 perm[j] 列。
    """
    rref, pivots = row_reduce(c.ctx, c.generator)
    if len(pivots) < c.k:
        raise RankDeficientError(f"生成矩阵秩 {len(pivots)} < k={c.k}")
    pivot_set = set(pivots)
    perm = tuple(pivots) + tuple(j for j in range(c.n) if j not in pivot_set)
    generator = rref[: c.k][:, list(perm)]
    if perm != tuple(range(c.n)):
        logger.debug(f"[线性码] {c.name} 系统化需要列置换 {perm}")
    eval_points = None
    if c.eval_points is not None:
        eval_points = tuple(c.eval_points[j] for j in perm)
    return LinearCode(
        c.ctx,
        generator,
        eval_points=eval_points,
        designed_distance=c.designed_distance,
        column_permutation=perm,
        name=c.name,
        metadata=dict(c.metadata),
    )


def _codeword_weights(c: LinearCode, indices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    coeffs = digits_base(indices, c.q, c.k)
    words = combine(c.ctx, coeffs, c.generator)
    return words, np.count_nonzero(words, axis=1)


def hamming_min_distance(
    c: LinearCode,
    budget: int = DEFAULT_HAMMING_BUDGET,
    *,
    mode: str = "exact",
    samples: int = 256,
    seed: int | None = None,
) -> DistanceReport:
    """
    最小 Hamming 距离

    exact 模式在 q^k ≤ budget 时穷举全部非零码字；超出预算抛 BudgetExceededError，
    需要显式切换到 sampled 模式（只给出上界）。
    """
    if c.k == 0:
        raise PreconditionError("零维码没有非零码字")
    total = c.q**c.k
    if mode == "exact":
        if total > budget:
            raise BudgetExceededError(
                f"{c.name or '线性码'} 共 {total} 个码字，超出枚举预算 {budget}"
            )
        best: int | None = None
        best_index = -1
        best_word: np.ndarray | None = None
        for start in range(1, total, _CHUNK):
            indices = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            words, weights = _codeword_weights(c, indices)
            pos = int(np.argmin(weights))
            if best is None or int(weights[pos]) < best:
                best = int(weights[pos])
                best_index = int(indices[pos])
                best_word = words[pos]
        return DistanceReport(
            mode="exact",
            metric="hamming",
            value=best,
            lower=best,
            upper=best,
            witness=best_word,
            witness_index=best_index,
            enumerated=total - 1,
        )
    if mode == "sampled":
        if samples < 1:
            raise PreconditionError("采样模式至少需要 1 个样本")
        rng = np.random.Generator(np.random.Philox(seed or 0))
        coeffs = rng.integers(0, c.q, size=(samples, c.k), dtype=np.int64)
        zero = ~coeffs.any(axis=1)
        while zero.any():
            coeffs[zero] = rng.integers(0, c.q, size=(int(zero.sum()), c.k), dtype=np.int64)
            zero = ~coeffs.any(axis=1)
        words = combine(c.ctx, coeffs, c.generator)
        weights = np.count_nonzero(words, axis=1)
        pos = int(np.argmin(weights))
        return DistanceReport(
            mode="sampled",
            metric="hamming",
            upper=int(weights[pos]),
            witness=words[pos],
            witness_index=message_index(coeffs[pos], c.q),
            samples=samples,
            seed=seed or 0,
        )
    raise PreconditionError(f"未知的距离模式: {mode}")


def wozencraft_code(k: int, index: FieldElement) -> LinearCode:
    """
    Wozencraft 码 W_α = {(x, α·x) : x ∈ F_{2^k}}，作为 F_2 上的 [2k, k] 码

    坐标按 vec_embed 展开，生成矩阵第 i 行对应 x = X^i。
    """
    if index.ctx.t != k:
        raise FieldMismatchError(f"索引元素属于 {index.ctx.label}，期望 t={k}")
    if not index:
        raise PreconditionError("Wozencraft 索引必须非零")
    ctx = index.ctx
    rows = []
    for i in range(k):
        x = ctx.element(1 << i)
        rows.append(np.concatenate([vec_embed(x, ctx), vec_embed(x * index, ctx)]))
    return LinearCode(
        get_field(1),
        np.stack(rows),
        name=f"W_{index.value:x}(k={k})",
        metadata={"wozencraft_index": index.value, "k": k},
    )


def wozencraft_ensemble(k: int) -> list[LinearCode]:
    """全部 2^k - 1 个非零索引对应的 Wozencraft 码，按索引整数值升序"""
    ctx = get_field(k)
    return [wozencraft_code(k, ctx.element(alpha)) for alpha in range(1, ctx.order)]
