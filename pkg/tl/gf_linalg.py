"""
F_{2^t} 上的线性代数

消元、秩与乘积都交给 galois 的 FieldArray（``row_reduce``、``np.linalg.matrix_rank``、
``@``）；本模块负责 int64 ↔ FieldArray 的转换，并固定零空间基的取法。
"""

from __future__ import annotations

import numpy as np

from .code_types import FieldMismatchError
from .fields import FieldContext, to_ints


def as_matrix(values, *, ndim: int = 2) -> np.ndarray:
    matrix = np.array(values, dtype=np.int64, copy=True)
    if matrix.ndim != ndim:
        raise FieldMismatchError(f"期望 {ndim} 维数组，收到形状 {matrix.shape}")
    return matrix


def _pivots(rref: np.ndarray) -> list[int]:
    pivots = []
    for row in rref:
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            break
        pivots.append(int(nonzero[0]))
    return pivots


def row_reduce(ctx: FieldContext, matrix) -> tuple[np.ndarray, list[int]]:
    """
    约化行阶梯形（RREF）

    Returns:
        (rref, pivots)：主元列按升序排列，rref 的前 len(pivots) 行非零
    """
    m = ctx.array(as_matrix(matrix))
    if m.size == 0:
        return to_ints(m), []
    rref = to_ints(m.row_reduce())
    return rref, _pivots(rref)


def rank(ctx: FieldContext, matrix) -> int:
    m = ctx.array(as_matrix(matrix))
    if m.size == 0:
        return 0
    return int(np.linalg.matrix_rank(m))


def nullspace(ctx: FieldContext, matrix, cols: int | None = None) -> np.ndarray:
    """
    右零空间 {x : M x = 0} 的一组基（按自由列升序），形状 (dim, cols)

    第 i 个基向量在第 i 个自由列取 1、其余自由列取 0；特征 2 下主元分量
    直接取 RREF 中的对应元素。
    """
    m = as_matrix(matrix)
    if cols is None:
        cols = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    rref, pivots = row_reduce(ctx, m)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        x = np.zeros(cols, dtype=np.int64)
        x[free] = 1
        for i, p in enumerate(pivots):
            x[p] = rref[i, free]
        basis.append(x)
    if not basis:
        return np.zeros((0, cols), dtype=np.int64)
    return np.stack(basis)


def independent_rows(ctx: FieldContext, matrix) -> list[int]:
    """贪心保留使秩增加的行，返回保留行的下标"""
    m = as_matrix(matrix)
    kept: list[int] = []
    for i in range(m.shape[0]):
        if rank(ctx, m[kept + [i]]) > len(kept):
            kept.append(i)
    return kept


def matmul(ctx: FieldContext, a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise FieldMismatchError(f"矩阵形状不匹配: {a.shape} × {b.shape}")
    if 0 in a.shape or 0 in b.shape:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return to_ints(ctx.array(a) @ ctx.array(b))


def combine(ctx: FieldContext, coefficients, words) -> np.ndarray:
    """
    线性组合 Σ c_i · W_i

    Args:
        coefficients: 形状 (batch, k) 或 (k,)
        words: 形状 (k, ...) 的基
    """
    coefficients = np.asarray(coefficients, dtype=np.int64)
    words = np.asarray(words, dtype=np.int64)
    single = coefficients.ndim == 1
    if single:
        coefficients = coefficients[None, :]
    if coefficients.shape[1] != words.shape[0]:
        raise FieldMismatchError(
            f"系数个数 {coefficients.shape[1]} 与基大小 {words.shape[0]} 不一致"
        )
    flat = words.reshape(words.shape[0], -1)
    out = matmul(ctx, coefficients, flat)
    out = out.reshape((coefficients.shape[0],) + words.shape[1:])
    return out[0] if single else out


def bit_planes(ctx: FieldContext, matrix) -> np.ndarray:
    """把 F_{2^t} 矩阵的每一行按位展开成 F_2 行（列数乘以 t）"""
    m = as_matrix(matrix)
    shifts = np.arange(ctx.t, dtype=np.int64)
    return ((m[:, :, None] >> shifts) & 1).reshape(m.shape[0], -1)
