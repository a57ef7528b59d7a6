"""
对称张量零对角码（STCZD）与张量码

STCZD(C) 由全部对称、零对角且每行都属于 C 的 n×n 矩阵组成。取系统形式
G = [I_k | A]，任一这样的矩阵都可唯一写成 Gᵀ X G（X 为 k×k 对称零对角），
于是只需在 X 上施加 "Gᵀ X G 对角为零" 的线性约束再求零空间。
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .code_types import PreconditionError
from .fields import FieldContext, get_field
from .gf_linalg import bit_planes, matmul, nullspace, rank
from .graph_metric import GraphCode, MatrixWord
from .hamming_codes import LinearCode, hamming_min_distance, systematic_form
from .log import logger

_BASE_DISTANCE_BUDGET = 1 << 16


def _base_distance(c: LinearCode) -> int | None:
    """基础码的 Hamming 距离：优先用设计距离（RS 码为 MDS），否则在预算内精确枚举"""
    if c.designed_distance is not None:
        return c.designed_distance
    if c.k and c.q**c.k <= _BASE_DISTANCE_BUDGET:
        return hamming_min_distance(c, _BASE_DISTANCE_BUDGET).value
    return None


def _pair_index(k: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(k) for b in range(a + 1, k)]


def stczd_basis(c: LinearCode) -> GraphCode:
    """
    计算 STCZD(C) 的一组基

    零对角约束在特征 2 下对每个非系统列 j 给出
    Σ_{a<b} x_ab (A_aj A_bj + A_bj A_aj) = 0，系数恒为零，因此维数恰为 C(k, 2)。
    这里仍按一般形式列出约束并求零空间，不依赖这一观察。
    """
    ctx = c.ctx
    k, n = c.k, c.n
    sys_code = systematic_form(c)
    perm = list(sys_code.column_permutation or range(n))
    g = sys_code.generator
    a_part = g[:, k:]
    pairs = _pair_index(k)

    constraints = np.zeros((n - k, len(pairs)), dtype=np.int64)
    if pairs:
        left = np.array([a for a, _ in pairs], dtype=np.int64)
        right = np.array([b for _, b in pairs], dtype=np.int64)
        ab = ctx.mul_vec(a_part[left], a_part[right])
        ba = ctx.mul_vec(a_part[right], a_part[left])
        constraints = (ab ^ ba).T
    if len(pairs):
        solutions = nullspace(ctx, constraints, cols=len(pairs))
    else:
        solutions = np.zeros((0, 0), dtype=np.int64)

    words = []
    for vector in solutions:
        x = np.zeros((k, k), dtype=np.int64)
        for value, (a, b) in zip(vector, pairs):
            x[a, b] = x[b, a] = value
        w_sys = matmul(ctx, matmul(ctx, g.T, x), g)
        word = np.empty_like(w_sys)
        word[np.ix_(perm, perm)] = w_sys
        words.append(word)

    nominal = math.comb(k + 1, 2) - n
    dimension = len(words)
    if dimension < max(nominal, 0):
        logger.warning(f"[STCZD] {c.name} 维数 {dimension} 低于名义下界 {nominal}")
    logger.debug(f"[STCZD] {c.name}: k={k}, n={n}, 维数 {dimension}")

    d = _base_distance(c)
    return GraphCode(
        ctx,
        np.stack(words) if words else np.zeros((0, n, n), dtype=np.int64),
        directed=False,
        symmetric_zero_diag=True,
        family="stczd",
        params={"base": c.name, "n": n, "k": k},
        claimed_relative_distance=Fraction(d, n) if d is not None else None,
        # 行码距离 d 是有向图距离的下界，而有向距离又不超过无向距离
        certified_lower=d,
        metadata={
            "nominal_dimension": nominal,
            "dimension": dimension,
            "base_distance": d,
            "systematic_permutation": perm,
        },
        n_vertices=n,
    )


def tensor_code(c: LinearCode) -> GraphCode:
    """张量码 C ⊗ C，基为 g_iᵀ ⊗ g_j（有向、非对称）"""
    ctx = c.ctx
    g = c.generator
    words = ctx.mul_vec(g[:, None, :, None], g[None, :, None, :]).reshape(
        c.k * c.k, c.n, c.n
    )
    d = c.designed_distance
    return GraphCode(
        ctx,
        words,
        directed=True,
        symmetric_zero_diag=False,
        family="tensor",
        params={"base": c.name, "n": c.n, "k": c.k},
        claimed_relative_distance=Fraction(d, c.n) if d is not None else None,
        certified_lower=d,
        metadata={"dimension": c.k * c.k, "base_distance": d},
    )


def is_in_tensor_code(word: MatrixWord, c: LinearCode) -> bool:
    """每一行、每一列都属于 C"""
    if word.ctx != c.ctx or word.n != c.n:
        return False
    m = word.entries
    return (
        rank(c.ctx, np.vstack([c.generator, m])) == c.k
        and rank(c.ctx, np.vstack([c.generator, m.T])) == c.k
    )


def span_contains(big: GraphCode, small: GraphCode) -> bool:
    """small 中的每个码字都属于 big（两者都按 F_2 张成比较）"""
    if big.ctx != small.ctx or big.n != small.n:
        return False
    if small.dim == 0:
        return True
    binary = get_field(1)
    flat_big = bit_planes(big.ctx, big.binary_basis().reshape(-1, big.n * big.n))
    flat_small = bit_planes(small.ctx, small.binary_basis().reshape(-1, small.n * small.n))
    return rank(binary, np.vstack([flat_big, flat_small])) == rank(binary, flat_big)


# ----------------------------------------------------------------------
# RS 码的显式 STCZD 子码
# ----------------------------------------------------------------------


def stczd_rs_pairs(k: int) -> list[tuple[int, int]]:
    """
    显式基的指标：先是 a < b ≤ k-3 的 (a, b)，再是 i ≤ k-3 的 (i, i)

    对应多项式 X^a Y^b + X^b Y^a 与 X^i Y^i。
    """
    top = k - 2
    pairs = [(a, b) for a in range(top) for b in range(a + 1, top)]
    pairs.extend((i, i) for i in range(top))
    return pairs


def stczd_rs_entry(x: int, y: int, index: int, k: int, ctx: FieldContext) -> int:
    """
    显式子码第 index 个基矩阵在 (x, y) 处的元素

    元素值为 (x + y)^2 · p(x, y)，只做 O(1) 次域运算。
    """
    pairs = stczd_rs_pairs(k)
    if not 0 <= index < len(pairs):
        raise PreconditionError(f"基下标 {index} 超出范围 [0, {len(pairs)})")
    a, b = pairs[index]
    if a == b:
        poly = ctx.mul(ctx.pow(x, a), ctx.pow(y, a))
    else:
        poly = ctx.mul(ctx.pow(x, a), ctx.pow(y, b)) ^ ctx.mul(ctx.pow(x, b), ctx.pow(y, a))
    s = x ^ y
    return ctx.mul(ctx.mul(s, s), poly)


def stczd_rs_explicit(n: int, k: int, ctx: FieldContext) -> GraphCode:
    """
    RS(n, k) 的 STCZD 中一个维数为 C(k-1, 2) 的显式子码

    基多项式乘以 (X - Y)^2 后在 n×n 网格 {0..n-1}² 上求值；k < 3 时返回零维码。
    """
    if not 1 <= k <= n <= ctx.order:
        raise PreconditionError(
            f"RS 参数需满足 1 ≤ k ≤ n ≤ q，收到 n={n}, k={k}, q={ctx.order}"
        )
    points = np.arange(n, dtype=np.int64)
    powers = [ctx.pow_vec(points, e) for e in range(max(k - 2, 0))]
    diff = points[:, None] ^ points[None, :]
    square = ctx.mul_vec(diff, diff)
    words = []
    for a, b in stczd_rs_pairs(k):
        xa, yb = powers[a][:, None], powers[b][None, :]
        poly = ctx.mul_vec(xa, yb)
        if a != b:
            poly = poly ^ ctx.mul_vec(powers[b][:, None], powers[a][None, :])
        words.append(ctx.mul_vec(square, poly))
    d = n - k + 1
    if not words:
        logger.info(f"[STCZD] k={k} < 3，显式子码为零码")
    return GraphCode(
        ctx,
        np.stack(words) if words else np.zeros((0, n, n), dtype=np.int64),
        directed=False,
        symmetric_zero_diag=True,
        family="stczd_rs",
        params={"n": n, "k": k, "t": ctx.t},
        claimed_relative_distance=Fraction(d, n),
        certified_lower=d,
        metadata={"dimension": len(words), "base_distance": d},
        n_vertices=n,
    )
