"""
对称级联

外码是 F_Q 上的图码（N×N 对称零对角），内码是 F_2 线性的有向图码编码器
E: F_Q → F_q^{n×n}。复合码字的 (I, J) 块（I ≤ J）为 E(W_IJ)，(J, I) 块取其转置，
所以复合码仍是对称零对角的，且复合有向距离 ≥ d_内 · D_外。
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .code_types import DistanceReport, FieldMismatchError, PreconditionError
from .fields import FieldContext, get_field
from .gf_linalg import bit_planes, rank
from .graph_metric import GraphCode, code_distance, composite_distance_report
from .hamming_codes import hamming_min_distance, rs_generate, wozencraft_code
from .log import logger
from .random_codes import inverse_binary_entropy, search_opt_directed
from .stczd import stczd_basis, stczd_rs_explicit, tensor_code

DEFAULT_COMPOSITE_SAMPLES = 16


@dataclass(eq=False)
class InnerEncoder:
    """
    F_2 线性内码编码器

    ``words[j]`` 是符号 X^j 的像，E(s) = ⊕_{j: s_j = 1} words[j]（s_j 为 vec_embed 坐标）。
    这组矩阵本身就是线性证书。
    """

    ctx: FieldContext
    outer_ctx: FieldContext
    words: np.ndarray
    distance: int | None = None
    name: str = ""
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        words = np.array(self.words, dtype=np.int64, copy=True)
        if words.ndim != 3 or words.shape[1] != words.shape[2]:
            raise FieldMismatchError(f"内码像必须是 (m, n, n) 数组，收到形状 {words.shape}")
        if words.shape[0] != self.outer_ctx.t:
            raise FieldMismatchError(
                f"内码输入 {words.shape[0]} 比特与外码字母表 F_{self.outer_ctx.order} 不一致"
            )
        flat = bit_planes(self.ctx, words.reshape(words.shape[0], -1))
        if rank(get_field(1), flat) != words.shape[0]:
            raise PreconditionError(f"内码编码器 {self.name} 不是单射")
        words.setflags(write=False)
        self.words = words

    @property
    def n(self) -> int:
        return self.words.shape[1]

    @property
    def message_bits(self) -> int:
        return self.words.shape[0]

    @classmethod
    def from_graph_code(
        cls, code: GraphCode, outer_ctx: FieldContext, *, name: str = ""
    ) -> InnerEncoder:
        """取内码 F_2 基的前 log_2 Q 个向量作为 X^0..X^{m-1} 的像"""
        binary = code.binary_basis()
        if binary.shape[0] < outer_ctx.t:
            raise PreconditionError(
                f"内码 F_2 维数 {binary.shape[0]} 小于外码符号比特数 {outer_ctx.t}"
            )
        return cls(
            code.ctx,
            outer_ctx,
            binary[: outer_ctx.t],
            distance=code.certified_lower,
            name=name or code.family,
            metadata={"inner_family": code.family, "inner_params": dict(code.params)},
        )

    @classmethod
    def from_symbol_table(
        cls,
        ctx: FieldContext,
        outer_ctx: FieldContext,
        table: dict[int, np.ndarray],
        *,
        distance: int | None = None,
        name: str = "",
    ) -> InnerEncoder:
        """从完整的符号 → 矩阵映射构造，并验证 E(0) = 0 与 F_2 线性"""
        images = {s: np.asarray(table[s], dtype=np.int64) for s in range(outer_ctx.order)}
        if np.any(images[0]):
            raise PreconditionError("内码映射不满足 E(0) = 0")
        for a in range(outer_ctx.order):
            for b in range(a + 1, outer_ctx.order):
                if not np.array_equal(images[a ^ b], images[a] ^ images[b]):
                    raise PreconditionError(f"内码映射不是 F_2 线性的: E({a:x}) + E({b:x})")
        words = np.stack([images[1 << j] for j in range(outer_ctx.t)])
        return cls(ctx, outer_ctx, words, distance=distance, name=name)

    def encode(self, symbol: int) -> np.ndarray:
        symbol = self.outer_ctx.check(symbol)
        out = np.zeros((self.n, self.n), dtype=np.int64)
        for j in range(self.message_bits):
            if symbol >> j & 1:
                out ^= self.words[j]
        return out

    def encode_matrix(self, symbols: np.ndarray) -> np.ndarray:
        """逐符号编码，返回形状 (N, N, n, n) 的块数组"""
        symbols = np.asarray(symbols, dtype=np.int64)
        bits = (symbols[..., None] >> np.arange(self.message_bits)) & 1
        selected = bits[..., None, None] * self.words
        return np.bitwise_xor.reduce(selected, axis=2)


EncoderRule = Callable[[int, int], InnerEncoder]


def _assemble(blocks: np.ndarray) -> np.ndarray:
    big_n, _, n, _ = blocks.shape
    return blocks.transpose(0, 2, 1, 3).reshape(big_n * n, big_n * n)


def _symmetrize_blocks(blocks: np.ndarray) -> np.ndarray:
    big_n = blocks.shape[0]
    upper = np.triu(np.ones((big_n, big_n), dtype=bool))
    return np.where(upper[:, :, None, None], blocks, blocks.transpose(1, 0, 3, 2))


def symmetric_concatenate(
    outer: GraphCode,
    inner: InnerEncoder | EncoderRule,
    *,
    family: str = "concat",
    params: dict[str, Any] | None = None,
) -> GraphCode:
    """
    对称级联

    Args:
        outer: 对称零对角的外码
        inner: 单个编码器，或按块下标 (I, J)（0 起始，I ≤ J）给出编码器的规则
    """
    if not outer.symmetric_zero_diag:
        raise PreconditionError("外码必须是对称零对角的图码")
    big_n = outer.n
    rule = None if isinstance(inner, InnerEncoder) else inner
    sample = rule(0, 0) if rule is not None else inner
    if sample.outer_ctx != outer.ctx:
        raise FieldMismatchError(
            f"内码字母表 F_{sample.outer_ctx.order} 与外码 {outer.ctx.label} 不一致"
        )

    encoders: dict[tuple[int, int], InnerEncoder] = {}
    if rule is not None:
        for i in range(big_n):
            for j in range(i, big_n):
                enc = rule(i, j)
                if enc.outer_ctx != outer.ctx or enc.ctx != sample.ctx or enc.n != sample.n:
                    raise FieldMismatchError(f"块 ({i}, {j}) 的内码与其它块不一致")
                encoders[(i, j)] = enc

    words = []
    for outer_word in outer.binary_basis():
        if rule is None:
            blocks = sample.encode_matrix(outer_word)
        else:
            blocks = np.zeros((big_n, big_n, sample.n, sample.n), dtype=np.int64)
            for (i, j), enc in encoders.items():
                blocks[i, j] = enc.encode(int(outer_word[i, j]))
        words.append(_assemble(_symmetrize_blocks(blocks)))

    used = list(encoders.values()) or [sample]
    inner_distances = [enc.distance for enc in used]
    inner_d = None if any(d is None for d in inner_distances) else min(inner_distances)
    lower = (
        inner_d * outer.certified_lower
        if inner_d is not None and outer.certified_lower is not None
        else None
    )
    logger.debug(
        f"[级联] 外码 n={big_n}（{outer.family}）× 内码 n={sample.n}，F_2 维数 {len(words)}"
    )
    return GraphCode(
        sample.ctx,
        np.stack(words) if words else np.zeros((0, big_n * sample.n, big_n * sample.n)),
        scalars=get_field(1),
        directed=False,
        symmetric_zero_diag=True,
        family=family,
        params=dict(params or {}),
        certified_lower=lower,
        metadata={
            "outer_family": outer.family,
            "outer_n": big_n,
            "outer_certified_lower": outer.certified_lower,
            "inner_n": sample.n,
            "inner_certified_lower": inner_d,
        },
        n_vertices=big_n * sample.n,
    )


def _composed(code: GraphCode, samples: int, seed: int, notes: list[str]) -> DistanceReport:
    report = composite_distance_report(
        code, code.certified_lower, samples=samples, seed=seed, notes=notes
    )
    code.certificate = report
    return report


# ----------------------------------------------------------------------
# 单层级联：STCZD(RS) ∘ Opt
# ----------------------------------------------------------------------


def concat_rs(
    eps: Fraction,
    n: int,
    k: int,
    big_n: int,
    rho: Fraction,
    seed: int,
    *,
    attempts: int = 64,
    samples: int = DEFAULT_COMPOSITE_SAMPLES,
    workers: int = 1,
) -> GraphCode:
    """
    外码 STCZD(RS(N, ⌊ρN⌋)) over F_{2^k}，内码为随机搜索得到的 Opt(ε, n, k)

    复合码有 nN 个顶点，速率约 ε²ρ²，距离 ≥ d_内 · (N - ⌊ρN⌋ + 1)。
    """
    eps, rho = Fraction(eps), Fraction(rho)
    if not 1 <= k <= 16:
        raise PreconditionError(f"内码维数 k={k} 必须在 [1, 16] 内")
    outer_ctx = get_field(k)
    if big_n > outer_ctx.order:
        raise PreconditionError(f"外码长度 N={big_n} 超过字母表大小 {outer_ctx.order}")
    outer_k = math.floor(rho * big_n)
    if outer_k < 1:
        raise PreconditionError(f"⌊ρN⌋ = {outer_k}，外码 RS 维数必须为正")

    outer = stczd_basis(rs_generate(big_n, outer_k, outer_ctx))
    inner_code = search_opt_directed(eps, n, k, seed, attempts, workers=workers)
    encoder = InnerEncoder.from_graph_code(inner_code, outer_ctx, name="opt")
    params = {"eps": eps, "n": n, "k": k, "N": big_n, "rho": rho, "seed": seed}
    code = symmetric_concatenate(outer, encoder, family="concat_rs", params=params)
    code.claimed_relative_distance = (1 - eps) * (1 - rho)
    code.metadata.update(
        {
            "claimed_rate": eps * eps * rho * rho,
            "components": {
                "outer": {"family": "stczd", "n": big_n, "k": outer_k, "q": outer_ctx.order,
                          "dimension": outer.dim, "certified_lower": outer.certified_lower,
                          "certification": "mds"},
                "inner": {"family": "opt", "n": n, "k": k, "eps": eps,
                          "certified_lower": inner_code.certified_lower,
                          "certification": "exact",
                          "attempts": inner_code.metadata.get("attempts", [])},
            },
        }
    )
    _composed(code, samples, seed, ["外码距离来自 MDS 性质，内码距离为精确枚举"])
    return code


# ----------------------------------------------------------------------
# 多层级联：Opt ∘ TC(RS) ∘ ... ∘ 显式 STCZD(RS)
# ----------------------------------------------------------------------


@dataclass
class LayerPlan:
    outer_n: int
    outer_k: int
    tensor_sides: list[int]
    tensor_ks: list[int]
    opt_n: int
    opt_k: int

    @property
    def side(self) -> int:
        return self.outer_n * math.prod(self.tensor_sides) * self.opt_n


def _smallest_tensor_side(rho: Fraction, bits: int) -> int:
    """最小的 2 的幂 M，使 ⌊ρM⌋² · log_2 M ≥ bits"""
    side = 2
    while True:
        k = math.floor(rho * side)
        if k >= 1 and k * k * (side.bit_length() - 1) >= bits:
            return side
        side *= 2
        if side > 1 << 16:
            raise PreconditionError(f"找不到满足 {bits} 比特的张量码层")


def _smallest_opt_side(rho: Fraction, bits: int) -> int:
    """最小的整数 n，使 ρ²n² - 2n > bits"""
    n = 1
    while not rho * rho * n * n - 2 * n > bits:
        n += 1
    return n


def plan_layers(rho: Fraction, big_n: int, tensor_layers: int) -> LayerPlan:
    rho = Fraction(rho)
    if not 0 < rho < 1:
        raise PreconditionError(f"ρ 必须在 (0, 1) 内，收到 {rho}")
    if big_n < 2 or big_n & (big_n - 1):
        raise PreconditionError(f"外码长度 N={big_n} 必须是 2 的幂")
    outer_k = math.floor(rho * big_n)
    if outer_k < 3:
        raise PreconditionError(f"⌊ρN⌋ = {outer_k} < 3，显式外码为零码")
    bits = big_n.bit_length() - 1
    sides, ks = [], []
    for _ in range(tensor_layers):
        side = _smallest_tensor_side(rho, bits)
        sides.append(side)
        ks.append(math.floor(rho * side))
        bits = side.bit_length() - 1
    opt_n = _smallest_opt_side(rho, bits)
    return LayerPlan(big_n, outer_k, sides, ks, opt_n, bits)


def _tensor_certificate(code: GraphCode, budget: int) -> int | None:
    """张量层的有向距离：可枚举时精确计算，否则用行码设计距离"""
    if code.scalars.order**code.dim <= budget:
        report = code_distance(code, budget)
        code.certificate = report
        code.certified_lower = report.value
    return code.certified_lower


def multi_level_concat(
    rho: Fraction,
    big_n: int,
    seed: int,
    *,
    tensor_layers: int,
    attempts: int = 64,
    samples: int = 0,
    layer_budget: int = 1 << 12,
    family: str = "multi_level",
) -> GraphCode:
    plan = plan_layers(rho, big_n, tensor_layers)
    outer_ctx = get_field(big_n.bit_length() - 1)
    code = stczd_rs_explicit(big_n, plan.outer_k, outer_ctx)
    layers: list[dict[str, Any]] = [
        {"family": "stczd_rs", "n": big_n, "k": plan.outer_k, "q": outer_ctx.order,
         "certified_lower": code.certified_lower, "certification": "mds"}
    ]
    for side, k in zip(plan.tensor_sides, plan.tensor_ks):
        ctx = get_field(side.bit_length() - 1)
        tc = tensor_code(rs_generate(side, k, ctx))
        d = _tensor_certificate(tc, layer_budget)
        encoder = InnerEncoder.from_graph_code(tc, code.ctx, name="tensor")
        code = symmetric_concatenate(code, encoder, family=family)
        layers.append({"family": "tensor", "n": side, "k": k, "q": ctx.order,
                       "certified_lower": d,
                       "certification": "exact" if tc.certificate else "designed"})
    opt = search_opt_directed(rho, plan.opt_n, plan.opt_k, seed, attempts)
    encoder = InnerEncoder.from_graph_code(opt, code.ctx, name="opt")
    code = symmetric_concatenate(code, encoder, family=family)
    layers.append({"family": "opt", "n": plan.opt_n, "k": plan.opt_k,
                   "certified_lower": opt.certified_lower, "certification": "exact"})

    distances = [layer["certified_lower"] for layer in layers]
    code.certified_lower = math.prod(distances) if None not in distances else None
    code.params = {"rho": rho, "N": big_n, "seed": seed}
    code.metadata.update({"layers": layers, "plan": {
        "outer_n": plan.outer_n, "tensor_sides": plan.tensor_sides, "opt_n": plan.opt_n,
        "side": plan.side}})
    logger.info(
        f"[级联] {family}: {len(layers)} 层，{plan.side} 个顶点，F_2 维数 {code.dim}，"
        f"距离 ≥ {code.certified_lower}"
    )
    _composed(code, samples, seed, ["各层距离之积"])
    return code


def double_concat(rho: Fraction, big_n: int, seed: int, **kwargs: Any) -> GraphCode:
    """Opt ∘ TC(RS) ∘ 显式 STCZD(RS)"""
    return multi_level_concat(rho, big_n, seed, tensor_layers=1, family="double", **kwargs)


def triple_concat(rho: Fraction, big_n: int, seed: int, **kwargs: Any) -> GraphCode:
    """Opt ∘ TC(RS) ∘ TC(RS) ∘ 显式 STCZD(RS)"""
    return multi_level_concat(rho, big_n, seed, tensor_layers=2, family="triple", **kwargs)


# ----------------------------------------------------------------------
# Justesen 型：逐块使用不同的 Wozencraft 内码
# ----------------------------------------------------------------------


def justesen_inner(k: int, index: int) -> tuple[GraphCode, int]:
    """
    D^(I) = STCZD(W_{α_I})，α_I 为整数值 I 的域元素

    返回 (内码, 有向距离)；有向距离等于 W_{α_I} 的 Hamming 距离。
    """
    ctx = get_field(k)
    wz = wozencraft_code(k, ctx.element(index))
    d = hamming_min_distance(wz).value
    inner = stczd_basis(wz)
    inner.certified_lower = d
    return inner, d


def justesen_like(
    eps: Fraction,
    k: int,
    rho: Fraction,
    *,
    samples: int = 0,
    seed: int = 0,
) -> GraphCode:
    """
    外码 STCZD(RS(2^k - 1, ⌊ρN⌋)) over F_{2^k}，块 (I, J) 使用内码 D^(min(I, J))

    下标 I, J 从 1 开始计数。内码的 F_2 维数是 C(k, 2)，要求 k ≥ 3。
    """
    eps, rho = Fraction(eps), Fraction(rho)
    if k < 3:
        raise PreconditionError(
            f"k={k}: 内码 STCZD 的 F_2 维数 C(k, 2) = {math.comb(k, 2)} 小于外码符号的 {k} 比特，"
            "Justesen 型构造要求 k ≥ 3"
        )
    outer_ctx = get_field(k)
    big_n = outer_ctx.order - 1
    outer_k = math.floor(rho * big_n)
    if outer_k < 2:
        raise PreconditionError(f"⌊ρN⌋ = {outer_k}，外码 STCZD 为零码")
    outer = stczd_basis(rs_generate(big_n, outer_k, outer_ctx))

    inner_table: dict[int, InnerEncoder] = {}
    inner_distances: dict[int, int] = {}
    for index in range(1, big_n + 1):
        inner, d = justesen_inner(k, index)
        inner_table[index] = InnerEncoder.from_graph_code(inner, outer_ctx, name=f"D^({index})")
        inner_distances[index] = d

    threshold = inverse_binary_entropy(Fraction(1, 2) - eps) * 2 * k
    good = sum(1 for d in inner_distances.values() if d >= threshold)
    code = symmetric_concatenate(
        outer,
        lambda i, j: inner_table[min(i, j) + 1],
        family="justesen",
        params={"eps": eps, "k": k, "rho": rho},
    )
    code.claimed_relative_distance = (1 - rho - eps) * Fraction(
        inverse_binary_entropy(Fraction(1, 2) - eps)
    ).limit_denominator(10**6)
    code.metadata.update(
        {
            "inner_distances": {str(i): d for i, d in inner_distances.items()},
            "good_threshold": threshold,
            "good_fraction": Fraction(good, big_n),
        }
    )
    logger.info(
        f"[级联] Justesen k={k}: {good}/{big_n} 个内码距离 ≥ {threshold:.2f}，"
        f"复合距离 ≥ {code.certified_lower}"
    )
    _composed(code, samples, seed, ["外码距离来自 MDS 性质 × 最小内码距离"])
    return code


def wozencraft_good_fraction(k: int, eps: Fraction) -> tuple[Fraction, dict[int, int]]:
    """距离 ≥ H⁻¹(1/2 - ε) · 2k 的 Wozencraft 码所占比例及全部距离"""
    ctx = get_field(k)
    threshold = inverse_binary_entropy(Fraction(1, 2) - Fraction(eps)) * 2 * k
    distances = {
        alpha: hamming_min_distance(wozencraft_code(k, ctx.element(alpha))).value
        for alpha in range(1, ctx.order)
    }
    good = sum(1 for d in distances.values() if d >= threshold)
    return Fraction(good, len(distances)), distances
