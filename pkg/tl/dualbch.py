"""
对偶 BCH 图码与 Weil 界检查

顶点集是 F_{2^t}，迹多项式 f(Z) = Σ_j α_j Z^j（j 为奇数，3 ≤ j ≤ d）定义二元图
M_f(x, y) = Tr(f(x + y))。M_f 对称且对角为零（f(0) = 0）。
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .code_types import PreconditionError
from .fields import FieldContext, FieldElement, find_generator, get_field
from .gf_linalg import independent_rows
from .graph_metric import GraphCode, GraphWord, clique_number, independence_number
from .log import logger
from .tl_utils import digits_base

MAX_CHARACTER_SUM_T = 24
_SAMPLE_CHUNK = 1 << 10
_CLASS_CHUNK = 1 << 12


def max_dualbch_degree(t: int) -> int:
    """d = 3 总是允许；更大的 d 需要 d ≤ ⌊2^{t/2}⌋"""
    return max(3, math.isqrt(1 << t))


def _check_degree(t: int, d: int) -> None:
    if d < 3 or d % 2 == 0:
        raise PreconditionError(f"d={d} 必须是 ≥ 3 的奇数")
    if d > max_dualbch_degree(t):
        raise PreconditionError(f"t={t} 时 d 不能超过 {max_dualbch_degree(t)}，收到 d={d}")


@dataclass(frozen=True)
class TracePolynomial:
    """f(Z) = Σ_j coeffs[j] · Z^j，j 为 [3, d] 内的奇数"""

    ctx: FieldContext
    coeffs: Mapping[int, int] = field(default_factory=dict)
    d: int = 3

    def __post_init__(self):
        _check_degree(self.ctx.t, self.d)
        cleaned = {}
        for exponent, value in self.coeffs.items():
            exponent = int(exponent)
            if exponent % 2 == 0 or not 3 <= exponent <= self.d:
                raise PreconditionError(f"指数 {exponent} 必须是 [3, {self.d}] 内的奇数")
            value = int(value.value if isinstance(value, FieldElement) else value)
            self.ctx.check(value)
            if value:
                cleaned[exponent] = value
        object.__setattr__(self, "coeffs", dict(sorted(cleaned.items())))

    def evaluate_all(self) -> np.ndarray:
        """f 在全部域元素（整数值 0..q-1）上的取值"""
        z = np.arange(self.ctx.order, dtype=np.int64)
        out = np.zeros_like(z)
        for exponent, value in self.coeffs.items():
            out ^= self.ctx.mul_vec(value, self.ctx.pow_vec(z, exponent))
        return out


def _trace_table(f: TracePolynomial) -> np.ndarray:
    return f.ctx.trace_vec(f.evaluate_all())


def dualbch_codeword(f: TracePolynomial) -> GraphWord:
    """M_f(x, y) = Tr(f(x + y))，行列按域元素整数值排列"""
    values = _trace_table(f)
    idx = np.arange(f.ctx.order, dtype=np.int64)
    return GraphWord(get_field(1), values[idx[:, None] ^ idx[None, :]])


def dualbch_entry(f: TracePolynomial, x: int, y: int) -> int:
    """单个元素 Tr(f(x + y))，只做 O(d) 次域运算"""
    ctx = f.ctx
    z = ctx.check(x) ^ ctx.check(y)
    acc = 0
    for exponent, value in f.coeffs.items():
        acc ^= ctx.mul(value, ctx.pow(z, exponent))
    return ctx.trace(acc)


def warmup_codeword(alpha: FieldElement, ctx: FieldContext) -> GraphWord:
    """M_α(x, y) = Tr(α (x + y)^3)"""
    if alpha.ctx != ctx:
        raise PreconditionError(f"α 属于 {alpha.ctx.label}，期望 {ctx.label}")
    return dualbch_codeword(TracePolynomial(ctx, {3: alpha.value}, d=3))


def dualbch_basis(ctx: FieldContext, d: int) -> GraphCode:
    """
    对偶 BCH 图码

    名义基为 β_i = X^i（i < t）对每个奇数 j ∈ [3, d] 给出的 M_{β_i Z^j}；
    线性相关时贪心保留一组极大无关子集，并记录名义维数与实际维数。
    """
    _check_degree(ctx.t, d)
    nominal = []
    labels = []
    for j in range(3, d + 1, 2):
        for i in range(ctx.t):
            word = dualbch_codeword(TracePolynomial(ctx, {j: 1 << i}, d=d))
            nominal.append(word.entries)
            labels.append((j, i))
    stacked = np.stack(nominal)
    kept = independent_rows(get_field(1), stacked.reshape(len(nominal), -1))
    if len(kept) < len(nominal):
        logger.warning(
            f"[对偶BCH] t={ctx.t}, d={d}: 名义维数 {len(nominal)}，实际秩 {len(kept)}"
        )
    return GraphCode(
        get_field(1),
        stacked[kept],
        directed=False,
        symmetric_zero_diag=True,
        family="dualbch",
        params={"t": ctx.t, "d": d},
        metadata={
            "nominal_dimension": len(nominal),
            "dimension": len(kept),
            "basis_terms": [labels[i] for i in kept],
        },
        n_vertices=ctx.order,
    )


# ----------------------------------------------------------------------
# 特征和与 Weil 界
# ----------------------------------------------------------------------


def _poly_values(coeffs: np.ndarray, ctx: FieldContext) -> np.ndarray:
    """
    Horner 法批量求值

    Args:
        coeffs: 形状 (batch, deg + 1)，低次在前
    Returns:
        形状 (batch, q) 的取值
    """
    x = np.arange(ctx.order, dtype=np.int64)[None, :]
    acc = np.zeros((coeffs.shape[0], ctx.order), dtype=np.int64)
    for i in range(coeffs.shape[1] - 1, -1, -1):
        acc = ctx.mul_vec(acc, x) ^ coeffs[:, i : i + 1]
    return acc


def _sums_from_values(values: np.ndarray, ctx: FieldContext) -> np.ndarray:
    ones = ctx.trace_vec(values).sum(axis=1)
    return ctx.order - 2 * ones


def character_sum(poly: Sequence[int], ctx: FieldContext) -> int:
    """Σ_x (-1)^{Tr(p(x))}，poly 为低次在前的系数"""
    if ctx.t > MAX_CHARACTER_SUM_T:
        raise PreconditionError(f"t={ctx.t} 超出特征和枚举上限 {MAX_CHARACTER_SUM_T}")
    coeffs = np.array([[ctx.check(c) for c in poly] or [0]], dtype=np.int64)
    return int(_sums_from_values(_poly_values(coeffs, ctx), ctx)[0])


def frobenius_reduce(poly: Sequence[int], ctx: FieldContext) -> list[int]:
    """
    利用 Tr(α x^{2e}) = Tr(√α x^e) 把所有偶次项折叠到奇次项

    返回的多项式只含常数项与奇次项，特征和不变。
    """
    out = [0] * max(len(poly), 1)
    for exponent, value in enumerate(poly):
        value = ctx.check(value)
        if exponent == 0 or not value:
            out[exponent] ^= value
            continue
        while exponent % 2 == 0:
            exponent //= 2
            value = ctx.sqrt(value)
        out[exponent] ^= value
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def quadratic_trace_is_constant(a: int, b: int, c: int, ctx: FieldContext) -> bool:
    """x ↦ Tr(a x² + b x + c) 是否为常数（当且仅当 a = b²）"""
    values = _poly_values(np.array([[c, b, a]], dtype=np.int64), ctx)
    traces = ctx.trace_vec(values)[0]
    return bool(np.all(traces == traces[0]))


@dataclass
class WeilRow:
    t: int
    degree: int
    mode: str
    polynomials: int
    max_abs_sum: int
    bound: float
    passed: bool
    worst: list[int] = field(default_factory=list)


def _weil_bound(t: int, degree: int) -> float:
    return (degree - 1) * math.sqrt(1 << t)


def _leading_representatives(ctx: FieldContext, degree: int) -> list[int]:
    """F* 模 degree 次幂子群的陪集代表 g^0, ..., g^{m-1}，m = gcd(degree, q - 1)"""
    g = find_generator(ctx).value
    return [ctx.pow(g, i) for i in range(math.gcd(degree, ctx.order - 1))]


def _exhaustive_reduced(ctx: FieldContext, degree: int) -> tuple[int, int, list[int]]:
    """
    枚举约化类 λ X^e + Σ_{奇数 j < e} γ_j X^j

    任一 e 次多项式经 Frobenius 约化、去掉常数项（只改变符号）并作代换 x ↦ μx 后，
    首项系数可化为 e 次幂陪集的代表 λ，|特征和| 不变。
    """
    odd = list(range(1, degree, 2))
    per_lead = ctx.order ** len(odd)
    x = np.arange(ctx.order, dtype=np.int64)
    powers = {j: ctx.pow_vec(x, j) for j in odd + [degree]}
    best, worst = -1, []
    leads = _leading_representatives(ctx, degree)
    for lead in leads:
        top = ctx.mul_vec(lead, powers[degree])
        for start in range(0, per_lead, _CLASS_CHUNK):
            indices = np.arange(start, min(per_lead, start + _CLASS_CHUNK), dtype=np.int64)
            gammas = digits_base(indices, ctx.order, len(odd))
            values = np.broadcast_to(top, (indices.shape[0], ctx.order)).copy()
            for col, j in enumerate(odd):
                values ^= ctx.mul_vec(gammas[:, col : col + 1], powers[j][None, :])
            sums = np.abs(_sums_from_values(values, ctx))
            pos = int(np.argmax(sums))
            if int(sums[pos]) > best:
                best = int(sums[pos])
                worst = [0] * (degree + 1)
                worst[degree] = lead
                for col, j in enumerate(odd):
                    worst[j] = int(gammas[pos, col])
    return per_lead * len(leads), best, worst


def _sampled_full(
    ctx: FieldContext, degree: int, samples: int, seed: int
) -> tuple[int, int, list[int]]:
    rng = np.random.Generator(np.random.Philox(seed))
    best, worst = -1, []
    done = 0
    while done < samples:
        batch = min(_SAMPLE_CHUNK, samples - done)
        coeffs = rng.integers(0, ctx.order, size=(batch, degree + 1), dtype=np.int64)
        coeffs[:, degree] = rng.integers(1, ctx.order, size=batch, dtype=np.int64)
        sums = np.abs(_sums_from_values(_poly_values(coeffs, ctx), ctx))
        pos = int(np.argmax(sums))
        if int(sums[pos]) > best:
            best, worst = int(sums[pos]), [int(v) for v in coeffs[pos]]
        done += batch
    return samples, best, worst


def weil_check(
    ctx: FieldContext,
    degree: int,
    *,
    samples: int | None = None,
    seed: int = 0,
) -> WeilRow:
    """
    检查奇数次 degree 多项式的 |Σ (-1)^{Tr(p(x))}| ≤ (degree - 1)·2^{t/2}

    ``samples`` 为空时枚举全部约化类，否则抽样完整的随机多项式。
    """
    if degree < 1 or degree % 2 == 0:
        raise PreconditionError(f"Weil 检查只针对奇数次多项式，收到 {degree}")
    if ctx.t > MAX_CHARACTER_SUM_T:
        raise PreconditionError(f"t={ctx.t} 超出特征和枚举上限 {MAX_CHARACTER_SUM_T}")
    bound = _weil_bound(ctx.t, degree)
    if samples is None:
        count, best, worst = _exhaustive_reduced(ctx, degree)
        mode = "exhaustive"
    else:
        count, best, worst = _sampled_full(ctx, degree, samples, seed)
        mode = "sampled"
    passed = best <= bound + 1e-9
    if not passed:
        logger.error(f"[Weil] t={ctx.t}, deg={degree}: |S| = {best} > {bound:.2f}")
    return WeilRow(ctx.t, degree, mode, count, best, bound, passed, worst)


def weil_table(
    ts: Iterable[int],
    degrees: Iterable[int] = (3, 5, 7),
    *,
    exhaustive_max_t: int = 5,
    samples: int = 10_000,
    seed: int = 0,
) -> list[WeilRow]:
    """t ≤ exhaustive_max_t 时枚举约化类，否则抽样"""
    rows = []
    for t in ts:
        ctx = get_field(t)
        for degree in degrees:
            rows.append(
                weil_check(
                    ctx,
                    degree,
                    samples=None if t <= exhaustive_max_t else samples,
                    seed=seed,
                )
            )
    return rows


# ----------------------------------------------------------------------
# Ramsey 型统计
# ----------------------------------------------------------------------


@dataclass
class RamseyProfile:
    t: int
    n: int
    codewords: int
    max_independent: int
    max_clique: int
    rows: list[tuple[int, int, int]]

    @property
    def c_star(self) -> float:
        """max(α, ω) / √n"""
        return max(self.max_independent, self.max_clique) / math.sqrt(self.n)

    @property
    def relative_distance_to_trivial(self) -> Fraction:
        """到空图/完全图的最小相对图距离下界 1 - max(α, ω)/n"""
        return 1 - Fraction(max(self.max_independent, self.max_clique), self.n)


def ramsey_profile(code: GraphCode) -> RamseyProfile:
    """枚举全部非零码字的独立数与团数（二元码，码字数 2^dim - 1）"""
    if code.ctx.t != 1 or code.scalars.t != 1:
        raise PreconditionError("Ramsey 统计只对二元码定义")
    rows = []
    for index in range(1, 1 << code.dim):
        word = code.word_at(index)
        rows.append((index, independence_number(word), clique_number(word)))
    t = int(code.params.get("t", code.n.bit_length() - 1))
    return RamseyProfile(
        t=t,
        n=code.n,
        codewords=len(rows),
        max_independent=max(r[1] for r in rows),
        max_clique=max(r[2] for r in rows),
        rows=rows,
    )
