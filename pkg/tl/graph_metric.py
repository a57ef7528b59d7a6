"""
图距离与图码

图距离 d(G, H) 是使 G、H 在剩余顶点上诱导子图一致所需删除的最少顶点数，等价于
差矩阵支撑图的最小顶点覆盖 n - α(G Δ H)。有向图距离允许行集 S 与列集 T 分别删除，
取 max(|S|, |T|) 的最小值。
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .code_types import (
    BudgetExceededError,
    DistanceReport,
    FieldMismatchError,
    InternalError,
    PreconditionError,
    RankDeficientError,
)
from .fields import FieldContext, get_field
from .gf_linalg import bit_planes, combine, rank
from .graph_solvers import (
    max_clique,
    max_independent_set,
    min_directed_cover,
    vertex_cover_from_independent,
)
from .log import logger
from .tl_utils import digits_base, index_digits, mask_to_tuple, message_index, row_masks

DEFAULT_DISTANCE_BUDGET = 1 << 22
DEFAULT_MIS_VERTEX_LIMIT = 64
DEFAULT_SOFT_CAP_SECONDS = 60.0
DEFAULT_SAMPLE_NODE_LIMIT = 200_000
_WORD_CHUNK_ENTRIES = 1 << 22


@dataclass(eq=False)
class MatrixWord:
    """F_q 上的 n×n 矩阵（有向图码的码字）"""

    ctx: FieldContext
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=np.int64, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise FieldMismatchError(f"码字必须是方阵，收到形状 {m.shape}")
        if m.size and (m.min() < 0 or m.max() >= self.ctx.order):
            raise FieldMismatchError(f"码字含有不属于 {self.ctx.label} 的元素")
        m.setflags(write=False)
        self.entries = m

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def _check_peer(self, other: MatrixWord) -> None:
        if other.ctx != self.ctx:
            raise FieldMismatchError(f"域不一致: {self.ctx.label} vs {other.ctx.label}")
        if other.n != self.n:
            raise FieldMismatchError(f"顶点数不一致: {self.n} vs {other.n}")

    def __add__(self, other: MatrixWord) -> MatrixWord:
        self._check_peer(other)
        return MatrixWord(self.ctx, self.entries ^ other.entries)

    __sub__ = __add__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixWord):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self.entries, other.entries)

    __hash__ = None  # type: ignore[assignment]

    def transpose(self) -> MatrixWord:
        return MatrixWord(self.ctx, self.entries.T)

    def support_masks(self) -> list[int]:
        return row_masks(self.entries != 0)

    def is_graph(self) -> bool:
        return bool(
            np.array_equal(self.entries, self.entries.T)
            and not np.any(np.diagonal(self.entries))
        )

    def as_graph(self) -> GraphWord:
        return GraphWord(self.ctx, self.entries)


class GraphWord(MatrixWord):
    """对称、零对角的 F_q 矩阵，即 F_q 边权的无向图"""

    def __post_init__(self):
        super().__post_init__()
        if not np.array_equal(self.entries, self.entries.T):
            raise FieldMismatchError("图码字必须是对称矩阵")
        if np.any(np.diagonal(self.entries)):
            raise FieldMismatchError("图码字对角线必须为零")

    @classmethod
    def from_edges(cls, n: int, edges, ctx: FieldContext | None = None) -> GraphWord:
        m = np.zeros((n, n), dtype=np.int64)
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            weight = int(edge[2]) if len(edge) > 2 else 1
            m[u, v] = m[v, u] = weight
        return cls(ctx or get_field(1), m)

    @classmethod
    def empty(cls, n: int, ctx: FieldContext | None = None) -> GraphWord:
        return cls(ctx or get_field(1), np.zeros((n, n), dtype=np.int64))

    @classmethod
    def complete(cls, n: int) -> GraphWord:
        return cls(get_field(1), 1 - np.eye(n, dtype=np.int64))

    def __add__(self, other: MatrixWord) -> MatrixWord:
        result = super().__add__(other)
        return result.as_graph() if isinstance(other, GraphWord) else result

    __sub__ = __add__


# ----------------------------------------------------------------------
# 单个码字/图对的距离
# ----------------------------------------------------------------------


@dataclass
class WordDistance:
    value: int
    rows: int
    cols: int
    exact: bool
    improved: bool = True


def _graph_word_distance(
    masks: list[int],
    n: int,
    *,
    incumbent: int | None = None,
    node_limit: int | None = None,
    soft_cap_seconds: float | None = DEFAULT_SOFT_CAP_SECONDS,
) -> WordDistance:
    lower = n - incumbent if incumbent is not None else 0
    found = max_independent_set(
        masks, n, lower=lower, node_limit=node_limit, soft_cap_seconds=soft_cap_seconds
    )
    if not found.improved:
        return WordDistance(incumbent if incumbent is not None else n, 0, 0, found.exact, False)
    cover = (1 << n) - 1 & ~found.members
    return WordDistance(n - found.size, cover, cover, found.exact)


def _directed_word_distance(
    masks: list[int],
    *,
    incumbent: int | None = None,
    node_limit: int | None = None,
) -> WordDistance:
    found = min_directed_cover(masks, upper=incumbent, node_limit=node_limit)
    return WordDistance(found.size, found.rows, found.cols, found.exact, found.improved)


def _require_graph_words(g: MatrixWord, h: MatrixWord) -> None:
    for word in (g, h):
        if not word.is_graph():
            raise PreconditionError("无向图距离要求对称零对角矩阵")
    g._check_peer(h)


def graph_distance(g: MatrixWord, h: MatrixWord) -> int:
    """n - α(G Δ H)，G Δ H 为差矩阵的支撑图"""
    _require_graph_words(g, h)
    diff = g.entries ^ h.entries
    return _graph_word_distance(row_masks(diff != 0), g.n, soft_cap_seconds=None).value


def graph_distance_witness(g: MatrixWord, h: MatrixWord) -> tuple[int, tuple[int, ...]]:
    """返回距离及一个最小删除集"""
    _require_graph_words(g, h)
    masks = row_masks((g.entries ^ h.entries) != 0)
    found = max_independent_set(masks, g.n)
    return g.n - found.size, vertex_cover_from_independent(g.n, found.members)


def directed_graph_distance(a: MatrixWord, b: MatrixWord) -> int:
    a._check_peer(b)
    masks = row_masks((a.entries ^ b.entries) != 0)
    return min_directed_cover(masks).size


def directed_distance_witness(
    a: MatrixWord, b: MatrixWord
) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    a._check_peer(b)
    found = min_directed_cover(row_masks((a.entries ^ b.entries) != 0))
    return found.size, mask_to_tuple(found.rows), mask_to_tuple(found.cols)


def _binary_graph(g: MatrixWord) -> list[int]:
    if g.ctx.t != 1:
        raise PreconditionError("独立数/团数只对二元图定义")
    if not g.is_graph():
        raise PreconditionError("独立数/团数要求对称零对角矩阵")
    return g.support_masks()


def independence_number(g: MatrixWord) -> int:
    return max_independent_set(_binary_graph(g), g.n).size


def clique_number(g: MatrixWord) -> int:
    return max_clique(_binary_graph(g), g.n).size


# ----------------------------------------------------------------------
# 图码
# ----------------------------------------------------------------------


@dataclass(eq=False)
class GraphCode:
    """
    由基矩阵张成的码

    ``scalars`` 是线性结构的系数域：与 ``ctx`` 相同时码是 F_q 线性的；为 F_2 时
    码只是 F_2 线性的（级联得到的中间码就是这种情形）。
    """

    ctx: FieldContext
    basis: np.ndarray
    scalars: FieldContext | None = None
    directed: bool = False
    symmetric_zero_diag: bool = True
    family: str = ""
    params: dict[str, Any] = field(default_factory=dict)
    claimed_relative_distance: Fraction | None = None
    certified_lower: int | None = None
    certificate: DistanceReport | None = None
    metadata: dict[str, Any] = field(default_factory=dict)
    n_vertices: int | None = None

    def __post_init__(self):
        if self.scalars is None:
            self.scalars = self.ctx
        if self.scalars != self.ctx and self.scalars.t != 1:
            raise FieldMismatchError("系数域只能是 F_2 或码元素所在的域")
        basis = np.array(self.basis, dtype=np.int64, copy=True)
        if basis.ndim == 2 and basis.shape[0] == 0:
            basis = basis.reshape(0, 0, 0)
        if basis.size == 0:
            n = self.n_vertices if self.n_vertices is not None else (
                basis.shape[1] if basis.ndim == 3 else 0
            )
            basis = np.zeros((0, n, n), dtype=np.int64)
        if basis.ndim != 3 or basis.shape[1] != basis.shape[2]:
            raise FieldMismatchError(f"基必须是 (dim, n, n) 数组，收到形状 {basis.shape}")
        if basis.size and (basis.min() < 0 or basis.max() >= self.ctx.order):
            raise FieldMismatchError(f"基含有不属于 {self.ctx.label} 的元素")
        if self.symmetric_zero_diag:
            if not np.array_equal(basis, basis.transpose(0, 2, 1)):
                raise FieldMismatchError("图码的基矩阵必须对称")
            if np.any(np.diagonal(basis, axis1=1, axis2=2)):
                raise FieldMismatchError("图码的基矩阵对角线必须为零")
        basis.setflags(write=False)
        self.basis = basis
        self.n_vertices = basis.shape[1]
        if self.dim and self.rank() != self.dim:
            raise RankDeficientError(f"{self.family or '图码'} 的基线性相关")

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def n(self) -> int:
        return self.basis.shape[1]

    @property
    def q(self) -> int:
        return self.ctx.order

    @property
    def bits(self) -> int:
        """log_2 |C|"""
        return self.dim * self.scalars.t

    @property
    def coordinates(self) -> int:
        return self.n * self.n if self.directed else math.comb(self.n, 2)

    @property
    def rate(self) -> Fraction:
        if not self.coordinates:
            return Fraction(0)
        return Fraction(self.bits, self.ctx.t * self.coordinates)

    @property
    def metric(self) -> str:
        return "directed" if self.directed else "graph"

    def rank(self) -> int:
        flat = self.basis.reshape(self.dim, -1)
        if self.scalars == self.ctx:
            return rank(self.ctx, flat)
        return rank(self.scalars, bit_planes(self.ctx, flat))

    def binary_basis(self) -> np.ndarray:
        """同一码的 F_2 基：系数域为 F_q 时按 X^j · B_b（b 为主序）展开"""
        if self.scalars.t == 1:
            return self.basis
        words = [
            self.ctx.mul_vec(1 << j, word) for word in self.basis for j in range(self.ctx.t)
        ]
        if not words:
            return np.zeros((0, self.n, self.n), dtype=np.int64)
        return np.stack(words)

    def coefficients_of(self, index: int) -> np.ndarray:
        """码字下标 → 系数向量（scalars 进制，低位对应第一个基）"""
        total = self.scalars.order**self.dim
        if not 0 <= index < total:
            raise PreconditionError(f"码字下标 {index} 超出范围 [0, {total})")
        return index_digits(index, self.scalars.order, self.dim)

    def codeword(self, coefficients) -> MatrixWord:
        coefficients = np.asarray(coefficients, dtype=np.int64)
        if coefficients.shape != (self.dim,):
            raise FieldMismatchError(f"系数个数 {coefficients.shape} 与维数 {self.dim} 不一致")
        if coefficients.size and (
            coefficients.min() < 0 or coefficients.max() >= self.scalars.order
        ):
            raise FieldMismatchError("系数超出系数域")
        if self.dim == 0:
            entries = np.zeros((self.n, self.n), dtype=np.int64)
        else:
            entries = combine(self.ctx, coefficients, self.basis)
        word = MatrixWord(self.ctx, entries)
        return word.as_graph() if self.symmetric_zero_diag else word

    def word_at(self, index: int) -> MatrixWord:
        return self.codeword(self.coefficients_of(index))


# ----------------------------------------------------------------------
# 码距
# ----------------------------------------------------------------------


@dataclass
class ScanTask:
    ctx: FieldContext
    scalars: FieldContext
    basis: np.ndarray
    metric: str
    start: int
    stop: int
    soft_cap_seconds: float | None


@dataclass
class ScanOutcome:
    value: int | None
    index: int | None
    rows: int
    cols: int
    enumerated: int


def _projective_keep(coeffs: np.ndarray) -> np.ndarray:
    """只保留最高位非零系数为 1 的组合（非零倍数支撑相同）"""
    nonzero = coeffs != 0
    width = coeffs.shape[1]
    top = width - 1 - np.argmax(nonzero[:, ::-1], axis=1)
    lead = coeffs[np.arange(coeffs.shape[0]), top]
    return lead == 1


def _scan_range(task: ScanTask) -> ScanOutcome:
    """在 [start, stop) 下标区间内求最小距离，返回首个达到区间最小值的下标"""
    dim, n = task.basis.shape[0], task.basis.shape[1]
    base = task.scalars.order
    chunk = max(1, _WORD_CHUNK_ENTRIES // max(1, dim * n * n))
    best: int | None = None
    best_index: int | None = None
    best_rows = best_cols = 0
    enumerated = 0
    for start in range(task.start, task.stop, chunk):
        indices = np.arange(start, min(task.stop, start + chunk), dtype=np.int64)
        coeffs = digits_base(indices, base, dim)
        if base > 2:
            keep = _projective_keep(coeffs)
            indices, coeffs = indices[keep], coeffs[keep]
        if not indices.size:
            continue
        words = combine(task.ctx, coeffs, task.basis)
        for pos in range(indices.shape[0]):
            masks = row_masks(words[pos] != 0)
            enumerated += 1
            if task.metric == "directed":
                found = _directed_word_distance(masks, incumbent=best)
            else:
                found = _graph_word_distance(
                    masks, n, incumbent=best, soft_cap_seconds=task.soft_cap_seconds
                )
            if found.improved and (best is None or found.value < best):
                best = found.value
                best_index = int(indices[pos])
                best_rows, best_cols = found.rows, found.cols
    return ScanOutcome(best, best_index, best_rows, best_cols, enumerated)


def _split_ranges(total: int, workers: int) -> list[tuple[int, int]]:
    pieces = max(1, workers * 4)
    step = max(1, -(-(total - 1) // pieces))
    return [(s, min(total, s + step)) for s in range(1, total, step)]


def _resolve_metric(code: GraphCode, metric: str | None) -> str:
    metric = metric or code.metric
    if metric not in ("graph", "directed"):
        raise PreconditionError(f"未知的图度量: {metric}")
    if metric == "graph" and not code.symmetric_zero_diag:
        raise PreconditionError("无向图距离只适用于对称零对角的码")
    return metric


def code_distance(
    code: GraphCode,
    budget: int = DEFAULT_DISTANCE_BUDGET,
    *,
    mode: str = "exact",
    metric: str | None = None,
    samples: int = 256,
    seed: int | None = None,
    workers: int = 1,
    mis_vertex_limit: int = DEFAULT_MIS_VERTEX_LIMIT,
    soft_cap_seconds: float | None = DEFAULT_SOFT_CAP_SECONDS,
    node_limit: int = DEFAULT_SAMPLE_NODE_LIMIT,
) -> DistanceReport:
    """
    图码最小距离

    exact 模式穷举全部 |scalars|^dim - 1 个非零码字（|scalars| > 2 时按射影等价类
    只取首项为 1 的代表），见证为达到最小值的最小码字下标，与 ``workers`` 无关。
    sampled 模式随机抽取 ``samples`` 个非零码字，每个码字的求解带节点上限，结果只作上界。
    """
    if code.dim == 0:
        raise PreconditionError("零维码没有非零码字")
    metric = _resolve_metric(code, metric)
    total = code.scalars.order**code.dim

    if mode == "exact":
        if total > budget:
            raise BudgetExceededError(f"码字数 {total} 超出精确枚举预算 {budget}")
        if metric == "graph" and code.n > mis_vertex_limit:
            raise BudgetExceededError(
                f"n={code.n} 超出精确最大独立集的顶点上限 {mis_vertex_limit}"
            )
        tasks = [
            ScanTask(code.ctx, code.scalars, np.asarray(code.basis), metric, s, e, soft_cap_seconds)
            for s, e in (_split_ranges(total, workers) if workers > 1 else [(1, total)])
        ]
        logger.debug(
            f"[码距] 精确枚举 {total - 1} 个非零码字（{metric}，{len(tasks)} 段，{workers} 进程）"
        )
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(_scan_range, tasks))
        else:
            outcomes = [_scan_range(task) for task in tasks]
        winners = [o for o in outcomes if o.value is not None]
        if not winners:
            raise InternalError("精确枚举没有得到任何码字距离")
        best = min(winners, key=lambda o: (o.value, o.index))
        witness = code.word_at(best.index).entries
        return DistanceReport(
            mode="exact",
            metric=metric,
            value=best.value,
            lower=best.value,
            upper=best.value,
            witness=witness,
            witness_index=best.index,
            rows=mask_to_tuple(best.rows),
            cols=mask_to_tuple(best.cols),
            enumerated=sum(o.enumerated for o in outcomes),
        )

    if mode == "sampled":
        if samples < 1:
            raise PreconditionError("采样模式至少需要 1 个样本")
        return _sampled_distance(code, metric, samples, seed or 0, node_limit, soft_cap_seconds)

    raise PreconditionError(f"未知的距离模式: {mode}")


def _sampled_distance(
    code: GraphCode,
    metric: str,
    samples: int,
    seed: int,
    node_limit: int,
    soft_cap_seconds: float | None,
) -> DistanceReport:
    rng = np.random.Generator(np.random.Philox(seed))
    base = code.scalars.order
    best: WordDistance | None = None
    best_index: int | None = None
    truncated = 0
    for _ in range(samples):
        coeffs = rng.integers(0, base, size=code.dim, dtype=np.int64)
        while not coeffs.any():
            coeffs = rng.integers(0, base, size=code.dim, dtype=np.int64)
        word = code.codeword(coeffs)
        masks = word.support_masks()
        if metric == "directed":
            found = _directed_word_distance(masks, node_limit=node_limit)
        else:
            found = _graph_word_distance(
                masks, code.n, node_limit=node_limit, soft_cap_seconds=soft_cap_seconds
            )
        truncated += not found.exact
        index = message_index(coeffs, base)
        if best is None or (found.value, index) < (best.value, best_index):
            best, best_index = found, index
    notes = []
    if truncated:
        notes.append(f"{truncated} 个样本触及节点上限，只取得覆盖上界")
    return DistanceReport(
        mode="sampled",
        metric=metric,
        upper=best.value,
        witness_index=best_index,
        rows=mask_to_tuple(best.rows),
        cols=mask_to_tuple(best.cols),
        samples=samples,
        seed=seed,
        notes=notes,
    )


def composite_distance_report(
    code: GraphCode,
    lower: int | None,
    *,
    samples: int = 0,
    seed: int | None = None,
    notes: list[str] | None = None,
    node_limit: int = DEFAULT_SAMPLE_NODE_LIMIT,
) -> DistanceReport:
    """由分量证书组合的下界 + 可选的采样上界"""
    report = DistanceReport(
        mode="composed",
        metric=code.metric,
        lower=lower,
        seed=seed or 0,
        notes=list(notes or []),
    )
    if samples > 0 and code.dim:
        sampled = code_distance(
            code, mode="sampled", samples=samples, seed=seed, node_limit=node_limit
        )
        report.upper = sampled.upper
        report.samples = samples
        report.witness_index = sampled.witness_index
        report.notes.extend(sampled.notes)
        if lower is not None and sampled.upper is not None and sampled.upper < lower:
            raise InternalError(
                f"采样上界 {sampled.upper} 低于组合下界 {lower}，分量证书不成立"
            )
    return report


# ----------------------------------------------------------------------
# Singleton 界
# ----------------------------------------------------------------------


@dataclass
class SingletonCheck:
    distance: int
    dim_bits: int
    bound_bits: float
    passed: bool

    @property
    def slack(self) -> float:
        return self.bound_bits - self.dim_bits


def singleton_check(
    code: GraphCode, report: DistanceReport, *, enforce: bool = True
) -> SingletonCheck:
    """
    dim_{F_2}(C) ≤ C(n - d + 1, 2) · log_2 q（非对称有向码用 (n - d + 1)^2）

    只接受 exact/composed 报告：composed 的下界不大于真实距离，检查仍然成立。
    """
    d = report.certified_lower
    if d is None:
        raise PreconditionError("Singleton 检查需要精确或组合证书，采样上界不可用")
    remaining = max(code.n - d + 1, 0)
    cells = (
        remaining * remaining
        if code.directed and not code.symmetric_zero_diag
        else math.comb(remaining, 2)
    )
    bound = cells * code.ctx.t
    check = SingletonCheck(d, code.bits, float(bound), code.bits <= bound)
    if not check.passed:
        logger.error(
            f"[码距] {code.family} 违反 Singleton 界: dim={code.bits} > {bound}（d={d}）"
        )
        if enforce:
            raise InternalError(f"{code.family} 违反 Singleton 界：证书有误")
    return check
