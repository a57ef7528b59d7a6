"""
随机线性图码

- ``sample_random_graph_code``：δ ∈ (0, 1) 且维数为正时达到 Gilbert-Varshamov 型参数的随机图码，
  用精确码距确认后才返回；
- ``search_opt_directed``：随机搜索有向图码，作为级联构造的内码。
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import bisect

from .code_types import BudgetExceededError, PreconditionError
from .fields import get_field
from .gf_linalg import rank
from .graph_metric import DEFAULT_DISTANCE_BUDGET, GraphCode, code_distance
from .log import logger

DEFAULT_RETRIES = 64


def binary_entropy(x: float | Fraction) -> float:
    """二元熵 h_2(x)，约定 h_2(0) = h_2(1) = 0"""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise PreconditionError(f"二元熵的自变量必须在 [0, 1] 内，收到 {x}")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def inverse_binary_entropy(y: float | Fraction) -> float:
    """h_2 在 [0, 1/2] 上的反函数"""
    y = float(y)
    if not 0.0 <= y <= 1.0:
        raise PreconditionError(f"反熵的自变量必须在 [0, 1] 内，收到 {y}")
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 0.5
    return bisect(lambda x: binary_entropy(x) - y, 0.0, 0.5, xtol=1e-14)


@dataclass
class AttemptRecord:
    attempt: int
    rank: int
    distance: int | None
    success: bool
    reason: str = ""


def random_dimension(n: int, delta: Fraction) -> tuple[int, int]:
    """
    返回 (k, m)：m = ⌊n(1-δ)⌋，k = ⌊C(m, 2) - h_2(δ)·n - 2⌋
    """
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise PreconditionError(f"δ 必须在 (0, 1) 内，收到 {delta}")
    if n < 2:
        raise PreconditionError(f"顶点数 n={n} 过小")
    exact = n * (1 - delta)
    m = math.floor(exact)
    if exact != m:
        logger.info(f"[随机图码] n(1-δ)={float(exact):.4f} 非整数，取下整 {m}")
    k = math.floor(math.comb(m, 2) - binary_entropy(delta) * n - 2)
    if k <= 0:
        raise PreconditionError(f"n={n}, δ={delta} 时随机图码维数 {k} ≤ 0")
    return k, m


def _random_graphs(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    upper = np.triu(rng.integers(0, 2, size=(count, n, n), dtype=np.int64), 1)
    return upper + upper.transpose(0, 2, 1)


def sample_random_graph_code(
    n: int,
    delta: Fraction,
    seed: int,
    *,
    retries: int = DEFAULT_RETRIES,
    budget: int = DEFAULT_DISTANCE_BUDGET,
    workers: int = 1,
) -> GraphCode:
    """
    采样 k 个独立均匀随机图并张成线性码，直到精确距离严格大于 δn

    Raises:
        BudgetExceededError: 重试次数用尽，``details["attempts"]`` 为每次尝试记录
    """
    delta = Fraction(delta)
    k, m = random_dimension(n, delta)
    binary = get_field(1)
    rng = np.random.Generator(np.random.Philox(seed))
    attempts: list[AttemptRecord] = []
    for attempt in range(1, retries + 1):
        graphs = _random_graphs(rng, k, n)
        r = rank(binary, graphs.reshape(k, -1))
        if r < k:
            attempts.append(AttemptRecord(attempt, r, None, False, "rank_deficient"))
            logger.debug(f"[随机图码] 第 {attempt} 次尝试秩不足: {r} < {k}")
            continue
        code = GraphCode(
            binary,
            graphs,
            family="random",
            params={"n": n, "delta": delta, "seed": seed},
            claimed_relative_distance=delta,
        )
        report = code_distance(code, budget, workers=workers)
        success = report.value > delta * n
        attempts.append(AttemptRecord(attempt, r, report.value, success))
        if success:
            code.certificate = report
            code.certified_lower = report.value
            code.metadata.update(
                {"k": k, "m": m, "attempts": [asdict(a) for a in attempts]}
            )
            logger.info(
                f"[随机图码] n={n}, δ={delta}: 第 {attempt} 次尝试成功，k={k}, d={report.value}"
            )
            return code
        logger.debug(f"[随机图码] 第 {attempt} 次尝试距离 {report.value} ≤ δn")
    raise BudgetExceededError(
        f"随机图码在 {retries} 次尝试内未达到距离 > {float(delta * n):.2f}",
        details={"attempts": [asdict(a) for a in attempts]},
    )


def search_opt_directed(
    eps: Fraction,
    n: int,
    k: int,
    seed: int,
    budget: int = DEFAULT_RETRIES,
    *,
    distance_budget: int = DEFAULT_DISTANCE_BUDGET,
    workers: int = 1,
) -> GraphCode:
    """
    随机搜索维数 k、有向距离 ≥ ⌈(1-ε)n⌉ 的 F_2 线性有向图码

    ``budget`` 是尝试次数上限；每次尝试都做精确的有向距离枚举。
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise PreconditionError(f"ε 必须在 (0, 1) 内，收到 {eps}")
    if k < 1:
        raise PreconditionError("内码维数 k 必须为正")
    if not k < eps * eps * n * n - 2 * n:
        raise PreconditionError(
            f"参数不满足 k < ε²n² - 2n：k={k}, ε={eps}, n={n}"
        )
    target = math.ceil((1 - eps) * n)
    binary = get_field(1)
    rng = np.random.Generator(np.random.Philox(seed))
    attempts: list[AttemptRecord] = []
    for attempt in range(1, budget + 1):
        matrices = rng.integers(0, 2, size=(k, n, n), dtype=np.int64)
        r = rank(binary, matrices.reshape(k, -1))
        if r < k:
            attempts.append(AttemptRecord(attempt, r, None, False, "rank_deficient"))
            continue
        code = GraphCode(
            binary,
            matrices,
            directed=True,
            symmetric_zero_diag=False,
            family="opt",
            params={"eps": eps, "n": n, "k": k, "seed": seed},
            claimed_relative_distance=1 - eps,
        )
        report = code_distance(code, distance_budget, workers=workers)
        success = report.value >= target
        attempts.append(AttemptRecord(attempt, r, report.value, success))
        if success:
            code.certificate = report
            code.certified_lower = report.value
            code.metadata.update({"target": target, "attempts": [asdict(a) for a in attempts]})
            logger.info(
                f"[有向内码] Opt(ε={eps}, n={n}, k={k}) 第 {attempt} 次尝试成功，d={report.value}"
            )
            return code
    raise BudgetExceededError(
        f"有向内码在 {budget} 次尝试内未达到距离 ≥ {target}",
        details={"attempts": [asdict(a) for a in attempts]},
    )
