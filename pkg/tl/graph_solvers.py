"""
位集分支定界求解器

- ``max_clique``：贪心着色排序的最大团搜索（最大独立集 = 补图最大团）
- ``min_directed_cover``：有向图距离所需的行列最小覆盖

图以 Python 整数位掩码的邻接表表示，第 v 个掩码的第 u 位表示边 (v, u)。
"""

from __future__ import annotations

import sys
import time
from collections.abc import Sequence
from dataclasses import dataclass

from .log import logger
from .tl_utils import iter_bits, popcount

_TIME_CHECK_INTERVAL = 1024


@dataclass
class CliqueResult:
    size: int
    members: int
    exact: bool
    nodes: int
    improved: bool = True


@dataclass
class CoverResult:
    size: int
    rows: int  # S
    cols: int  # T
    exact: bool
    nodes: int
    improved: bool = True


def complement_adjacency(adj: Sequence[int], n: int) -> list[int]:
    full = (1 << n) - 1
    return [full & ~adj[v] & ~(1 << v) for v in range(n)]


def _color_sort(adj: Sequence[int], candidates: int) -> tuple[list[int], list[int]]:
    """贪心着色：返回按颜色升序排列的顶点及其颜色上界"""
    order: list[int] = []
    colors: list[int] = []
    uncolored = candidates
    color = 0
    while uncolored:
        color += 1
        available = uncolored
        while available:
            low = available & -available
            v = low.bit_length() - 1
            available &= ~adj[v] & ~low
            uncolored &= ~low
            order.append(v)
            colors.append(color)
    return order, colors


class _CliqueSearch:
    def __init__(
        self,
        adj: Sequence[int],
        lower: int,
        node_limit: int | None,
        soft_cap_seconds: float | None,
    ):
        self.adj = adj
        self.best_size = lower
        self.best_members = 0
        self.improved = False
        self.node_limit = node_limit
        self.soft_cap_seconds = soft_cap_seconds
        self.nodes = 0
        self.truncated = False
        self._started = time.monotonic()
        self._warned = False

    def _tick(self) -> bool:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            self.truncated = True
            return False
        if (
            self.soft_cap_seconds is not None
            and not self._warned
            and self.nodes % _TIME_CHECK_INTERVAL == 0
            and time.monotonic() - self._started > self.soft_cap_seconds
        ):
            self._warned = True
            logger.warning(
                f"[图求解] 最大团搜索已超过 {self.soft_cap_seconds:.0f}s 软上限，继续精确搜索"
            )
        return True

    def expand(self, members: int, size: int, candidates: int) -> None:
        if not self._tick():
            return
        order, colors = _color_sort(self.adj, candidates)
        for idx in range(len(order) - 1, -1, -1):
            if self.truncated or size + colors[idx] <= self.best_size:
                return
            v = order[idx]
            bit = 1 << v
            rest = candidates & self.adj[v]
            if rest:
                self.expand(members | bit, size + 1, rest)
            elif size + 1 > self.best_size:
                self.best_size = size + 1
                self.best_members = members | bit
                self.improved = True
            candidates &= ~bit


def max_clique(
    adj: Sequence[int],
    n: int,
    *,
    lower: int = 0,
    node_limit: int | None = None,
    soft_cap_seconds: float | None = None,
) -> CliqueResult:
    """
    最大团

    Args:
        adj: 邻接位掩码
        n: 顶点数
        lower: 已知下界，只搜索严格更大的团（找不到时 ``improved`` 为 False）
        node_limit: 搜索节点上限；触顶时返回当前最好解并标记 ``exact=False``
        soft_cap_seconds: 软时间上限，超过只记一次警告
    """
    search = _CliqueSearch(adj, lower, node_limit, soft_cap_seconds)
    if n:
        search.expand(0, 0, (1 << n) - 1)
    return CliqueResult(
        size=search.best_size,
        members=search.best_members,
        exact=not search.truncated,
        nodes=search.nodes,
        improved=search.improved,
    )


def max_independent_set(
    adj: Sequence[int],
    n: int,
    *,
    lower: int = 0,
    node_limit: int | None = None,
    soft_cap_seconds: float | None = None,
) -> CliqueResult:
    return max_clique(
        complement_adjacency(adj, n),
        n,
        lower=lower,
        node_limit=node_limit,
        soft_cap_seconds=soft_cap_seconds,
    )


class _CoverSearch:
    def __init__(self, rows: list[tuple[int, int]], node_limit: int | None):
        self.rows = rows
        self.node_limit = node_limit
        self.nodes = 0
        self.truncated = False
        self.best = 0
        self.best_rows = 0
        self.best_cols = 0
        self.improved = False

    def search(
        self, pos: int, s_mask: int, s_size: int, t_mask: int, t_size: int
    ) -> None:
        if self.truncated:
            return
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            self.truncated = True
            return
        if s_size >= self.best or t_size >= self.best:
            return
        rows = self.rows
        while pos < len(rows) and not rows[pos][1] & ~t_mask:
            pos += 1
        if pos == len(rows):
            self.best = max(s_size, t_size)
            self.best_rows = s_mask
            self.best_cols = t_mask
            self.improved = True
            return
        index, mask = rows[pos]
        # 分支一：该行进入 S
        self.search(pos + 1, s_mask | (1 << index), s_size + 1, t_mask, t_size)
        # 分支二：该行不进 S，则其未覆盖的列必须全部进入 T
        uncovered = mask & ~t_mask
        self.search(pos + 1, s_mask, s_size, t_mask | uncovered, t_size + popcount(uncovered))


def min_directed_cover(
    masks: Sequence[int],
    *,
    upper: int | None = None,
    node_limit: int | None = None,
) -> CoverResult:
    """
    最小 max(|S|, |T|)，使每个非零元 (i, j) 满足 i ∈ S 或 j ∈ T

    Args:
        masks: 每行非零列的位掩码
        upper: 已知上界，只搜索严格更小的覆盖（找不到时 ``improved`` 为 False）
        node_limit: 节点上限；触顶时返回当前最好解（仍是合法覆盖，即上界）
    """
    rows = [(i, m) for i, m in enumerate(masks) if m]
    all_cols = 0
    all_rows = 0
    for i, m in rows:
        all_cols |= m
        all_rows |= 1 << i
    search = _CoverSearch(rows, node_limit)
    if len(rows) <= popcount(all_cols):
        search.best, search.best_rows, search.best_cols = len(rows), all_rows, 0
    else:
        search.best, search.best_rows, search.best_cols = popcount(all_cols), 0, all_cols
    search.improved = True
    if upper is not None and upper <= search.best:
        search.best, search.best_rows, search.best_cols = upper, 0, 0
        search.improved = False
    if rows:
        # 递归深度不超过 |S| + |T| < 2 * best
        depth = 2 * search.best + 64
        if sys.getrecursionlimit() < depth:
            sys.setrecursionlimit(depth)
        search.search(0, 0, 0, 0, 0)
    return CoverResult(
        size=search.best,
        rows=search.best_rows,
        cols=search.best_cols,
        exact=not search.truncated,
        nodes=search.nodes,
        improved=search.improved,
    )


def cover_is_valid(masks: Sequence[int], rows: int, cols: int) -> bool:
    """检查 (S, T) 是否覆盖全部非零元"""
    return all(not m & ~cols for i, m in enumerate(masks) if not rows >> i & 1)


def vertex_cover_from_independent(n: int, independent: int) -> tuple[int, ...]:
    full = (1 << n) - 1
    return tuple(iter_bits(full & ~independent))
