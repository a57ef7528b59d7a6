"""共享类型。

供各构造模块与命令行共用的距离报告/异常类型。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

# 退出码约定：0 成功，2 用法，3 前置条件，4 预算，5 内部错误
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4
EXIT_INTERNAL = 5


class GraphCodeError(Exception):
    """图码错误基类"""

    category: str = "internal"
    exit_code: int = EXIT_INTERNAL

    def __init__(
        self,
        message: str,
        *,
        category: str | None = None,
        exit_code: int | None = None,
        details: dict[str, Any] | None = None,
    ):
        super().__init__(message)
        self.message = message
        if category is not None:
            self.category = category
        if exit_code is not None:
            self.exit_code = exit_code
        # 附加上下文，例如随机采样的尝试记录
        self.details = details or {}


class UsageError(GraphCodeError):
    """命令行参数缺失或格式错误"""

    category = "usage"
    exit_code = EXIT_USAGE


class PreconditionError(GraphCodeError):
    """参数违反构造/算子的前置条件"""

    category = "precondition"
    exit_code = EXIT_PRECONDITION


class FieldMismatchError(PreconditionError):
    """操作数来自不同的有限域上下文或形状不一致"""

    category = "field_mismatch"


class RankDeficientError(PreconditionError):
    """生成矩阵/基不满秩"""

    category = "rank_deficient"


class BudgetExceededError(GraphCodeError):
    """精确枚举或重试次数超出预算"""

    category = "budget"
    exit_code = EXIT_BUDGET


class InternalError(GraphCodeError):
    """不应出现的内部状态（例如定理被违反）"""

    category = "internal"
    exit_code = EXIT_INTERNAL


# 可请求的距离模式；composed 只由级联证书产生
DISTANCE_MODES = ("exact", "sampled")
REPORT_MODES = (*DISTANCE_MODES, "composed")
DISTANCE_METRICS = ("hamming", "graph", "directed")


@dataclass
class DistanceReport:
    """码距报告。

    - ``exact``：穷举全部非零码字，``value`` 同时是已证明的上界与下界；
    - ``sampled``：只给出随机码字的上界，永不声称下界；
    - ``composed``：下界来自各分量的精确证书与级联引理，上界来自采样。
    """

    mode: str
    metric: str
    value: int | None = None
    lower: int | None = None
    upper: int | None = None
    witness: np.ndarray | None = None
    witness_index: int | None = None
    rows: tuple[int, ...] = ()  # 覆盖集 S
    cols: tuple[int, ...] = ()  # 覆盖集 T
    samples: int = 0
    seed: int | None = None
    enumerated: int = 0
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.mode not in REPORT_MODES:
            raise InternalError(f"未知的报告模式: {self.mode}")
        if self.metric not in DISTANCE_METRICS:
            raise InternalError(f"未知的距离度量: {self.metric}")

    @property
    def certified_lower(self) -> int | None:
        if self.mode == "exact":
            return self.value
        if self.mode == "composed":
            return self.lower
        return None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "mode": self.mode,
            "metric": self.metric,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "witness_index": self.witness_index,
            "S": list(self.rows),
            "T": list(self.cols),
            "samples": self.samples,
            "seed": self.seed,
            "enumerated": self.enumerated,
            "notes": list(self.notes),
        }
        if self.witness is not None:
            data["witness"] = [
                [format(int(v), "x") for v in row] for row in np.atleast_2d(self.witness)
            ]
        return data
