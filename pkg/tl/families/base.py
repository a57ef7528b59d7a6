"""构造族接口定义。

用于约束各构造族实现的输入/输出形态。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

from ..graph_metric import GraphCode
from ..hamming_codes import LinearCode
from ..run_config import RunConfig


@dataclass
class ConstructionResult:
    family: str
    code: GraphCode | LinearCode
    notes: list[str] = field(default_factory=list)

    @property
    def graph_code(self) -> GraphCode | None:
        return self.code if isinstance(self.code, GraphCode) else None


class FamilyBuilder(Protocol):
    """构造族策略接口。

    ``required`` 列出必需参数名（用于帮助信息和表格校验），缺失时 ``build`` 抛出用法错误。
    """

    name: str
    required: tuple[str, ...]

    def build(self, *, config: RunConfig) -> ConstructionResult: ...
