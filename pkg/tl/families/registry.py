"""构造族注册表。

集中管理 `family` -> 构造族实现 的映射关系。
"""

from __future__ import annotations

from typing import Final

from ..code_types import UsageError
from ..family_metadata import normalize_family
from .base import FamilyBuilder
from .concat_families import (
    ConcatRsFamily,
    DoubleConcatFamily,
    JustesenFamily,
    TripleConcatFamily,
)
from .dualbch_families import DualBchFamily, WarmupFamily
from .random_families import OptDirectedFamily, RandomGraphFamily
from .tensor_families import (
    ExplicitStczdFamily,
    ReedSolomonFamily,
    StczdFamily,
    TensorFamily,
)

# canonical family -> builder 映射表（与 family_metadata.FAMILY_TYPES 顺序一致）
_FAMILIES: Final[dict[str, FamilyBuilder]] = {
    "rs": ReedSolomonFamily(),
    "stczd": StczdFamily(),
    "stczd_rs": ExplicitStczdFamily(),
    "tensor": TensorFamily(),
    "random": RandomGraphFamily(),
    "opt": OptDirectedFamily(),
    "concat_rs": ConcatRsFamily(),
    "double": DoubleConcatFamily(),
    "triple": TripleConcatFamily(),
    "justesen": JustesenFamily(),
    "warmup": WarmupFamily(),
    "dualbch": DualBchFamily(),
}


def get_family_builder(family: str | None) -> FamilyBuilder:
    """根据 canonical ``family`` 返回对应的构造族实现；未知值抛出用法错误。"""
    builder = _FAMILIES.get(normalize_family(family))
    if builder is None:
        raise UsageError(f"未知构造族: {family!r}")
    return builder
