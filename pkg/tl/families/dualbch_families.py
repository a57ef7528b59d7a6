"""迹多项式构造：warmup / dualbch"""

from __future__ import annotations

from ..dualbch import dualbch_basis
from ..fields import get_field
from ..run_config import RunConfig
from .base import ConstructionResult


class WarmupFamily:
    """d = 3 的对偶 BCH 图码，码字为 M_α(x, y) = Tr(α (x + y)^3)"""

    name = "warmup"
    required = ("t",)

    def build(self, *, config: RunConfig) -> ConstructionResult:
        code = dualbch_basis(get_field(config.param_int("t")), 3)
        code.family = self.name
        return ConstructionResult(self.name, code)


class DualBchFamily:
    name = "dualbch"
    required = ("t", "d")

    def build(self, *, config: RunConfig) -> ConstructionResult:
        code = dualbch_basis(get_field(config.param_int("t")), config.param_int("d"))
        return ConstructionResult(self.name, code)
