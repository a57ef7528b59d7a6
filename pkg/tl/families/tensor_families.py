"""RS 码及其张量类构造：rs / stczd / stczd_rs / tensor"""

from __future__ import annotations

from ..code_types import UsageError
from ..fields import get_field
from ..hamming_codes import (
    LinearCode,
    parity_check_code,
    repetition_code,
    rs_generate,
)
from ..run_config import RunConfig
from ..stczd import stczd_basis, stczd_rs_explicit, tensor_code
from .base import ConstructionResult


def _base_code(config: RunConfig) -> LinearCode:
    base = config.param_str("base", "rs")
    n = config.param_int("n")
    if base == "rs":
        return rs_generate(n, config.param_int("k"), get_field(config.param_int("t")))
    if base in ("parity", "even_weight"):
        return parity_check_code(n)
    if base == "repetition":
        return repetition_code(n)
    raise UsageError(f"未知的基础码: {base}")


class ReedSolomonFamily:
    name = "rs"
    required = ("n", "k", "t")

    def build(self, *, config: RunConfig) -> ConstructionResult:
        code = rs_generate(
            config.param_int("n"), config.param_int("k"), get_field(config.param_int("t"))
        )
        return ConstructionResult(self.name, code)


class StczdFamily:
    name = "stczd"
    required = ("n",)

    def build(self, *, config: RunConfig) -> ConstructionResult:
        base = _base_code(config)
        code = stczd_basis(base)
        code.params.update({"base": config.param_str("base", "rs")})
        return ConstructionResult(self.name, code, [f"基础码 {base.name}"])


class ExplicitStczdFamily:
    name = "stczd_rs"
    required = ("n", "k", "t")

    def build(self, *, config: RunConfig) -> ConstructionResult:
        code = stczd_rs_explicit(
            config.param_int("n"), config.param_int("k"), get_field(config.param_int("t"))
        )
        return ConstructionResult(self.name, code)


class TensorFamily:
    name = "tensor"
    required = ("n",)

    def build(self, *, config: RunConfig) -> ConstructionResult:
        base = _base_code(config)
        return ConstructionResult(self.name, tensor_code(base), [f"基础码 {base.name}"])
