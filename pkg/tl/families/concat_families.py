"""级联构造：concat_rs / double / triple / justesen"""

from __future__ import annotations

from ..concatenation import concat_rs, double_concat, justesen_like, triple_concat
from ..run_config import RunConfig
from .base import ConstructionResult


class ConcatRsFamily:
    name = "concat_rs"
    required = ("eps", "n", "k", "N", "rho")

    def build(self, *, config: RunConfig) -> ConstructionResult:
        code = concat_rs(
            config.param_fraction("eps"),
            config.param_int("n"),
            config.param_int("k"),
            config.param_int("N"),
            config.param_fraction("rho"),
            config.seed,
            attempts=config.retries,
            samples=config.composite_samples,
            workers=config.threads,
        )
        return ConstructionResult(self.name, code)


class DoubleConcatFamily:
    name = "double"
    required = ("rho", "N")

    def build(self, *, config: RunConfig) -> ConstructionResult:
        code = double_concat(
            config.param_fraction("rho"),
            config.param_int("N"),
            config.seed,
            attempts=config.retries,
            samples=config.composite_samples,
        )
        return ConstructionResult(self.name, code)


class TripleConcatFamily:
    name = "triple"
    required = ("rho", "N")

    def build(self, *, config: RunConfig) -> ConstructionResult:
        code = triple_concat(
            config.param_fraction("rho"),
            config.param_int("N"),
            config.seed,
            attempts=config.retries,
            samples=config.composite_samples,
        )
        return ConstructionResult(self.name, code)


class JustesenFamily:
    name = "justesen"
    required = ("eps", "k", "rho")

    def build(self, *, config: RunConfig) -> ConstructionResult:
        code = justesen_like(
            config.param_fraction("eps"),
            config.param_int("k"),
            config.param_fraction("rho"),
            samples=config.composite_samples,
            seed=config.seed,
        )
        return ConstructionResult(self.name, code)
