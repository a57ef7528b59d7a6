"""随机构造：random / opt"""

from __future__ import annotations

from ..random_codes import sample_random_graph_code, search_opt_directed
from ..run_config import RunConfig
from .base import ConstructionResult


class RandomGraphFamily:
    name = "random"
    required = ("n", "delta")

    def build(self, *, config: RunConfig) -> ConstructionResult:
        code = sample_random_graph_code(
            config.param_int("n"),
            config.param_fraction("delta"),
            config.seed,
            retries=config.retries,
            budget=config.budget,
            workers=config.threads,
        )
        return ConstructionResult(self.name, code)


class OptDirectedFamily:
    name = "opt"
    required = ("eps", "n", "k")

    def build(self, *, config: RunConfig) -> ConstructionResult:
        code = search_opt_directed(
            config.param_fraction("eps"),
            config.param_int("n"),
            config.param_int("k"),
            config.seed,
            config.retries,
            distance_budget=config.budget,
            workers=config.threads,
        )
        return ConstructionResult(self.name, code)
