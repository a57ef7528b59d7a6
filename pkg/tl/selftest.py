"""
快速自检

每项检查都是秒级的小实例，覆盖域运算、各距离求解器与几个构造族的已知参数。
独立数与团数用 networkx 的最大团算法交叉校验。
"""

from __future__ import annotations

from collections.abc import Callable
from fractions import Fraction

import networkx as nx
import numpy as np

from .code_io import to_networkx
from .dualbch import dualbch_basis, weil_check
from .fields import IRREDUCIBLE_MODULI, get_field, is_irreducible
from .graph_metric import (
    GraphWord,
    MatrixWord,
    code_distance,
    directed_graph_distance,
    graph_distance,
    independence_number,
)
from .hamming_codes import hamming_min_distance, parity_check_code, rs_generate
from .random_codes import random_dimension
from .stczd import stczd_basis

SelfCheck = tuple[str, Callable[[], tuple[bool, str]]]


def _check_fields() -> tuple[bool, str]:
    if not all(is_irreducible(m) for m in IRREDUCIBLE_MODULI.values()):
        return False, "约化多项式表含有可约项"
    ctx = get_field(4)
    ok = all(ctx.mul(a, ctx.inv(a)) == 1 for a in range(1, ctx.order))
    return ok, "" if ok else "F_16 存在无逆元素"


def _check_rs_distance() -> tuple[bool, str]:
    report = hamming_min_distance(rs_generate(7, 3, get_field(3)))
    return report.value == 5, f"RS(7,3) d={report.value}"


def _check_stczd_even_weight() -> tuple[bool, str]:
    code = stczd_basis(parity_check_code(3))
    report = code_distance(code)
    return code.dim == 1 and report.value == 2, f"dim={code.dim}, d={report.value}"


def _check_independence_oracle() -> tuple[bool, str]:
    rng = np.random.Generator(np.random.Philox(7))
    for _ in range(5):
        upper = np.triu(rng.integers(0, 2, size=(9, 9), dtype=np.int64), 1)
        word = GraphWord(get_field(1), upper + upper.T)
        _, expected = nx.max_weight_clique(nx.complement(to_networkx(word)), weight=None)
        if independence_number(word) != expected:
            return False, f"α={independence_number(word)}，networkx 给出 {expected}"
    return True, ""


def _check_trivial_distances() -> tuple[bool, str]:
    k3 = GraphWord.complete(3)
    empty = GraphWord.empty(3)
    undirected = graph_distance(k3, empty)
    binary = get_field(1)
    identity = MatrixWord(binary, np.eye(3, dtype=np.int64))
    zero = MatrixWord(binary, np.zeros((3, 3), dtype=np.int64))
    directed = directed_graph_distance(identity, zero)
    return (undirected, directed) == (2, 2), f"图距离 {undirected}，有向距离 {directed}"


def _check_warmup() -> tuple[bool, str]:
    code = dualbch_basis(get_field(2), 3)
    edges = to_networkx(code.word_at(1)).number_of_edges() if code.dim == 1 else -1
    return edges == 6, f"dim={code.dim}, 边数 {edges}"


def _check_random_dimension() -> tuple[bool, str]:
    k, m = random_dimension(14, Fraction(1, 2))
    return (k, m) == (5, 7), f"k={k}, m={m}"


def _check_weil_small() -> tuple[bool, str]:
    row = weil_check(get_field(3), 3)
    return row.passed, f"max|S|={row.max_abs_sum}, 界 {row.bound:.2f}"


SELF_CHECKS: tuple[SelfCheck, ...] = (
    ("fields", _check_fields),
    ("rs_distance", _check_rs_distance),
    ("stczd_even_weight", _check_stczd_even_weight),
    ("independence_oracle", _check_independence_oracle),
    ("trivial_distances", _check_trivial_distances),
    ("warmup_k4", _check_warmup),
    ("random_dimension", _check_random_dimension),
    ("weil_t3", _check_weil_small),
)


def run_selftest() -> list[tuple[str, bool, str]]:
    """逐项运行自检；单项抛出的异常记为失败而不中断后续检查"""
    results = []
    for name, check in SELF_CHECKS:
        try:
            ok, detail = check()
        except Exception as e:
            ok, detail = False, f"{type(e).__name__}: {e}"
        results.append((name, ok, detail))
    return results
