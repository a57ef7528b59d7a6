"""
文本格式读写

- 码字矩阵：首行 ``n=<n> q=<十六进制约化多项式>``，随后每行 n 个十六进制元素，单空格分隔；
- 基文件：若干码字矩阵块，块间空一行；
- 生成矩阵：首行 ``q=<约化多项式> n=<n> k=<k>``，随后 k 行；
- 描述文件：键排序、缩进 2 的 JSON；
- 边表：二元图的 ``u v`` 行（networkx 写出）。

同样的输入总是得到逐字节相同的输出。
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Any

import networkx as nx
import numpy as np

from .code_types import DistanceReport, PreconditionError, UsageError
from .fields import FieldContext, context_from_modulus, format_context, parse_context
from .graph_metric import GraphCode, MatrixWord
from .hamming_codes import LinearCode
from .log import logger
from .tl_utils import canonical_json, fraction_to_str

DESCRIPTOR_VERSION = 1


def _format_rows(entries: np.ndarray) -> list[str]:
    return [" ".join(format(int(v), "x") for v in row) for row in entries]


def _parse_header(line: str, keys: tuple[str, ...]) -> dict[str, str]:
    fields: dict[str, str] = {}
    for token in line.split():
        key, sep, value = token.partition("=")
        if not sep:
            raise UsageError(f"无法解析首行: {line!r}")
        fields[key] = value
    missing = [k for k in keys if k not in fields]
    if missing:
        raise UsageError(f"首行缺少字段 {missing}: {line!r}")
    return fields


def _parse_rows(lines: list[str], rows: int, cols: int, ctx: FieldContext) -> np.ndarray:
    if len(lines) != rows:
        raise UsageError(f"期望 {rows} 行，实际 {len(lines)} 行")
    out = np.zeros((rows, cols), dtype=np.int64)
    for i, line in enumerate(lines):
        tokens = line.split(" ")
        if len(tokens) != cols:
            raise UsageError(f"第 {i} 行期望 {cols} 个元素，实际 {len(tokens)} 个")
        for j, token in enumerate(tokens):
            try:
                out[i, j] = ctx.check(int(token, 16))
            except ValueError as e:
                raise UsageError(f"无法解析元素 {token!r}") from e
    return out


# ----------------------------------------------------------------------
# 码字矩阵
# ----------------------------------------------------------------------


def format_graph_word(word: MatrixWord) -> str:
    header = f"n={word.n} q={word.ctx.modulus:x}"
    return "\n".join([header, *_format_rows(word.entries)]) + "\n"


def parse_matrix_word(text: str) -> MatrixWord:
    lines = [line.rstrip("\r") for line in text.strip("\n").split("\n")]
    if not lines or not lines[0]:
        raise UsageError("码字文本为空")
    header = _parse_header(lines[0], ("n", "q"))
    try:
        n = int(header["n"])
        ctx = context_from_modulus(int(header["q"], 16))
    except ValueError as e:
        raise UsageError(f"无法解析首行: {lines[0]!r}") from e
    word = MatrixWord(ctx, _parse_rows(lines[1:], n, n, ctx))
    return word.as_graph() if word.is_graph() else word


def write_graph_word(word: MatrixWord, path: str | os.PathLike) -> str:
    Path(path).write_text(format_graph_word(word), encoding="utf-8")
    return str(path)


# ----------------------------------------------------------------------
# 基文件
# ----------------------------------------------------------------------


def format_basis(code: GraphCode) -> str:
    blocks = [format_graph_word(MatrixWord(code.ctx, word)) for word in code.basis]
    return "\n".join(blocks)


def parse_basis(text: str) -> tuple[FieldContext | None, np.ndarray]:
    """返回 (域上下文, 形状 (dim, n, n) 的基)；空文件得到 (None, 空数组)"""
    chunks = [c for c in text.replace("\r\n", "\n").split("\n\n") if c.strip()]
    if not chunks:
        return None, np.zeros((0, 0, 0), dtype=np.int64)
    words = [parse_matrix_word(chunk) for chunk in chunks]
    ctx = words[0].ctx
    if any(w.ctx != ctx or w.n != words[0].n for w in words):
        raise UsageError("基文件中各码字的域或尺寸不一致")
    return ctx, np.stack([w.entries for w in words])


# ----------------------------------------------------------------------
# 生成矩阵
# ----------------------------------------------------------------------


def format_generator(code: LinearCode) -> str:
    header = f"q={code.ctx.modulus:x} n={code.n} k={code.k}"
    return "\n".join([header, *_format_rows(code.generator)]) + "\n"


def parse_generator(text: str) -> LinearCode:
    lines = [line.rstrip("\r") for line in text.strip("\n").split("\n")]
    header = _parse_header(lines[0], ("q", "n", "k"))
    try:
        ctx = context_from_modulus(int(header["q"], 16))
        n, k = int(header["n"]), int(header["k"])
    except ValueError as e:
        raise UsageError(f"无法解析首行: {lines[0]!r}") from e
    return LinearCode(ctx, _parse_rows(lines[1:], k, n, ctx))


# ----------------------------------------------------------------------
# 边表
# ----------------------------------------------------------------------


def to_networkx(word: MatrixWord) -> nx.Graph:
    if word.ctx.t != 1 or not word.is_graph():
        raise PreconditionError("只有二元对称零对角码字才能导出为简单图")
    graph = nx.Graph()
    graph.add_nodes_from(range(word.n))
    rows, cols = np.nonzero(np.triu(word.entries, 1))
    graph.add_edges_from(zip(rows.tolist(), cols.tolist()))
    return graph


def write_edge_list(word: MatrixWord, path: str | os.PathLike) -> str:
    nx.write_edgelist(to_networkx(word), str(path), data=False)
    return str(path)


# ----------------------------------------------------------------------
# 选择器
# ----------------------------------------------------------------------


def parse_selector(selector: str | None, code: GraphCode) -> int:
    """
    码字选择器

    - 十进制整数：码字下标（系数按 |scalars| 进制展开，低位对应第一个基）；
    - ``c:<h0>,<h1>,...``：逐个给出十六进制系数。
    """
    if selector is None or not str(selector).strip():
        raise UsageError("export 需要 --selector")
    text = str(selector).strip()
    base = code.scalars.order
    total = base**code.dim
    if text.startswith("c:"):
        try:
            coeffs = [int(tok, 16) for tok in text[2:].split(",") if tok.strip()]
        except ValueError as e:
            raise UsageError(f"无法解析系数选择器: {text!r}") from e
        if len(coeffs) != code.dim or any(not 0 <= c < base for c in coeffs):
            raise PreconditionError(f"系数选择器需要 {code.dim} 个 [0, {base}) 内的系数")
        return sum(c * base**i for i, c in enumerate(coeffs))
    try:
        index = int(text)
    except ValueError as e:
        raise UsageError(f"无法解析选择器: {text!r}") from e
    if not 0 <= index < total:
        raise PreconditionError(f"选择器 {index} 超出范围 [0, {total})")
    return index


# ----------------------------------------------------------------------
# 描述文件与报告
# ----------------------------------------------------------------------


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return fraction_to_str(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def describe_graph_code(code: GraphCode) -> dict[str, Any]:
    data: dict[str, Any] = {
        "kind": "graph_code",
        "family": code.family,
        "params": _jsonable(code.params),
        "field": format_context(code.ctx),
        "scalars": format_context(code.scalars),
        "n": code.n,
        "dim": code.dim,
        "bits": code.bits,
        "rate": fraction_to_str(code.rate),
        "directed": code.directed,
        "symmetric_zero_diag": code.symmetric_zero_diag,
        "claimed_relative_distance": (
            fraction_to_str(code.claimed_relative_distance)
            if code.claimed_relative_distance is not None
            else None
        ),
        "certified_lower": code.certified_lower,
        "metadata": _jsonable(code.metadata),
    }
    if code.certificate is not None:
        data["certificate"] = _jsonable(code.certificate.to_dict())
    return data


def describe_linear_code(code: LinearCode) -> dict[str, Any]:
    return {
        "kind": "linear_code",
        "family": "rs" if code.eval_points is not None else "linear",
        "name": code.name,
        "field": format_context(code.ctx),
        "n": code.n,
        "k": code.k,
        "rate": fraction_to_str(code.rate),
        "designed_distance": code.designed_distance,
        "metadata": _jsonable(code.metadata),
    }


def write_construction(
    out_dir: str,
    family: str,
    code: GraphCode | LinearCode,
    run_config: dict[str, Any],
) -> str:
    """写出基/生成矩阵文件与描述文件，返回描述文件路径"""
    os.makedirs(out_dir, exist_ok=True)
    if isinstance(code, GraphCode):
        data_name = f"{family}.basis"
        Path(out_dir, data_name).write_text(format_basis(code), encoding="utf-8")
        descriptor = describe_graph_code(code)
    else:
        data_name = f"{family}.gen"
        Path(out_dir, data_name).write_text(format_generator(code), encoding="utf-8")
        descriptor = describe_linear_code(code)
    descriptor.update(
        {"version": DESCRIPTOR_VERSION, "data_file": data_name, "run_config": run_config}
    )
    path = str(Path(out_dir, f"{family}.json"))
    Path(path).write_text(canonical_json(descriptor), encoding="utf-8")
    logger.info(f"[输出] 已写出 {path}")
    return path


def load_descriptor(path: str) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise UsageError(f"描述文件不存在: {path}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"描述文件不是合法 JSON: {path}: {e}") from e


def load_graph_code(path: str) -> GraphCode:
    """从描述文件及其基文件还原图码"""
    descriptor = load_descriptor(path)
    if descriptor.get("kind") != "graph_code":
        raise PreconditionError(f"{path} 描述的不是图码")
    data_path = Path(path).parent / descriptor["data_file"]
    try:
        text = data_path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise UsageError(f"基文件不存在: {data_path}") from e
    ctx, basis = parse_basis(text)
    field_ctx = parse_context(descriptor["field"])
    if ctx is not None and ctx != field_ctx:
        raise UsageError("基文件与描述文件的域不一致")
    return GraphCode(
        field_ctx,
        basis,
        scalars=parse_context(descriptor["scalars"]),
        directed=bool(descriptor.get("directed")),
        symmetric_zero_diag=bool(descriptor.get("symmetric_zero_diag")),
        family=descriptor.get("family", ""),
        params=descriptor.get("params") or {},
        certified_lower=descriptor.get("certified_lower"),
        metadata=descriptor.get("metadata") or {},
        n_vertices=int(descriptor.get("n", 0)),
    )


def write_report(path: str, report: DistanceReport, extra: dict[str, Any]) -> str:
    data = {"report": _jsonable(report.to_dict()), **_jsonable(extra)}
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(canonical_json(data), encoding="utf-8")
    return path


def load_linear_code(path: str) -> LinearCode:
    descriptor = load_descriptor(path)
    if descriptor.get("kind") != "linear_code":
        raise PreconditionError(f"{path} 描述的不是线性码")
    data_path = Path(path).parent / descriptor["data_file"]
    try:
        text = data_path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise UsageError(f"生成矩阵文件不存在: {data_path}") from e
    code = parse_generator(text)
    code.designed_distance = descriptor.get("designed_distance")
    code.name = descriptor.get("name") or ""
    return code
