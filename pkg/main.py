"""
图码构造与距离认证命令行
支持随机图码、STCZD/张量码、多层级联码、Justesen 型码与对偶 BCH 迹码的构造、
精确/采样码距认证、参数表、码字导出以及 Weil 界经验检查

本文件只负责参数解析与流程编排，具体实现委托给 tl/ 下的各模块
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path
from typing import Any

import yaml

from tl import (
    BudgetExceededError,
    ConfigLoader,
    DistanceReport,
    GraphCode,
    GraphCodeError,
    InternalError,
    LinearCode,
    RunConfig,
    UsageError,
    code_distance,
    composite_distance_report,
    error_hint,
    format_error_message,
    format_markdown_table,
    get_family_builder,
    hamming_min_distance,
    logger,
    render_report,
    setup_logging,
    singleton_check,
)
from tl.code_io import (
    format_graph_word,
    load_descriptor,
    load_graph_code,
    load_linear_code,
    parse_selector,
    write_construction,
    write_edge_list,
    write_graph_word,
    write_report,
)
from tl.dualbch import weil_table
from tl.run_config import merge_overrides
from tl.selftest import run_selftest
from tl.tl_utils import fraction_to_str

PLUGIN_DIR = Path(__file__).resolve().parent
TEMPLATES_DIR = PLUGIN_DIR / "templates"

TABLE_HEADER = [
    "family",
    "params",
    "n",
    "q",
    "dim",
    "rate",
    "certified_distance",
    "certification",
    "claimed_distance",
    "singleton_slack",
    "singleton",
]
WEIL_HEADER = ["t", "degree", "mode", "polynomials", "max_abs_sum", "bound", "pass"]

# 构造参数 flag -> params 键
PARAM_FLAGS = ("n", "k", "N", "t", "d", "eps", "rho", "delta", "base")


def _load_version() -> str:
    """从 metadata.yaml 读取版本号"""
    try:
        with open(PLUGIN_DIR / "metadata.yaml", encoding="utf-8") as f:
            metadata = yaml.safe_load(f) or {}
        return str(metadata.get("version", "unknown"))
    except Exception as e:
        logger.debug(f"读取版本号失败: {e}")
        return "unknown"


# ----------------------------------------------------------------------
# 参数解析
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML 配置文件，命令行参数优先")
    common.add_argument("--seed", type=int, help="随机种子（64 位非负整数）")
    common.add_argument("--budget", type=int, help="精确枚举的码字数上限")
    common.add_argument("--threads", type=int, help="码距枚举的进程数上限")
    common.add_argument("--log-level", dest="log_level", help="日志级别（默认 INFO）")
    common.add_argument("--out", help="输出目录")
    common.add_argument("--mode", choices=("exact", "sampled", "sample"), help="码距模式")
    common.add_argument("--samples", type=int, help="sampled 模式的样本数")
    common.add_argument(
        "--composite-samples",
        dest="composite_samples",
        type=int,
        help="级联码组合证书附带的采样上界样本数",
    )
    common.add_argument("--mis-vertex-limit", dest="mis_vertex_limit", type=int)
    common.add_argument("--node-limit", dest="node_limit", type=int)
    common.add_argument("--retries", type=int, help="随机构造的重试次数")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--family", help="构造族")
    for flag in PARAM_FLAGS:
        params.add_argument(f"--{flag}", dest=flag)

    parser = argparse.ArgumentParser(prog="graphcodes", description="图码构造与距离认证")
    parser.add_argument("--version", action="version", version=f"%(prog)s {_load_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("construct", parents=[common, params], help="构造码并写出描述文件与基")

    distance = sub.add_parser("distance", parents=[common], help="认证描述文件所给码的距离")
    distance.add_argument("--descriptor", help="construct 写出的描述文件")
    distance.add_argument("--report", help="报告输出路径（默认 <out>/<family>.distance.json）")

    table = sub.add_parser("table", parents=[common, params], help="生成码率/距离参数表")
    table.add_argument("--report", help="Markdown 报告路径（默认 <out>/table.md）")

    export = sub.add_parser("export", parents=[common], help="导出单个码字")
    export.add_argument("--descriptor")
    export.add_argument("--selector", help="码字下标，或 c:<h0>,<h1>,... 系数向量")
    export.add_argument("--format", choices=("matrix", "edgelist"))

    weil = sub.add_parser("weil", parents=[common], help="Weil 界经验检查")
    weil.add_argument("--ts", help="逗号分隔的 t 列表（默认 4,5,6）")
    weil.add_argument("--degrees", help="逗号分隔的奇数次数列表（默认 3,5,7）")
    weil.add_argument("--weil-samples", dest="weil_samples", type=int)

    sub.add_parser("selftest", parents=[common], help="快速自检")
    return parser


def args_to_raw(args: argparse.Namespace) -> dict[str, Any]:
    """命令行参数 → 与 YAML 配置同结构的原始字典（None 表示未指定）"""

    def get(name: str) -> Any:
        return getattr(args, name, None)

    params = {flag: get(flag) for flag in PARAM_FLAGS if get(flag) is not None}
    return {
        "command": args.command,
        "family": get("family"),
        "params": params,
        "seed": get("seed"),
        "budget": get("budget"),
        "threads": get("threads"),
        "log_level": get("log_level"),
        "distance": {
            "mode": get("mode"),
            "samples": get("samples"),
            "composite_samples": get("composite_samples"),
            "mis_vertex_limit": get("mis_vertex_limit"),
            "node_limit": get("node_limit"),
        },
        "random": {"retries": get("retries")},
        "output": {
            "out_dir": get("out"),
            "descriptor": get("descriptor"),
            "selector": get("selector"),
            "format": get("format"),
        },
        "weil": {
            "t": get("ts"),
            "degrees": get("degrees"),
            "samples": get("weil_samples"),
        },
    }


def load_run_config(args: argparse.Namespace) -> RunConfig:
    raw = args_to_raw(args)
    if getattr(args, "config", None):
        loader = ConfigLoader.from_yaml(args.config, raw)
    else:
        loader = ConfigLoader(merge_overrides({}, raw))
    return loader.load()


# ----------------------------------------------------------------------
# 距离认证
# ----------------------------------------------------------------------


def certify_graph_code(code: GraphCode, config: RunConfig) -> DistanceReport | None:
    """
    表格/自检使用的认证策略

    构造时已附带证书则直接复用；否则码字数不超预算且规模允许时做精确枚举；
    其余情况退回到分量下界（可能为空）。
    """
    if code.dim == 0:
        return None
    if code.certificate is not None and code.certificate.certified_lower is not None:
        return code.certificate
    total = code.scalars.order**code.dim
    if total <= config.budget and (code.directed or code.n <= config.mis_vertex_limit):
        return code_distance(
            code,
            config.budget,
            workers=config.threads,
            mis_vertex_limit=config.mis_vertex_limit,
            soft_cap_seconds=config.soft_cap_seconds,
        )
    logger.info(f"[码距] {code.family}: 码字数 {total} 超出精确枚举范围，使用分量下界")
    return composite_distance_report(
        code,
        code.certified_lower,
        samples=config.composite_samples,
        seed=config.seed,
        notes=["超出精确枚举范围"],
        node_limit=config.node_limit,
    )


def certify_linear_code(code: LinearCode, config: RunConfig) -> DistanceReport:
    try:
        return hamming_min_distance(code, config.budget)
    except BudgetExceededError:
        if code.designed_distance is None:
            raise
        return DistanceReport(
            mode="composed",
            metric="hamming",
            lower=code.designed_distance,
            notes=["使用设计距离"],
        )


def _params_text(params: dict[str, Any]) -> str:
    parts = []
    for key in sorted(params):
        value = params[key]
        if isinstance(value, Fraction):
            value = fraction_to_str(value)
        parts.append(f"{key}={value}")
    return ";".join(parts)


def table_row(family: str, params: dict[str, Any], code: GraphCode | LinearCode,
              config: RunConfig) -> list[Any]:
    if isinstance(code, LinearCode):
        report = certify_linear_code(code, config)
        d = report.certified_lower
        claimed = code.designed_distance
        slack = None if d is None else (code.n - d + 1) - code.k
        verdict = "n/a" if slack is None else ("pass" if slack >= 0 else "fail")
        if verdict == "fail":
            raise InternalError(f"{family} 违反 Hamming Singleton 界")
        return [family, _params_text(params), code.n, code.q, code.k,
                fraction_to_str(code.rate), d, report.mode, claimed, slack, verdict]

    report = certify_graph_code(code, config)
    d = report.certified_lower if report is not None else None
    claimed = None
    if code.claimed_relative_distance is not None:
        claimed = math.ceil(code.claimed_relative_distance * code.n)
    if d is None:
        slack, verdict = None, "n/a"
    else:
        check = singleton_check(code, report, enforce=True)
        slack, verdict = int(check.slack), "pass"
    return [family, _params_text(params), code.n, code.q, code.bits,
            fraction_to_str(code.rate), d, report.mode if report else "none",
            claimed, slack, verdict]


def _csv_text(header: list[str], rows: list[list[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return buffer.getvalue()


# ----------------------------------------------------------------------
# 子命令
# ----------------------------------------------------------------------


def cmd_construct(config: RunConfig) -> int:
    if not config.family:
        raise UsageError("construct 需要 --family")
    result = get_family_builder(config.family).build(config=config)
    path = write_construction(config.out_dir, result.family, result.code, config.echo())
    for note in result.notes:
        logger.info(f"[构造] {note}")
    print(path)
    return 0


def cmd_distance(config: RunConfig, report_path: str | None = None) -> int:
    if not config.descriptor:
        raise UsageError("distance 需要 --descriptor")
    descriptor = load_descriptor(config.descriptor)
    family = descriptor.get("family") or "code"
    extra: dict[str, Any] = {"family": family, "run_config": config.echo()}

    if descriptor.get("kind") == "linear_code":
        code = load_linear_code(config.descriptor)
        report = hamming_min_distance(
            code, config.budget, mode=config.mode, samples=config.samples, seed=config.seed
        )
    else:
        graph_code = load_graph_code(config.descriptor)
        report = code_distance(
            graph_code,
            config.budget,
            mode=config.mode,
            samples=config.samples,
            seed=config.seed,
            workers=config.threads,
            mis_vertex_limit=config.mis_vertex_limit,
            soft_cap_seconds=config.soft_cap_seconds,
            node_limit=config.node_limit,
        )
        if report.mode == "exact":
            check = singleton_check(graph_code, report)
            extra["singleton"] = {"slack": check.slack, "passed": check.passed}

    out = report_path or str(Path(config.out_dir, f"{family}.distance.json"))
    write_report(out, report, extra)
    value = report.value if report.mode == "exact" else report.upper
    print(f"{report.mode} {report.metric} {value} {out}")
    return 0


def cmd_table(config: RunConfig, report_path: str | None = None) -> int:
    entries = list(config.table)
    if config.family:
        entries.append({"family": config.family, "params": dict(config.params)})
    rows: list[list[Any]] = []
    warnings: list[str] = []
    for entry in entries:
        entry_config = replace(config, family=entry["family"], params=dict(entry["params"]))
        result = get_family_builder(entry["family"]).build(config=entry_config)
        row = table_row(result.family, entry_config.params, result.code, entry_config)
        if row[-1] == "n/a":
            warnings.append(f"{result.family}({row[1]}) 没有可用的距离证书")
        rows.append(row)
        logger.info(f"[参数表] {result.family}({row[1]}): d={row[6]} ({row[7]})")

    text = _csv_text(TABLE_HEADER, rows)
    os.makedirs(config.out_dir, exist_ok=True)
    Path(config.out_dir, "table.csv").write_text(text, encoding="utf-8")
    markdown = render_report(
        TEMPLATES_DIR,
        {
            "title": "图码参数表",
            "command": config.command,
            "seed": config.seed,
            "budget": config.budget,
            "threads": config.threads,
            "table": format_markdown_table(TABLE_HEADER, rows),
            "rows_text": text,
            "warnings": warnings,
        },
    )
    Path(report_path or Path(config.out_dir, "table.md")).write_text(markdown, encoding="utf-8")
    sys.stdout.write(text)
    return 0


def cmd_export(config: RunConfig) -> int:
    if not config.descriptor:
        raise UsageError("export 需要 --descriptor")
    code = load_graph_code(config.descriptor)
    index = parse_selector(config.selector, code)
    word = code.word_at(index)
    os.makedirs(config.out_dir, exist_ok=True)
    if config.export_format == "edgelist":
        path = write_edge_list(word, Path(config.out_dir, f"{code.family}_{index}.edges"))
    else:
        path = write_graph_word(word, Path(config.out_dir, f"{code.family}_{index}.txt"))
    logger.debug(f"[输出] 码字 {index}:\n{format_graph_word(word)}")
    print(path)
    return 0


def cmd_weil(config: RunConfig) -> int:
    rows = weil_table(
        config.weil_ts,
        config.weil_degrees,
        exhaustive_max_t=config.weil_exhaustive_max_t,
        samples=config.weil_samples,
        seed=config.seed,
    )
    table = [
        [r.t, r.degree, r.mode, r.polynomials, r.max_abs_sum, f"{r.bound:.4f}",
         "pass" if r.passed else "fail"]
        for r in rows
    ]
    text = _csv_text(WEIL_HEADER, table)
    os.makedirs(config.out_dir, exist_ok=True)
    Path(config.out_dir, "weil.csv").write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    failed = [r for r in rows if not r.passed]
    if failed:
        raise InternalError(f"{len(failed)} 行超出 Weil 界，最坏多项式 {failed[0].worst}")
    return 0


def cmd_selftest(config: RunConfig) -> int:
    results = run_selftest()
    for name, ok, detail in results:
        logger.info(f"[自检] {'通过' if ok else '失败'} {name}{': ' + detail if detail else ''}")
    failed = [name for name, ok, _ in results if not ok]
    if failed:
        raise InternalError(f"自检失败: {', '.join(failed)}")
    print(f"selftest ok ({len(results)} checks)")
    return 0


COMMAND_HANDLERS = {
    "construct": cmd_construct,
    "export": cmd_export,
    "weil": cmd_weil,
    "selftest": cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(getattr(args, "log_level", None) or "INFO")
    try:
        config = load_run_config(args)
        setup_logging(config.log_level)
        if config.command == "table":
            return cmd_table(config, getattr(args, "report", None))
        if config.command == "distance":
            return cmd_distance(config, getattr(args, "report", None))
        return COMMAND_HANDLERS[config.command](config)
    except GraphCodeError as e:
        logger.debug(f"提示: {error_hint(e)}")
        print(format_error_message(e), file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"未预期的错误: {e}")
        print(format_error_message(e), file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
