"""
运行配置

命令行参数与可选的 YAML 配置文件合并成原始字典后，由 ``ConfigLoader`` 清洗为
``RunConfig``。所有数值参数都在这里校验，构造模块只接收干净的值。
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import yaml

from .code_types import DISTANCE_MODES, UsageError
from .family_metadata import is_known_family, normalize_family
from .graph_metric import (
    DEFAULT_DISTANCE_BUDGET,
    DEFAULT_MIS_VERTEX_LIMIT,
    DEFAULT_SAMPLE_NODE_LIMIT,
    DEFAULT_SOFT_CAP_SECONDS,
)
from .log import logger
from .random_codes import DEFAULT_RETRIES
from .tl_utils import fraction_to_str, parse_fraction

COMMANDS = ("construct", "distance", "table", "export", "weil", "selftest")
EXPORT_FORMATS = ("matrix", "edgelist")
KNOWN_TOP_LEVEL_KEYS = frozenset(
    {
        "command",
        "family",
        "params",
        "seed",
        "budget",
        "threads",
        "distance",
        "random",
        "output",
        "table",
        "weil",
        "log_level",
    }
)
_MISSING = object()


def _clean_string(value: Any) -> str:
    return str(value or "").strip()


def _clean_int(value: Any, name: str, errors: list[str], default: int, minimum: int) -> int:
    if value is None or value == "":
        return default
    try:
        number = int(str(value).strip(), 0) if isinstance(value, str) else int(value)
    except (TypeError, ValueError):
        errors.append(f"{name} 不是整数: {value!r}")
        return default
    if isinstance(value, bool) or number < minimum:
        errors.append(f"{name} 必须 ≥ {minimum}，收到 {value!r}")
        return default
    return number


def _clean_float(value: Any, name: str, errors: list[str], default: float) -> float:
    if value is None or value == "":
        return default
    try:
        return max(float(value), 0.0)
    except (TypeError, ValueError):
        errors.append(f"{name} 不是数值: {value!r}")
        return default


def _clean_int_list(value: Any, name: str, errors: list[str], default: list[int]) -> list[int]:
    if value is None or value == "":
        return list(default)
    items = value.split(",") if isinstance(value, str) else value
    if not isinstance(items, (list, tuple)):
        items = [items]
    out = []
    for item in items:
        try:
            out.append(int(str(item).strip()))
        except ValueError:
            errors.append(f"{name} 含有非整数项: {item!r}")
    return out


@dataclass
class RunConfig:
    """一次命令行运行的全部设置"""

    command: str = "construct"
    family: str = ""
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    budget: int = DEFAULT_DISTANCE_BUDGET
    threads: int = 1

    # 码距计算
    mode: str = "exact"
    samples: int = 256
    mis_vertex_limit: int = DEFAULT_MIS_VERTEX_LIMIT
    soft_cap_seconds: float = DEFAULT_SOFT_CAP_SECONDS
    node_limit: int = DEFAULT_SAMPLE_NODE_LIMIT

    # 级联码组合证书的采样上界个数（0 表示只给下界）
    composite_samples: int = 0

    # 随机构造
    retries: int = DEFAULT_RETRIES

    # 输出
    out_dir: str = "."
    descriptor: str | None = None
    selector: str | None = None
    export_format: str = "matrix"

    # table 子命令的参数网格
    table: list[dict[str, Any]] = field(default_factory=list)

    # weil 子命令
    weil_ts: list[int] = field(default_factory=lambda: [4, 5, 6])
    weil_degrees: list[int] = field(default_factory=lambda: [3, 5, 7])
    weil_samples: int = 10_000
    weil_exhaustive_max_t: int = 5

    log_level: str = "INFO"
    config_errors: list[str] = field(default_factory=list)

    def has_param(self, name: str) -> bool:
        value = self.params.get(name)
        return value is not None and value != ""

    def param_int(self, name: str, default: Any = _MISSING) -> int:
        if not self.has_param(name):
            if default is _MISSING:
                raise UsageError(f"{self.family or self.command} 缺少必需参数 --{name}")
            return default
        value = self.params[name]
        try:
            if isinstance(value, bool):
                raise ValueError
            return int(str(value).strip(), 0) if isinstance(value, str) else int(value)
        except (TypeError, ValueError) as e:
            raise UsageError(f"参数 --{name} 不是整数: {value!r}") from e

    def param_fraction(self, name: str, default: Any = _MISSING) -> Fraction:
        if not self.has_param(name):
            if default is _MISSING:
                raise UsageError(f"{self.family or self.command} 缺少必需参数 --{name}")
            return Fraction(default)
        return parse_fraction(self.params[name], name)

    def param_str(self, name: str, default: str | None = None) -> str | None:
        if not self.has_param(name):
            return default
        return _clean_string(self.params[name])

    def echo(self) -> dict[str, Any]:
        """写入描述文件/报告的配置回显（不含输出路径）"""
        params = {}
        for key, value in sorted(self.params.items()):
            if value is None or value == "":
                continue
            params[key] = fraction_to_str(value) if isinstance(value, Fraction) else value
        return {
            "command": self.command,
            "family": self.family,
            "params": params,
            "seed": self.seed,
            "budget": self.budget,
            "threads": self.threads,
            "mode": self.mode,
            "samples": self.samples,
            "retries": self.retries,
        }


class ConfigLoader:
    """清洗原始配置字典"""

    def __init__(self, raw_config: dict[str, Any] | None, *, base_dir: str | None = None):
        self.raw_config = raw_config or {}
        self.base_dir = base_dir

    @classmethod
    def from_yaml(cls, path: str, overrides: dict[str, Any] | None = None) -> ConfigLoader:
        """读取 YAML 文件，并用非空的 overrides 覆盖（嵌套字典逐层合并）"""
        try:
            with open(path, encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except FileNotFoundError as e:
            raise UsageError(f"配置文件不存在: {path}") from e
        except yaml.YAMLError as e:
            raise UsageError(f"配置文件解析失败: {path}: {e}") from e
        if not isinstance(data, dict):
            raise UsageError(f"配置文件顶层必须是映射: {path}")
        merged = _deep_merge(data, overrides or {})
        return cls(merged, base_dir=os.path.dirname(os.path.abspath(path)))

    def _resolve_path(self, value: Any) -> str | None:
        text = _clean_string(value)
        if not text:
            return None
        if self.base_dir and not os.path.isabs(text):
            return str(Path(self.base_dir) / text)
        return text

    def load(self) -> RunConfig:
        """加载配置并返回 RunConfig 实例；任何清洗错误都作为用法错误抛出"""
        raw = self.raw_config
        config = RunConfig()
        errors = config.config_errors

        for key in raw:
            if key not in KNOWN_TOP_LEVEL_KEYS:
                logger.warning(f"[配置加载] 忽略未知配置项: {key}")

        config.command = _clean_string(raw.get("command")) or config.command
        if config.command not in COMMANDS:
            errors.append(f"未知子命令: {config.command}")

        family = raw.get("family")
        if family:
            config.family = normalize_family(family)
            if not is_known_family(config.family):
                errors.append(f"未知构造族: {family}")

        params = raw.get("params") or {}
        if not isinstance(params, dict):
            errors.append("params 必须是映射")
            params = {}
        config.params = {str(k): v for k, v in params.items()}

        config.seed = _clean_int(raw.get("seed"), "seed", errors, 0, 0)
        config.budget = _clean_int(raw.get("budget"), "budget", errors, config.budget, 1)
        config.threads = _clean_int(raw.get("threads"), "threads", errors, 1, 1)

        self._load_distance_settings(config, raw.get("distance") or {})

        random_settings = raw.get("random") or {}
        config.retries = _clean_int(
            random_settings.get("retries"), "retries", errors, config.retries, 1
        )

        self._load_output_settings(config, raw.get("output") or {})
        self._load_table(config, raw.get("table"))
        self._load_weil_settings(config, raw.get("weil") or {})

        config.log_level = (_clean_string(raw.get("log_level")) or "INFO").upper()

        if errors:
            raise UsageError("; ".join(errors))
        return config

    def _load_distance_settings(self, config: RunConfig, settings: dict[str, Any]) -> None:
        errors = config.config_errors
        mode = _clean_string(settings.get("mode")) or config.mode
        if mode == "sample":
            mode = "sampled"
        if mode not in DISTANCE_MODES:
            errors.append(f"未知的距离模式: {mode}")
        config.mode = mode
        config.samples = _clean_int(settings.get("samples"), "samples", errors, config.samples, 0)
        config.mis_vertex_limit = _clean_int(
            settings.get("mis_vertex_limit"), "mis_vertex_limit", errors,
            config.mis_vertex_limit, 1,
        )
        config.soft_cap_seconds = _clean_float(
            settings.get("soft_cap_seconds"), "soft_cap_seconds", errors,
            config.soft_cap_seconds,
        )
        config.node_limit = _clean_int(
            settings.get("node_limit"), "node_limit", errors, config.node_limit, 1
        )
        config.composite_samples = _clean_int(
            settings.get("composite_samples"), "composite_samples", errors,
            config.composite_samples, 0,
        )

    def _load_output_settings(self, config: RunConfig, settings: dict[str, Any]) -> None:
        config.out_dir = self._resolve_path(settings.get("out_dir")) or config.out_dir
        config.descriptor = self._resolve_path(settings.get("descriptor"))
        selector = settings.get("selector")
        config.selector = _clean_string(selector) if selector is not None else None
        fmt = _clean_string(settings.get("format")) or config.export_format
        if fmt not in EXPORT_FORMATS:
            config.config_errors.append(f"未知的导出格式: {fmt}")
        config.export_format = fmt

    def _load_table(self, config: RunConfig, entries: Any) -> None:
        if entries is None:
            return
        if not isinstance(entries, list):
            config.config_errors.append("table 必须是列表")
            return
        for i, entry in enumerate(entries):
            if not isinstance(entry, dict) or not entry.get("family"):
                config.config_errors.append(f"table 第 {i} 项缺少 family")
                continue
            family = normalize_family(entry["family"])
            if not is_known_family(family):
                config.config_errors.append(f"table 第 {i} 项构造族未知: {entry['family']}")
                continue
            params = entry.get("params") or {}
            if not isinstance(params, dict):
                config.config_errors.append(f"table 第 {i} 项 params 必须是映射")
                continue
            config.table.append({"family": family, "params": dict(params)})

    def _load_weil_settings(self, config: RunConfig, settings: dict[str, Any]) -> None:
        errors = config.config_errors
        config.weil_ts = _clean_int_list(settings.get("t"), "weil.t", errors, config.weil_ts)
        config.weil_degrees = _clean_int_list(
            settings.get("degrees"), "weil.degrees", errors, config.weil_degrees
        )
        config.weil_samples = _clean_int(
            settings.get("samples"), "weil.samples", errors, config.weil_samples, 1
        )
        config.weil_exhaustive_max_t = _clean_int(
            settings.get("exhaustive_max_t"), "weil.exhaustive_max_t", errors,
            config.weil_exhaustive_max_t, 0,
        )


def _deep_merge(base: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in overrides.items():
        if value is None:
            continue
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        elif isinstance(value, dict) and not value:
            continue
        else:
            merged[key] = value
    return merged


def merge_overrides(base: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    return _deep_merge(base, overrides)
