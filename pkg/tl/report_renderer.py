"""
报告渲染模块
支持两种渲染模式：template（Jinja2 Markdown 模板）、text（纯文本）
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from jinja2 import Environment, FileSystemLoader, StrictUndefined, TemplateError

from .log import logger

DEFAULT_TEMPLATE = "report_template"


def get_template_path(
    templates_dir: str | Path,
    template_name: str = DEFAULT_TEMPLATE,
    extension: str = ".md",
) -> Path:
    """
    获取模板路径

    如果指定模板不存在，会回退到默认模板，并自动补全缺失的扩展名。
    """
    if not template_name.endswith(extension):
        template_name += extension
    template_path = Path(templates_dir) / template_name
    if not template_path.exists():
        logger.warning(f"模板文件不存在: {template_path}，回退到默认模板")
        template_path = Path(templates_dir) / f"{DEFAULT_TEMPLATE}{extension}"
    return template_path


def render_template(template_path: str | Path, template_data: dict[str, Any]) -> str:
    """用 Jinja2 渲染模板；模板引用了 template_data 中没有的键时抛 UndefinedError"""
    template_path = Path(template_path)
    env = Environment(
        loader=FileSystemLoader(template_path.parent),
        undefined=StrictUndefined,
        trim_blocks=True,
        keep_trailing_newline=True,
        autoescape=False,
    )
    return env.get_template(template_path.name).render(**template_data)


def render_text(template_data: dict[str, Any]) -> str:
    """纯文本渲染（模板不可用时的回退）"""
    lines = [f"{template_data.get('title', '图码参数表')}", ""]
    lines.extend(template_data.get("rows_text", "").splitlines())
    summary = template_data.get("summary")
    if summary:
        lines.extend(["", summary])
    return "\n".join(lines) + "\n"


def format_markdown_table(header: list[str], rows: list[list[Any]]) -> str:
    out = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for row in rows:
        out.append("| " + " | ".join("" if v is None else str(v) for v in row) + " |")
    return "\n".join(out)


def render_report(
    templates_dir: str | Path,
    template_data: dict[str, Any],
    template_name: str = DEFAULT_TEMPLATE,
) -> str:
    path = get_template_path(templates_dir, template_name)
    try:
        return render_template(path, template_data)
    except (OSError, TemplateError) as e:
        logger.warning(f"模板渲染失败: {e}，回退到纯文本")
        return render_text(template_data)
