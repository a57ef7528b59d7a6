from __future__ import annotations

from pathlib import Path

import pytest
from jinja2 import UndefinedError

from tl.report_renderer import (
    format_markdown_table,
    get_template_path,
    render_report,
    render_template,
    render_text,
)

TEMPLATES_DIR = Path(__file__).resolve().parents[1] / "templates"


def _report_data(**overrides) -> dict:
    data = {
        "title": "图码参数表",
        "command": "table",
        "seed": 0,
        "budget": 1,
        "threads": 1,
        "table": "| a |",
        "warnings": [],
    }
    data.update(overrides)
    return data


def test_markdown_table() -> None:
    text = format_markdown_table(["a", "b"], [[1, None], ["x", 2]])
    assert text.splitlines() == ["| a | b |", "|---|---|", "| 1 |  |", "| x | 2 |"]


def test_conditional_blocks(tmp_path) -> None:
    template = tmp_path / "t.md"
    template.write_text("# {{ title }}\n{% if warn %}\n> {{ warn }}\n{% endif %}\nend\n", encoding="utf-8")
    assert render_template(template, {"title": "T", "warn": "注意"}) == "# T\n> 注意\nend\n"
    assert render_template(template, {"title": "T", "warn": ""}) == "# T\nend\n"


def test_loops_and_filters(tmp_path) -> None:
    template = tmp_path / "t.md"
    template.write_text("{% for row in rows %}\n{{ row | upper }}\n{% endfor %}\n", encoding="utf-8")
    assert render_template(template, {"rows": ["ab", "c"]}) == "AB\nC\n"


def test_missing_key_is_an_error(tmp_path) -> None:
    template = tmp_path / "t.md"
    template.write_text("{{ title }}\n", encoding="utf-8")
    with pytest.raises(UndefinedError):
        render_template(template, {})


def test_missing_template_falls_back_to_default(log_records) -> None:
    path = get_template_path(TEMPLATES_DIR, "nope")
    assert path.name == "report_template.md"
    assert any("回退到默认模板" in message for message in log_records.warnings)


def test_report_template_renders_table() -> None:
    text = render_report(TEMPLATES_DIR, _report_data())
    assert text.startswith("# 图码参数表")
    assert "| a |" in text
    assert ">" not in text
    assert "{{" not in text and "{%" not in text


def test_report_template_lists_warnings() -> None:
    text = render_report(TEMPLATES_DIR, _report_data(warnings=["w1", "w2"]))
    assert "> w1\n> w2\n" in text


def test_unreadable_template_dir_renders_text(tmp_path, log_records) -> None:
    text = render_report(tmp_path, {"title": "参数表", "rows_text": "a,b\n1,2\n"})
    assert text == "参数表\n\na,b\n1,2\n"
    assert any("回退到纯文本" in message for message in log_records.warnings)
    assert render_text({"rows_text": "", "summary": "ok"}).endswith("ok\n")


def test_incomplete_data_renders_text() -> None:
    text = render_report(TEMPLATES_DIR, {"title": "参数表", "rows_text": "x\n"})
    assert text == "参数表\n\nx\n"
