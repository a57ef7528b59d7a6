"""错误信息格式化：将异常对象/字符串转换为机器可读的一行错误摘要。

命令行在退出前把这一行写到 stderr，格式为
``error=<category> exit=<code> message=<text>``。
"""

from __future__ import annotations

from .code_types import EXIT_INTERNAL, GraphCodeError

# 类别 -> 给用户的简短提示
_HINTS: dict[str, str] = {
    "usage": "检查命令行参数或配置文件",
    "precondition": "调整构造参数使其满足前置条件",
    "field_mismatch": "确认操作数来自同一个有限域且形状一致",
    "rank_deficient": "生成矩阵/基必须线性无关",
    "budget": "提高 --budget，或改用 sampled 模式",
    "internal": "请保留日志并报告问题",
}


def error_category(error: Exception | str) -> tuple[str, int]:
    if isinstance(error, GraphCodeError):
        return error.category, error.exit_code
    return "internal", EXIT_INTERNAL


def format_error_message(error: Exception | str) -> str:
    """根据错误类型生成一行错误摘要

    Args:
        error: 异常对象或错误字符串

    Returns:
        ``error=<category> exit=<code> message=<text>``，message 中的换行被折叠为空格
    """
    category, code = error_category(error)
    text = error.message if isinstance(error, GraphCodeError) else str(error)
    text = " ".join(text.split()) or type(error).__name__
    return f"error={category} exit={code} message={text}"


def error_hint(error: Exception | str) -> str:
    category, _ = error_category(error)
    return _HINTS.get(category, _HINTS["internal"])
