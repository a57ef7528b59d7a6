"""
工具函数模块
提供位掩码、数值解析与确定性 JSON 序列化等通用功能
"""

from __future__ import annotations

import json
from collections.abc import Iterator
from fractions import Fraction
from typing import Any

import numpy as np

from .code_types import UsageError


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    """按从低到高的顺序产出掩码中置位的下标"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_to_tuple(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def row_masks(nonzero: np.ndarray) -> list[int]:
    """
    把布尔矩阵的每一行转为 Python 整数位掩码（第 j 位对应第 j 列）

    Args:
        nonzero: 形状 (rows, cols) 的布尔/0-1 矩阵
    """
    packed = np.packbits(np.asarray(nonzero, dtype=bool), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def digits_base(indices: np.ndarray, base: int, width: int) -> np.ndarray:
    """把索引展开为 base 进制数字（低位在前），返回形状 (len, width)"""
    indices = np.asarray(indices, dtype=np.int64)
    out = np.empty((indices.shape[0], width), dtype=np.int64)
    rest = indices.copy()
    for i in range(width):
        out[:, i] = rest % base
        rest //= base
    return out


def message_index(digits, base: int) -> int:
    """digits_base 的逆：低位在前的数字串 → Python 整数，不受 int64 限制"""
    return sum(int(d) * base**i for i, d in enumerate(digits))


def index_digits(index: int, base: int, width: int) -> np.ndarray:
    """单个（可能超出 int64 的）下标 → 低位在前的 width 位数字"""
    digits = []
    for _ in range(width):
        index, digit = divmod(int(index), base)
        digits.append(digit)
    return np.array(digits, dtype=np.int64)


def parse_fraction(value: Any, name: str = "value") -> Fraction:
    """
    解析十进制/分数字符串为精确有理数

    命令行中的 ε、ρ、δ 都以字符串给出，避免浮点比较误差。
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise UsageError(f"参数 {name} 不是数值: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"参数 {name} 无法解析为有理数: {value!r}") from e


def fraction_to_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _json_default(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return fraction_to_str(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"无法序列化的类型: {type(obj).__name__}")


def canonical_json(data: Any) -> str:
    """键排序、缩进 2 的确定性 JSON，末尾带换行"""
    return (
        json.dumps(
            data, sort_keys=True, indent=2, ensure_ascii=False, default=_json_default
        )
        + "\n"
    )
