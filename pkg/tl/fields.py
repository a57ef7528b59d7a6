"""
二元扩域 F_{2^t} 算术

域元素以 t 位整数表示：第 i 位是多项式基 X^i 的系数，与 galois 的整数表示一致。
运算委托给 ``galois.GF(2**t, irreducible_poly=...)``，约化多项式取固定表
IRREDUCIBLE_MODULI，保证导出格式不随库的默认多项式变化。
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Final

import galois
import numpy as np

from .code_types import FieldMismatchError, PreconditionError, UsageError
from .log import logger

# t -> 不可约多项式（位串形式，含最高次项）
IRREDUCIBLE_MODULI: Final[dict[int, int]] = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}

MAX_EXTENSION_DEGREE: Final = 16


def is_irreducible(modulus: int) -> bool:
    """F_2 上多项式（位串形式）是否不可约"""
    if modulus.bit_length() < 2:
        return False
    return galois.Poly.Int(modulus).is_irreducible()


def to_ints(values) -> np.ndarray:
    """把 FieldArray（或任意整数数组）转回 int64 ndarray"""
    if isinstance(values, galois.FieldArray):
        values = values.view(np.ndarray)
    return np.asarray(values).astype(np.int64)


@dataclass(frozen=True)
class FieldContext:
    """有限域 F_{2^t} 的上下文（扩张次数 + 约化多项式）"""

    t: int
    modulus: int

    def __post_init__(self):
        if not 1 <= self.t <= MAX_EXTENSION_DEGREE:
            raise PreconditionError(
                f"扩张次数 t={self.t} 超出支持范围 [1, {MAX_EXTENSION_DEGREE}]"
            )
        if self.modulus.bit_length() - 1 != self.t:
            raise PreconditionError(
                f"约化多项式 {self.modulus:x} 的次数与 t={self.t} 不一致"
            )
        if not is_irreducible(self.modulus):
            raise PreconditionError(f"约化多项式 {self.modulus:x} 在 F_2 上可约")

    @cached_property
    def gf(self) -> type[galois.FieldArray]:
        """对应的 galois 域类"""
        if self.t == 1:
            return galois.GF(2)
        return galois.GF(2**self.t, irreducible_poly=galois.Poly.Int(self.modulus))

    def __getstate__(self) -> dict:
        # galois 动态生成的域类不能按引用 pickle，子进程里重新构造
        state = dict(self.__dict__)
        state.pop("gf", None)
        return state

    @property
    def order(self) -> int:
        return 1 << self.t

    @property
    def mask(self) -> int:
        return self.order - 1

    @property
    def label(self) -> str:
        return format_context(self)

    def array(self, values) -> galois.FieldArray:
        """整数数组 → FieldArray，越界时抛 FieldMismatchError"""
        values = np.asarray(values, dtype=np.int64)
        if values.size and (values.min() < 0 or values.max() >= self.order):
            raise FieldMismatchError(f"数组含有不属于 {self.label} 的元素")
        return self.gf(values)

    # ------------------------------------------------------------------
    # 标量运算（整数表示）
    # ------------------------------------------------------------------

    def check(self, value: int) -> int:
        value = int(value)
        if not 0 <= value < self.order:
            raise FieldMismatchError(
                f"元素 {value:#x} 不属于 F_{self.order}（t={self.t}）"
            )
        return value

    def mul(self, a: int, b: int) -> int:
        return int(self.gf(self.check(a)) * self.gf(self.check(b)))

    def pow(self, a: int, e: int) -> int:
        if e < 0 and int(a) == 0:
            raise PreconditionError("零元素没有乘法逆元")
        return int(self.gf(self.check(a)) ** int(e))

    def inv(self, a: int) -> int:
        if a == 0:
            raise PreconditionError("零元素没有乘法逆元")
        return int(np.reciprocal(self.gf(self.check(a))))

    def sqrt(self, a: int) -> int:
        # Frobenius 的逆：a^(2^(t-1))
        return self.pow(a, 1 << (self.t - 1))

    def trace(self, a: int) -> int:
        return int(self.gf(self.check(a)).field_trace())

    # ------------------------------------------------------------------
    # 向量化运算（int64 进，int64 出）
    # ------------------------------------------------------------------

    def mul_vec(self, a, b) -> np.ndarray:
        """逐元素乘法，支持 numpy 广播"""
        return to_ints(self.array(a) * self.array(b))

    def pow_vec(self, a, e: int) -> np.ndarray:
        return to_ints(self.array(a) ** int(e))

    def trace_vec(self, a) -> np.ndarray:
        return to_ints(self.array(a).field_trace())

    # ------------------------------------------------------------------
    # 元素构造
    # ------------------------------------------------------------------

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, self.check(value))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def generator_x(self) -> FieldElement:
        """多项式基中的 X（t=1 时为 1）"""
        return FieldElement(self, 2 if self.t > 1 else 1)

    def elements(self) -> Iterator[FieldElement]:
        """按整数值升序枚举全部元素"""
        for value in range(self.order):
            yield FieldElement(self, value)


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldContext
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.ctx.order:
            raise FieldMismatchError(
                f"元素 {self.value:#x} 不属于 F_{self.ctx.order}"
            )

    def _other(self, other: FieldElement) -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"不支持与 {type(other).__name__} 运算")
        if other.ctx != self.ctx:
            raise FieldMismatchError(
                f"域不一致: {self.ctx.label} vs {other.ctx.label}"
            )
        return other.value

    def __add__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.ctx, self.value ^ self._other(other))

    __sub__ = __add__

    def __mul__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._other(other)))

    def __pow__(self, e: int) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self.value:#x} in F_{self.ctx.order})"


# ----------------------------------------------------------------------
# 函数式接口
# ----------------------------------------------------------------------


def _same_ctx(ctx: FieldContext, *elements: FieldElement) -> None:
    for element in elements:
        if element.ctx != ctx:
            raise FieldMismatchError(
                f"元素属于 {element.ctx.label}，期望 {ctx.label}"
            )


def field_add(a: FieldElement, b: FieldElement, ctx: FieldContext) -> FieldElement:
    _same_ctx(ctx, a, b)
    return FieldElement(ctx, a.value ^ b.value)


def field_mul(a: FieldElement, b: FieldElement, ctx: FieldContext) -> FieldElement:
    _same_ctx(ctx, a, b)
    return FieldElement(ctx, ctx.mul(a.value, b.value))


def field_inv(a: FieldElement, ctx: FieldContext) -> FieldElement:
    _same_ctx(ctx, a)
    return FieldElement(ctx, ctx.inv(a.value))


def field_pow(a: FieldElement, e: int, ctx: FieldContext) -> FieldElement:
    _same_ctx(ctx, a)
    return FieldElement(ctx, ctx.pow(a.value, e))


def field_sqrt(a: FieldElement, ctx: FieldContext) -> FieldElement:
    _same_ctx(ctx, a)
    return FieldElement(ctx, ctx.sqrt(a.value))


def trace(a: FieldElement, ctx: FieldContext) -> int:
    """绝对迹 F_{2^t} → F_2"""
    _same_ctx(ctx, a)
    return ctx.trace(a.value)


def vec_embed(a: FieldElement, ctx: FieldContext) -> np.ndarray:
    """多项式基坐标（F_2 线性双射），第 i 个分量是 X^i 的系数"""
    _same_ctx(ctx, a)
    return np.array([(a.value >> i) & 1 for i in range(ctx.t)], dtype=np.int64)


def vec_unembed(bits: Sequence[int], ctx: FieldContext) -> FieldElement:
    if len(bits) != ctx.t:
        raise FieldMismatchError(f"坐标长度 {len(bits)} 与 t={ctx.t} 不一致")
    value = 0
    for i, bit in enumerate(bits):
        if int(bit) not in (0, 1):
            raise FieldMismatchError(f"坐标分量必须是 0/1，收到 {bit!r}")
        value |= int(bit) << i
    return FieldElement(ctx, value)


def find_generator(ctx: FieldContext) -> FieldElement:
    """乘法群的生成元（galois 给出的本原元）"""
    return FieldElement(ctx, int(ctx.gf.primitive_element))


# ----------------------------------------------------------------------
# 上下文缓存与序列化
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def get_field(t: int) -> FieldContext:
    """按扩张次数取默认上下文"""
    if t not in IRREDUCIBLE_MODULI:
        raise PreconditionError(
            f"扩张次数 t={t} 超出支持范围 [1, {MAX_EXTENSION_DEGREE}]"
        )
    ctx = FieldContext(t, IRREDUCIBLE_MODULI[t])
    logger.debug(f"[有限域] 初始化 {format_context(ctx)}")
    return ctx


def context_from_modulus(modulus: int) -> FieldContext:
    t = modulus.bit_length() - 1
    if IRREDUCIBLE_MODULI.get(t) == modulus:
        return get_field(t)
    return FieldContext(t, modulus)


def format_element(value: int | FieldElement) -> str:
    """小写十六进制，无前缀"""
    return format(int(value), "x")


def parse_element(text: str, ctx: FieldContext) -> FieldElement:
    try:
        value = int(text.strip(), 16)
    except ValueError as e:
        raise UsageError(f"无法解析域元素: {text!r}") from e
    return ctx.element(value)


def format_context(ctx: FieldContext) -> str:
    return f"t={ctx.t},mod={ctx.modulus:x}"


def parse_context(text: str) -> FieldContext:
    parts: dict[str, str] = {}
    for item in text.strip().split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"无法解析域上下文: {text!r}")
        parts[key.strip()] = value.strip()
    try:
        t = int(parts["t"])
        modulus = int(parts["mod"], 16)
    except (KeyError, ValueError) as e:
        raise UsageError(f"无法解析域上下文: {text!r}") from e
    ctx = context_from_modulus(modulus)
    if ctx.t != t:
        raise UsageError(f"域上下文 t={t} 与约化多项式 {modulus:x} 不一致")
    return ctx
