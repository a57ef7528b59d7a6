"""构造族。

每个构造族负责把清洗后的 ``RunConfig`` 参数翻译成一次构造调用。
对外统一入口为 ``get_family_builder``。
"""

from ..family_metadata import is_known_family as is_known_family
from ..family_metadata import iter_families as iter_families
from ..family_metadata import normalize_family as normalize_family
from .registry import get_family_builder as get_family_builder
