"""Canonical construction family names and aliases."""

from __future__ import annotations

from typing import Any, Final

FAMILY_TYPES: Final[tuple[str, ...]] = (
    "rs",
    "stczd",
    "stczd_rs",
    "tensor",
    "random",
    "opt",
    "concat_rs",
    "double",
    "triple",
    "justesen",
    "warmup",
    "dualbch",
)

_ALIASES: Final[dict[str, str]] = {
    "reed_solomon": "rs",
    "explicit": "stczd_rs",
    "concat": "concat_rs",
    "double_concat": "double",
    "triple_concat": "triple",
    "dual_bch": "dualbch",
    "random_graph": "random",
}


def normalize_family(family: Any) -> str:
    """Normalize a family name to the canonical key."""
    key = str(family or "").strip().lower().replace("-", "_")
    return _ALIASES.get(key, key)


def is_known_family(family: Any) -> bool:
    """Return whether the value is a registered family key."""
    return normalize_family(family) in FAMILY_TYPES


def iter_families() -> tuple[str, ...]:
    """Return registered family keys in table order."""
    return FAMILY_TYPES
