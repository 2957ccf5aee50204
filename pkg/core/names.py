import re
from typing import AbstractSet

_SUFFIX = re.compile(r"^(?P<stem>.*?)(?:_(?P<index>\d+))?$")


def stem_of(name: str) -> str:
    """Name without a trailing `_<digits>` freshness suffix."""
    match = _SUFFIX.match(name)
    return match.group("stem") if match and match.group("stem") else name


def fresh_name(stem: str, used: AbstractSet[str]) -> str:
    """`stem` if unused, otherwise the first of stem_1, stem_2, ... that is."""
    stem = stem_of(stem)
    if stem not in used:
        return stem
    index = 1
    while f"{stem}_{index}" in used:
        index += 1
    return f"{stem}_{index}"
