"""Finite two-level models: a type-0 universe with a designated standard part."""
import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterator, Tuple, Union

from config.nsakit_config import NsaConfig
from core.types import NAT, ONE, FinType, Seq, render_type
from exceptions.nsakit_exceptions import UnsupportedFragmentError

Value = Union[int, Tuple]

MAX_DOMAIN = 200_000


@dataclass(frozen=True)
class TwoLevelModel:
    """Elements 0..universe-1 of type 0; those below `standard` are standard"""
    universe: int
    standard: int
    seq_bound: int
    relations: Dict[str, FrozenSet[Tuple]] = field(default_factory=dict)
    functions: Dict[str, Tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if not 1 <= self.standard <= self.universe <= NsaConfig.MODEL_MAX_UNIVERSE:
            raise ValueError(
                f"need 1 <= S <= U <= {NsaConfig.MODEL_MAX_UNIVERSE}, got S={self.standard}, U={self.universe}"
            )
        if self.seq_bound < self.standard:
            raise ValueError(f"seqBound {self.seq_bound} must be at least S={self.standard}")
        for name, table in self.functions.items():
            if len(table) != self.universe or any(not 0 <= v < self.universe for v in table):
                raise ValueError(f"function table {name} must map 0..{self.universe - 1} into itself")

    def saturate(self, n: int) -> int:
        return min(n, self.universe - 1)

    def is_standard(self, value: Value, value_type: FinType) -> bool:
        if value_type == NAT:
            return value < self.standard
        if value_type == ONE:
            return all(value[i] < self.standard for i in range(self.standard))
        if isinstance(value_type, Seq):
            return len(value) <= self.seq_bound and all(self.is_standard(v, value_type.element) for v in value)
        raise UnsupportedFragmentError(f"no standardness for type {render_type(value_type)}")

    def domain(self, value_type: FinType, standard: bool = False) -> Tuple[Value, ...]:
        """All elements of `value_type`, or only the standard ones."""
        return _domain(self.universe, self.standard, self.seq_bound, value_type, standard)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "U": self.universe,
            "S": self.standard,
            "seqBound": self.seq_bound,
            "relations": {name: sorted(_listify(row) for row in table) for name, table in sorted(self.relations.items())},
            "functions": {name: list(table) for name, table in sorted(self.functions.items())},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TwoLevelModel":
        relations = {
            name: frozenset(_tuplify(row) for row in rows) for name, rows in data.get("relations", {}).items()
        }
        functions = {name: tuple(table) for name, table in data.get("functions", {}).items()}
        return cls(int(data["U"]), int(data["S"]), int(data.get("seqBound", data["S"])), relations, functions)

    @classmethod
    def load(cls, source: Union[str, Path]) -> "TwoLevelModel":
        return cls.from_dict(json.loads(Path(source).read_text(encoding="utf-8")))


def _tuplify(value):
    if isinstance(value, list):
        return tuple(_tuplify(v) for v in value)
    return value


def _listify(value):
    if isinstance(value, tuple):
        return [_listify(v) for v in value]
    return value


@lru_cache(maxsize=256)
def _domain(universe: int, standard: int, seq_bound: int, value_type: FinType, only_standard: bool) -> Tuple[Value, ...]:
    bound = standard if only_standard else universe
    if value_type == NAT:
        return tuple(range(bound))
    if value_type == ONE:
        if only_standard:
            tables = product(*([range(standard)] * standard + [range(universe)] * (universe - standard)))
        else:
            tables = product(range(universe), repeat=universe)
        return tuple(tables)
    if isinstance(value_type, Seq):
        elements = _domain(universe, standard, seq_bound, value_type.element, only_standard)
        size = sum(len(elements) ** k for k in range(seq_bound + 1))
        if size > MAX_DOMAIN:
            raise UnsupportedFragmentError(f"domain of {render_type(value_type)} has {size} elements")
        return tuple(seq for k in range(seq_bound + 1) for seq in product(elements, repeat=k))
    raise UnsupportedFragmentError(f"cannot enumerate type {render_type(value_type)}")


def iter_assignments(model: TwoLevelModel, variables: Dict[str, FinType]) -> Iterator[Dict[str, Value]]:
    names = sorted(variables)
    domains = [model.domain(variables[name]) for name in names]
    for values in product(*domains):
        yield dict(zip(names, values))
