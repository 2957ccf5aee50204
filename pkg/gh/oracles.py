"""Points of Baire space behind a query interface."""
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Protocol, Set, Tuple


class BaireOracle(Protocol):
    def query(self, position: int) -> int:
        ...


@dataclass(frozen=True)
class FinitePrefix:
    """seq followed by a constant tail"""
    seq: Tuple[int, ...]
    tail: int = 0

    def query(self, position: int) -> int:
        return self.seq[position] if position < len(self.seq) else self.tail

    def prefix(self, length: int) -> Tuple[int, ...]:
        return tuple(self.query(i) for i in range(length))

    def __str__(self) -> str:
        return "".join(map(str, self.seq)) + f"·{self.tail}^ω"


@dataclass(frozen=True)
class Computed:
    generator: Callable[[int], int] = field(compare=False)
    name: str = "computed"

    def query(self, position: int) -> int:
        return self.generator(position)


class InstrumentedOracle:
    """Records every position asked of the wrapped oracle"""

    def __init__(self, oracle: BaireOracle):
        self.oracle = oracle
        self.queried: Set[int] = set()

    def query(self, position: int) -> int:
        self.queried.add(position)
        return self.oracle.query(position)

    @property
    def max_query(self) -> int:
        return max(self.queried, default=-1)


def zeros() -> FinitePrefix:
    return FinitePrefix(())


def binary_strings(length: int) -> Iterator[Tuple[int, ...]]:
    return product((0, 1), repeat=length)


def initial_segment(oracle: BaireOracle, length: int) -> Tuple[int, ...]:
    return tuple(oracle.query(i) for i in range(length))
