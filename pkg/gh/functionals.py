"""Type-two functionals: Python callables or a small JSON expression language."""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

from exceptions.nsakit_exceptions import FunctionalSyntaxError
from gh.oracles import BaireOracle, FinitePrefix, InstrumentedOracle


@dataclass(frozen=True)
class Const:
    value: int

    def evaluate(self, f: BaireOracle) -> int:
        return self.value


@dataclass(frozen=True)
class Proj:
    index: int

    def evaluate(self, f: BaireOracle) -> int:
        return f.query(self.index)


@dataclass(frozen=True)
class Sum:
    terms: Tuple["Node", ...]

    def evaluate(self, f: BaireOracle) -> int:
        return sum(term.evaluate(f) for term in self.terms)


@dataclass(frozen=True)
class Lookup:
    """f(min(index, bound) + offset)"""
    index: "Node"
    bound: int
    offset: int = 0

    def evaluate(self, f: BaireOracle) -> int:
        return f.query(min(self.index.evaluate(f), self.bound) + self.offset)


@dataclass(frozen=True)
class FirstOne:
    """Least i < cap with f(i) != 0, else cap"""
    cap: int

    def evaluate(self, f: BaireOracle) -> int:
        for i in range(self.cap):
            if f.query(i) != 0:
                return i
        return self.cap


Node = Any


def parse_node(raw: Dict[str, Any]) -> Node:
    try:
        op = raw["op"]
        if op == "const":
            return Const(int(raw["value"]))
        if op == "proj":
            return Proj(int(raw["index"]))
        if op == "sum":
            return Sum(tuple(parse_node(term) for term in raw["terms"]))
        if op == "lookup":
            return Lookup(parse_node(raw["index"]), int(raw["bound"]), int(raw.get("offset", 0)))
        if op == "first_one":
            return FirstOne(int(raw["cap"]))
    except (KeyError, TypeError, ValueError) as e:
        raise FunctionalSyntaxError(f"bad functional node {raw!r}: {e}") from e
    raise FunctionalSyntaxError(f"unknown functional operator {raw.get('op')!r}")


@dataclass(frozen=True)
class TypeTwoFunctional:
    """Y: N^N -> N evaluated against an oracle"""
    name: str
    body: Callable[[BaireOracle], int] = field(compare=False)
    declared_continuous: bool = True

    def evaluate(self, oracle: BaireOracle) -> int:
        return self.body(oracle)

    def evaluate_instrumented(self, oracle: BaireOracle) -> Tuple[int, int]:
        """(value, largest queried position), the position being -1 when nothing was asked"""
        recorder = InstrumentedOracle(oracle)
        value = self.body(recorder)
        return value, recorder.max_query

    def __call__(self, oracle: BaireOracle) -> int:
        return self.evaluate(oracle)


def from_node(name: str, node: Node, declared_continuous: bool = True) -> TypeTwoFunctional:
    return TypeTwoFunctional(name, node.evaluate, declared_continuous)


def from_json(raw: Dict[str, Any]) -> TypeTwoFunctional:
    return from_node(raw["name"], parse_node(raw["body"]), raw.get("continuous", True))


def replay_consistent(y: TypeTwoFunctional, oracle: BaireOracle) -> bool:
    """Value survives truncating the input to the queried prefix followed by zeros."""
    value, max_query = y.evaluate_instrumented(oracle)
    truncated = FinitePrefix(tuple(oracle.query(i) for i in range(max_query + 1)))
    return y.evaluate(truncated) == value


def constant(value: int, name: Optional[str] = None) -> TypeTwoFunctional:
    return from_node(name or f"const{value}", Const(value))
