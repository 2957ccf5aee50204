from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Tuple, Union

from core.terms import TermExpr


@dataclass(frozen=True)
class Closure:
    """Function value: a lambda body waiting for its argument"""
    var: str
    body: TermExpr
    env: Mapping[str, Any] = field(default_factory=dict, compare=False, hash=False)


@dataclass(frozen=True)
class RecursorValue:
    """rec(base, step) as a function of its numeral argument"""
    base: Any
    step: Any


@dataclass(frozen=True)
class NativeFunction:
    """Python callable usable wherever a T* function is expected"""
    name: str
    fn: Callable[[Any], Any] = field(compare=False, hash=False)


# naturals are Python ints, sequences are tuples
TStarValue = Union[int, Tuple, Closure, RecursorValue, NativeFunction]


def native(name: str, fn: Callable) -> NativeFunction:
    return NativeFunction(name, fn)


def curried(name: str, fn: Callable, arity: int) -> NativeFunction:
    """Wrap an n-ary Python function as a curried T* value."""
    def collect(args):
        if len(args) == arity:
            return fn(*args)
        return NativeFunction(f"{name}/{len(args)}", lambda x: collect(args + (x,)))
    return collect(()) if arity == 0 else NativeFunction(name, lambda x: collect((x,)))


def show_value(value: TStarValue) -> str:
    match value:
        case bool():
            return str(int(value))
        case int():
            return str(value)
        case tuple():
            return "<" + ", ".join(show_value(v) for v in value) + ">"
        case Closure(var=var):
            return f"<closure {var}>"
        case RecursorValue():
            return "<recursor>"
        case NativeFunction(name=name):
            return f"<native {name}>"
    return repr(value)
