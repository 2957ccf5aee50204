from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True, slots=True)
class Nat:
    """Type 0"""

    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True, slots=True)
class Arrow:
    """Function type domain -> codomain"""
    domain: "FinType"
    codomain: "FinType"

    def __str__(self) -> str:
        return render_type(self)


@dataclass(frozen=True, slots=True)
class Seq:
    """Finite sequences over an element type (the starred type)"""
    element: "FinType"

    def __str__(self) -> str:
        return render_type(self)


FinType = Union[Nat, Arrow, Seq]

NAT = Nat()
ONE = Arrow(NAT, NAT)
TWO = Arrow(ONE, NAT)
NAT_SEQ = Seq(NAT)


def arrow(*types: FinType) -> FinType:
    """Right-associated arrow chain: arrow(a, b, c) is a -> (b -> c)."""
    result = types[-1]
    for domain in reversed(types[:-1]):
        result = Arrow(domain, result)
    return result


def type_depth(t: FinType) -> int:
    match t:
        case Nat():
            return 0
        case Arrow(domain, codomain):
            return max(type_depth(domain) + 1, type_depth(codomain))
        case Seq(element):
            return type_depth(element)
    raise TypeError(f"not a finite type: {t!r}")


def render_type(t: FinType) -> str:
    """Surface syntax of a type; 0->0 prints as 1."""
    match t:
        case Nat():
            return "0"
        case Arrow(Nat(), Nat()):
            return "1"
        case Arrow(domain, codomain):
            left = render_type(domain)
            if isinstance(domain, Arrow) and domain != ONE:
                left = f"({left})"
            return f"{left}->{render_type(codomain)}"
        case Seq(element):
            inner = render_type(element)
            if isinstance(element, Arrow) and element != ONE:
                inner = f"({inner})"
            return f"{inner}*"
    return str(t)
