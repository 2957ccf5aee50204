"""Reals as Cauchy codes with a fixed 2^-n modulus, over exact rationals."""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional

from utils.precision import Comparison, PrecisionRefiner


def dyadic(n: int) -> Fraction:
    return Fraction(1, 2 ** n)


def render_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class RealCode:
    """q: N -> Q with |q(n) - q(m)| <= 2^-n for all m >= n"""

    def __init__(self, generator: Callable[[int], Fraction], name: str = "x"):
        self.generator = generator
        self.name = name
        self._cache: Dict[int, Fraction] = {}

    def approx(self, n: int) -> Fraction:
        if n not in self._cache:
            self._cache[n] = Fraction(self.generator(n))
        return self._cache[n]

    @classmethod
    def exact(cls, value, name: Optional[str] = None) -> "RealCode":
        value = Fraction(value)
        return cls(lambda n: value, name or render_rational(value))

    def clamped(self) -> "RealCode":
        """Same real pushed into [0, 1]; clamping never widens the modulus."""
        return RealCode(lambda n: min(max(self.approx(n), Fraction(0)), Fraction(1)), f"clamp({self.name})")

    def __repr__(self) -> str:
        return f"RealCode({self.name})"


@dataclass(frozen=True)
class RealFunction:
    """Function on [0,1]; `shift` is log2 of a Lipschitz bound, `exact` marks rational-in rational-out evaluation"""
    name: str
    rational: Callable[[Fraction], Fraction] = field(compare=False)
    shift: int = 1
    exact: bool = True
    modulus: Optional[Callable[[int], int]] = field(default=None, compare=False)

    def at(self, x: Fraction) -> Fraction:
        return self.rational(Fraction(x))

    def __call__(self, x: RealCode) -> RealCode:
        inner = x.clamped()
        return RealCode(lambda n: self.rational(inner.approx(n + self.shift)), f"{self.name}({x.name})")


@dataclass(frozen=True)
class RealSequence:
    name: str
    term: Callable[[int], RealCode] = field(compare=False)

    def __call__(self, n: int) -> RealCode:
        return self.term(n)


def compare_lt(x: RealCode, y: RealCode, precision: int) -> Comparison:
    """x < y decided at one precision, or INDETERMINATE when the approximations overlap."""
    error = dyadic(precision)
    a, b = x.approx(precision), y.approx(precision)
    if a + error < b - error:
        return Comparison.TRUE
    if a - error >= b + error:
        return Comparison.FALSE
    return Comparison.INDETERMINATE


def less_than(x: RealCode, y: RealCode, refiner: PrecisionRefiner, start: int = 8) -> Comparison:
    return refiner.decide(lambda p: compare_lt(x, y, p), start)


def satisfies_modulus(x: RealCode, limit: int = 32) -> bool:
    """Sampled check of the Cauchy guarantee for n <= m <= limit."""
    return all(abs(x.approx(n) - x.approx(m)) <= dyadic(n) for n in range(limit + 1) for m in range(n, limit + 1))
