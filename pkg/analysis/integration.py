"""Riemann integrability with an explicit modulus, checked on partition pairs."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from analysis.partitions import Partition, common_refinement, mesh, riemann_sum
from analysis.reals import RealFunction
from config.nsakit_config import NsaConfig
from exceptions.nsakit_exceptions import PreconditionError

Modulus = Callable[[int], int]


def integration_modulus(g: Modulus, n: int) -> int:
    """t(g)(n) = g(2n): meshes below 1/g(2n) put both sums within 1/(2n) of their common refinement."""
    return g(2 * n)


@dataclass(frozen=True)
class CriCheck:
    holds: bool
    deviation: Fraction
    bound: Fraction


def _require_fine(p: Partition, modulus: int, label: str):
    if mesh(p) >= Fraction(1, modulus):
        raise PreconditionError(f"mesh of {label} is {mesh(p)}, needs < 1/{modulus}")


def measure_cri(f: RealFunction, g: Modulus, n: int, p: Partition, q: Partition,
                precision: int = NsaConfig.WORKING_PRECISION) -> CriCheck:
    modulus = integration_modulus(g, n)
    _require_fine(p, modulus, "first partition")
    _require_fine(q, modulus, "second partition")
    deviation = abs(riemann_sum(f, p, precision) - riemann_sum(f, q, precision))
    bound = Fraction(1, n)
    return CriCheck(deviation <= bound, deviation, bound)


def check_cri(f: RealFunction, g: Modulus, n: int, p: Partition, q: Partition,
              precision: int = NsaConfig.WORKING_PRECISION) -> bool:
    """|S_p(f) - S_q(f)| <= 1/n for two partitions finer than 1/t(g)(n)."""
    return measure_cri(f, g, n, p, q, precision).holds


def refinement_gap(f: RealFunction, p: Partition, q: Partition,
                   precision: int = NsaConfig.WORKING_PRECISION) -> Fraction:
    """Largest distance of S_p or S_q from the sum over their common refinement."""
    reference = riemann_sum(f, common_refinement(p, q), precision)
    return max(abs(riemann_sum(f, p, precision) - reference), abs(riemann_sum(f, q, precision) - reference))
