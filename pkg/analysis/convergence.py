"""Monotone convergence moduli from search, and search back from moduli."""
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Tuple

from analysis.reals import RealCode, RealSequence, dyadic
from analysis.search import NatFunction, SearchOperator, bounded_search
from config.nsakit_config import NsaConfig
from exceptions.nsakit_exceptions import CapExceededError

ConvergenceModulus = Callable[[RealSequence, int], int]


def mct_modulus(c: RealSequence, op: SearchOperator, k: int) -> int:
    """Least N with c_cap - c_N <= 1/(2k), both read at precision k+2.

    For nondecreasing c this puts every pair in [N, cap] within 1/k of each other.
    """
    precision = k + 2
    top = c(op.cap).approx(precision)
    half = Fraction(1, 2 * k)

    def gap_too_wide(n: int) -> int:
        return 0 if top - c(n).approx(precision) <= half else 1

    found = op.search(gap_too_wide)
    if found is None:
        raise CapExceededError(f"no convergence index for {c.name} at 1/{k}", op.cap, cell=f"{c.name}:k={k}")
    return found


def window_pairs(start: int, cap: int, samples: int = NsaConfig.WINDOW_SAMPLES) -> List[Tuple[int, int]]:
    """Deterministic spread of indices in [start, cap], paired up with the endpoints included."""
    if start >= cap:
        return [(cap, cap)]
    span = cap - start
    points = sorted({start + (span * i) // (samples - 1) for i in range(samples)} | {start, start + 1, cap})
    return [(a, b) for a in points for b in points if a <= b]


def window_holds(c: RealSequence, n: int, k: int, cap: int, pairs: Optional[Iterable[Tuple[int, int]]] = None) -> bool:
    """|c_M - c_N'| <= 1/k on the sampled pairs with M, N' in [n, cap]."""
    precision = k + 8
    slack = 2 * dyadic(precision)
    bound = Fraction(1, k)
    for a, b in pairs if pairs is not None else window_pairs(n, cap):
        if abs(c(a).approx(precision) - c(b).approx(precision)) > bound + slack:
            return False
    return True


def is_monotone_bounded(c: RealSequence, limit: int = 64, precision: int = 30) -> bool:
    """Sampled c_n <= c_{n+1} <= 1, up to the approximation error."""
    slack = 2 * dyadic(precision)
    values = [c(n).approx(precision) for n in range(limit + 1)]
    return all(a <= b + slack for a, b in zip(values, values[1:])) and all(v <= 1 + slack for v in values)


class ZeroIndicator:
    """c_n = 1 once f has a zero at some i <= n, else 0; scans f once, lazily"""

    def __init__(self, f: NatFunction):
        self.f = f
        self.scanned = -1
        self.first_zero: Optional[int] = None

    def value(self, n: int) -> int:
        while self.first_zero is None and self.scanned < n:
            self.scanned += 1
            if self.f(self.scanned) == 0:
                self.first_zero = self.scanned
        return 1 if self.first_zero is not None and self.first_zero <= n else 0

    def sequence(self) -> RealSequence:
        return RealSequence("zero-indicator", lambda n: RealCode.exact(self.value(n)))


def mct_functional(op: SearchOperator) -> ConvergenceModulus:
    """t(c)(k) realised by mct_modulus over a fixed search operator."""
    return lambda c, k: mct_modulus(c, op, k)


def mu_from_mct(t: ConvergenceModulus, f: NatFunction, cap: int, probe: int = 2) -> Optional[int]:
    """Search recovered from a convergence modulus.

    The indicator jumps by 1 > 1/probe at the first zero, so that zero
    cannot lie past t(indicator)(probe).
    """
    indicator = ZeroIndicator(f)
    bound = min(t(indicator.sequence(), probe), cap)
    return bounded_search(f, bound)
