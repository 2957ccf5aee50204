"""Canonical approximations of the Gandy-Hyland functional and their stabilisation.

Reading of s*0*(λn)Γ(Y, s*(n+1)): position |s| holds 0 and position
|s|+1+n holds Γ at s extended by the single element n+1.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple

from config.nsakit_config import NsaConfig
from exceptions.nsakit_exceptions import DepthExceededError, GammaUndefinedError, PreconditionError
from gh.functionals import TypeTwoFunctional
from gh.oracles import FinitePrefix, InstrumentedOracle
from utils.logging import NsaLogger

logger = NsaLogger("nsakit.gh")

FiniteSeq = Tuple[int, ...]
Gamma = Callable[[FiniteSeq], Optional[int]]


class _Extension:
    """s*0*(λn) child(s*(n+1)) as an oracle"""

    def __init__(self, s: FiniteSeq, child: Callable[[FiniteSeq], int]):
        self.s = s
        self.child = child

    def query(self, position: int) -> int:
        if position < len(self.s):
            return self.s[position]
        if position == len(self.s):
            return 0
        return self.child(self.s + (position - len(self.s),))


class GhApproximation:
    """G(Y, s, M) for one fixed depth M, memoized per sequence"""

    def __init__(self, y: TypeTwoFunctional, depth: int):
        self.y = y
        self.depth = depth
        self.memo: Dict[FiniteSeq, int] = {}
        # set when a stopping node's evaluation read past its filled prefix
        self.truncated = False
        self.observed_modulus = 0
        self.observed_bound = 0

    def value(self, s: FiniteSeq) -> int:
        if s not in self.memo:
            self.memo[s] = self._compute(s)
            self.observed_bound = max(self.observed_bound, self.memo[s])
        return self.memo[s]

    def _compute(self, s: FiniteSeq) -> int:
        if len(s) >= self.depth:
            value, max_query = self.y.evaluate_instrumented(FinitePrefix(s))
            if max_query >= len(s):
                self.truncated = True
        else:
            recorder = InstrumentedOracle(_Extension(s, self.value))
            value = self.y.evaluate(recorder)
            max_query = recorder.max_query
        self.observed_modulus = max(self.observed_modulus, max_query + 1)
        return value


def gh_approx(y: TypeTwoFunctional, s: Sequence[int], depth: int) -> int:
    return GhApproximation(y, depth).value(tuple(s))


def gh_approx_reference(y: TypeTwoFunctional, s: Sequence[int], depth: int) -> int:
    """Same recursion without memoization; only for cross-checks at tiny depth."""
    s = tuple(s)
    if len(s) >= depth:
        return y.evaluate(FinitePrefix(s))
    return y.evaluate(_Extension(s, lambda t: gh_approx_reference(y, t, depth)))


@dataclass(frozen=True)
class GhCertificate:
    value: int
    certified_at: int
    observed_modulus: int
    observed_bound: int

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "certifiedAt": self.certified_at,
            "observedModulus": self.observed_modulus,
            "observedBound": self.observed_bound,
        }


def gh_value(y: TypeTwoFunctional, s: Sequence[int], max_depth: int = NsaConfig.MAX_DEPTH) -> GhCertificate:
    """Γ(Y, s) read off the least depth at which no branch was cut short."""
    if not y.declared_continuous:
        raise PreconditionError(f"{y.name} is not declared continuous")
    s = tuple(s)
    for depth in range(max_depth + 1):
        approximation = GhApproximation(y, depth)
        value = approximation.value(s)
        if not approximation.truncated:
            return GhCertificate(value, depth, approximation.observed_modulus, approximation.observed_bound)
    logger.warning(f"{y.name} at {list(s)} not certified within depth {max_depth}")
    raise DepthExceededError(max_depth, cell=f"{y.name}:{list(s)}")


def gh_threshold(y: TypeTwoFunctional, s: Sequence[int], max_depth: int = NsaConfig.MAX_DEPTH) -> int:
    return gh_value(y, s, max_depth).certified_at


def is_stable(y: TypeTwoFunctional, s: Sequence[int], start: int, width: int = NsaConfig.GH_SWEEP_WIDTH) -> bool:
    """G(Y, s, N) takes one value for N in [start, start + width]."""
    return len({gh_approx(y, s, n) for n in range(start, start + width + 1)}) == 1


def gamma_from_gh_value(y: TypeTwoFunctional, max_depth: int = NsaConfig.MAX_DEPTH) -> Gamma:
    @lru_cache(maxsize=None)
    def gamma(s: FiniteSeq) -> int:
        return gh_value(y, s, max_depth).value
    return gamma


def check_gh_equation(y: TypeTwoFunctional, s: Sequence[int], gamma: Gamma) -> bool:
    """Γ(Y, s) = Y(s*0*(λn)Γ(Y, s*(n+1))) exactly at s."""
    s = tuple(s)

    def lookup(t: FiniteSeq) -> int:
        try:
            value = gamma(t)
        except KeyError:
            value = None
        if value is None:
            raise GammaUndefinedError(t)
        return value

    return lookup(s) == y.evaluate(_Extension(s, lookup))
