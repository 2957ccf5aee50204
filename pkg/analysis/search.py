from dataclasses import dataclass
from typing import Callable, Optional

from config.nsakit_config import NsaConfig

NatFunction = Callable[[int], int]


@dataclass(frozen=True)
class SearchOperator:
    """Feferman-style search, capped: least zero at an index <= cap, else None"""
    cap: int = NsaConfig.SEARCH_CAP

    def search(self, f: NatFunction) -> Optional[int]:
        for n in range(self.cap + 1):
            if f(n) == 0:
                return n
        return None

    def __call__(self, f: NatFunction) -> Optional[int]:
        return self.search(f)


def mu_search(f: NatFunction, op: SearchOperator) -> Optional[int]:
    return op.search(f)


def bounded_search(f: NatFunction, bound: int) -> Optional[int]:
    """Least zero of f on [0, bound]."""
    return SearchOperator(bound).search(f)
