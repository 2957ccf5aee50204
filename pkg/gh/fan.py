"""Fan functional on Cantor space and the special fan functional built from it."""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Sequence, Tuple, Union

from config.nsakit_config import NsaConfig
from exceptions.nsakit_exceptions import DepthExceededError, InvalidTreeError
from gh.functionals import TypeTwoFunctional
from gh.oracles import FinitePrefix, binary_strings
from utils.logging import NsaLogger

logger = NsaLogger("nsakit.gh")


def _as_string(node: Union[str, Sequence[int]]) -> str:
    return node if isinstance(node, str) else "".join(str(bit) for bit in node)


@dataclass(frozen=True)
class BinaryTree:
    """Finite prefix-closed set of binary strings"""
    nodes: FrozenSet[str]

    def __post_init__(self):
        for node in self.nodes:
            if set(node) - {"0", "1"}:
                raise InvalidTreeError(f"'{node}' is not a binary string")
            if node and node[:-1] not in self.nodes:
                raise InvalidTreeError(f"'{node}' is in the tree but its parent '{node[:-1]}' is not")

    @classmethod
    def of(cls, nodes: Iterable[Union[str, Sequence[int]]]) -> "BinaryTree":
        return cls(frozenset(_as_string(node) for node in nodes))

    @classmethod
    def full(cls, depth: int) -> "BinaryTree":
        return cls(frozenset("".join(map(str, bits)) for d in range(depth + 1) for bits in binary_strings(d)))

    def __contains__(self, node) -> bool:
        return _as_string(node) in self.nodes

    @property
    def depth(self) -> int:
        return max((len(node) for node in self.nodes), default=-1)


def fan_modulus(g: TypeTwoFunctional, depth_cap: int = NsaConfig.DEPTH_CAP) -> Tuple[int, int]:
    """(N, B): g reads only the first N bits of any binary input and never exceeds B."""
    for depth in range(depth_cap + 1):
        values = []
        for bits in binary_strings(depth):
            value, max_query = g.evaluate_instrumented(FinitePrefix(bits))
            if max_query >= depth:
                break
            values.append(value)
        else:
            return depth, max(values)
    logger.warning(f"{g.name} has no uniform modulus within depth {depth_cap}")
    raise DepthExceededError(depth_cap, cell=g.name)


@dataclass(frozen=True)
class SpecialFanOutput:
    bound: int
    witnesses: Tuple[FinitePrefix, ...]
    modulus: int
    value_bound: int

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "witnessCount": len(self.witnesses),
            "modulus": self.modulus,
            "valueBound": self.value_bound,
        }


def special_fan(g: TypeTwoFunctional, depth_cap: int = NsaConfig.DEPTH_CAP) -> SpecialFanOutput:
    """Bound K = max(N, B) and every length-K binary string padded with zeros.

    Any binary β agrees with the witness β̄K·0 on at least g(β̄K·0) bits.
    """
    modulus, value_bound = fan_modulus(g, depth_cap)
    bound = max(modulus, value_bound)
    witnesses = tuple(FinitePrefix(bits) for bits in binary_strings(bound))
    return SpecialFanOutput(bound, witnesses, modulus, value_bound)


def verify_scf(out: SpecialFanOutput, g: TypeTwoFunctional, tree: BinaryTree) -> bool:
    """If every witness α leaves T by ᾱg(α), then every binary β leaves T by length out.bound."""
    antecedent = all(alpha.prefix(g.evaluate(alpha)) not in tree for alpha in out.witnesses)
    if not antecedent:
        return True
    return all(
        any(beta[:i] not in tree for i in range(out.bound + 1))
        for beta in binary_strings(out.bound)
    )
