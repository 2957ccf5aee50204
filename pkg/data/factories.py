import random
from fractions import Fraction
from functools import partial
from typing import List, Optional, Tuple

from analysis.partitions import Partition
from config.nsakit_config import NsaConfig
from core.terms import (
    App, Lam, MaxOf, MinOf, NumLit, Rec, SeqAppend, SeqGet, SeqLen, SeqLit, Succ, TermExpr, Var, Zero,
)
from core.types import NAT, NAT_SEQ, ONE, FinType
from data.models import MuCase
from gh.fan import BinaryTree
from tstar.library import ADD, DOUBLE, IDENTITY


def _zero_from(z: int, n: int) -> int:
    return max(z - n, 0)


def _only_zero_at(z: int, n: int) -> int:
    return 0 if n == z else 1


def _periodic(modulus: int, offset: int, n: int) -> int:
    return (n + offset) % modulus


def _never(c: int, n: int) -> int:
    return c + 1 + n % 2


class NsaDataFactory:
    """Seeded factories for partitions, binary trees, the search corpus and T* terms"""

    # tags sit at these fractions of their cell
    TAG_POSITIONS = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]
    CELL_WEIGHTS = [1, 2]
    TREE_BRANCH_PROBABILITY = 0.6
    EMPTY_TREE_PROBABILITY = 0.05
    MU_FAMILIES = ["zero-from", "only-zero-at", "periodic", "never"]

    @classmethod
    def admissible_partition(cls, rng: random.Random, modulus: int) -> Partition:
        """Random tagged partition with mesh < 1/modulus.

        With 2*modulus+1 or more cells and weights in {1, 2}, no cell exceeds
        2/(2*modulus+1) of the interval.
        """
        cells = 2 * modulus + 1 + rng.randint(0, modulus)
        weights = [rng.choice(cls.CELL_WEIGHTS) for _ in range(cells)]
        total = sum(weights)
        points, running = [Fraction(0)], 0
        for weight in weights:
            running += weight
            points.append(Fraction(running, total))
        tags = [a + rng.choice(cls.TAG_POSITIONS) * (b - a) for a, b in zip(points, points[1:])]
        return Partition(tuple(points), tuple(tags))

    @classmethod
    def partition_pairs(cls, seed: int, modulus: int, count: int = NsaConfig.PARTITION_PAIRS) -> List[Tuple[Partition, Partition]]:
        rng = random.Random(f"{seed}:{modulus}")
        return [(cls.admissible_partition(rng, modulus), cls.admissible_partition(rng, modulus)) for _ in range(count)]

    @classmethod
    def random_tree(cls, rng: random.Random, depth: int = NsaConfig.TREE_DEPTH) -> BinaryTree:
        """Prefix-closed by construction: a node is only grown from a member."""
        if rng.random() < cls.EMPTY_TREE_PROBABILITY:
            return BinaryTree(frozenset())
        nodes, frontier = {""}, [""]
        while frontier:
            node = frontier.pop()
            if len(node) >= depth:
                continue
            for bit in "01":
                if rng.random() < cls.TREE_BRANCH_PROBABILITY:
                    nodes.add(node + bit)
                    frontier.append(node + bit)
        return BinaryTree(frozenset(nodes))

    @classmethod
    def random_trees(cls, seed: int, count: int = NsaConfig.RANDOM_TREES, depth: int = NsaConfig.TREE_DEPTH) -> List[BinaryTree]:
        rng = random.Random(seed)
        return [cls.random_tree(rng, depth) for _ in range(count)]

    @classmethod
    def _zero_position(cls, rng: random.Random, cap: int) -> int:
        band = rng.randrange(4)
        if band == 0:
            return rng.randint(0, 30)
        if band == 1:
            return rng.randint(0, cap)
        if band == 2:
            return cap
        return cap + rng.randint(1, 100)

    @classmethod
    def mu_case(cls, rng: random.Random, index: int, cap: int) -> MuCase:
        family = cls.MU_FAMILIES[index % len(cls.MU_FAMILIES)]
        if family == "zero-from":
            z = cls._zero_position(rng, cap)
            return MuCase(f"zero-from-{z}", partial(_zero_from, z), z)
        if family == "only-zero-at":
            z = cls._zero_position(rng, cap)
            return MuCase(f"only-zero-at-{z}", partial(_only_zero_at, z), z)
        if family == "periodic":
            modulus = rng.randint(2, 40)
            offset = rng.randint(1, modulus - 1)
            return MuCase(f"periodic-{modulus}-{offset}", partial(_periodic, modulus, offset), modulus - offset)
        c = rng.randint(0, 5)
        return MuCase(f"never-{c}", partial(_never, c), None)

    @classmethod
    def mu_corpus(cls, seed: int, size: int = NsaConfig.MU_CORPUS_SIZE, cap: Optional[int] = None) -> List[MuCase]:
        """Deterministic search corpus mixing early, late, boundary and missing zeros"""
        cap = NsaConfig.SEARCH_CAP if cap is None else cap
        rng = random.Random(seed)
        return [cls.mu_case(rng, i, cap) for i in range(size)]

    @classmethod
    def random_term(cls, rng: random.Random, term_type: FinType = NAT, size: int = 3, scope: Tuple[Var, ...] = ()) -> TermExpr:
        """Well-typed term of type 0, 1 or 0* whose free variables all come from `scope`.

        Recursion counts are small literals so evaluation stays cheap.
        """
        if term_type == ONE:
            if size > 0 and rng.random() < 0.4:
                return rng.choice((IDENTITY, DOUBLE, App(ADD, cls.random_term(rng, NAT, size - 1, scope))))
            var = Var(f"v{len(scope)}", NAT)
            return Lam(var, cls.random_term(rng, NAT, size - 1, scope + (var,)))
        if term_type == NAT_SEQ:
            if size > 0 and rng.random() < 0.3:
                return SeqAppend(cls.random_term(rng, NAT_SEQ, size - 1, scope), cls.random_term(rng, NAT, size - 1, scope))
            return SeqLit(tuple(cls.random_term(rng, NAT, size - 1, scope) for _ in range(rng.randint(0, 3))), NAT)

        if size <= 0:
            if scope and rng.random() < 0.5:
                return rng.choice(scope)
            return rng.choice((Zero(), NumLit(rng.randrange(4))))
        roll = rng.randrange(7)
        if roll == 0:
            return Succ(cls.random_term(rng, NAT, size - 1, scope))
        if roll == 1:
            return App(cls.random_term(rng, ONE, size - 1, scope), cls.random_term(rng, NAT, size - 1, scope))
        if roll == 2:
            i, acc = Var(f"v{len(scope)}", NAT), Var(f"v{len(scope) + 1}", NAT)
            step = Lam(i, Lam(acc, cls.random_term(rng, NAT, size - 1, scope + (i, acc))))
            return App(Rec(cls.random_term(rng, NAT, size - 1, scope), step), NumLit(rng.randrange(4)))
        seq = cls.random_term(rng, NAT_SEQ, size - 1, scope)
        if roll == 3:
            return SeqLen(seq)
        if roll == 4:
            return SeqGet(seq, cls.random_term(rng, NAT, size - 1, scope))
        return MaxOf(seq) if roll == 5 else MinOf(seq)

    @classmethod
    def closed_terms(cls, seed: int, count: int, size: int = 3) -> List[TermExpr]:
        rng = random.Random(seed)
        return [cls.random_term(rng, NAT, size) for _ in range(count)]
