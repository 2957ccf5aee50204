from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log2
from typing import Sequence, Tuple

from analysis.reals import RealCode, RealFunction
from exceptions.nsakit_exceptions import InvalidPartitionError


@dataclass(frozen=True)
class Partition:
    """Tagged partition 0 = x_0 < ... < x_M = 1 with t_i in [x_i, x_{i+1}]"""
    points: Tuple[Fraction, ...]
    tags: Tuple[Fraction, ...]

    def __post_init__(self):
        points, tags = self.points, self.tags
        if len(points) < 2 or points[0] != 0 or points[-1] != 1:
            raise InvalidPartitionError("points must run from 0 to 1")
        if any(a >= b for a, b in zip(points, points[1:])):
            raise InvalidPartitionError("points must be strictly increasing")
        if len(tags) != len(points) - 1:
            raise InvalidPartitionError(f"{len(points) - 1} cells need as many tags, got {len(tags)}")
        for i, tag in enumerate(tags):
            if not points[i] <= tag <= points[i + 1]:
                raise InvalidPartitionError(f"tag {tag} outside cell [{points[i]}, {points[i + 1]}]")

    @classmethod
    def of(cls, points: Sequence, tags: Sequence) -> "Partition":
        return cls(tuple(Fraction(p) for p in points), tuple(Fraction(t) for t in tags))

    @classmethod
    def uniform(cls, cells: int, tagging: str = "left") -> "Partition":
        points = tuple(Fraction(i, cells) for i in range(cells + 1))
        offset = {"left": Fraction(0), "mid": Fraction(1, 2), "right": Fraction(1)}[tagging]
        tags = tuple(points[i] + offset * (points[i + 1] - points[i]) for i in range(cells))
        return cls(points, tags)

    @property
    def cells(self) -> int:
        return len(self.tags)

    def widths(self):
        return (b - a for a, b in zip(self.points, self.points[1:]))


def mesh(p: Partition) -> Fraction:
    """Largest cell width."""
    return max(p.widths())


def riemann_sum(f: RealFunction, p: Partition, precision: int = 24) -> Fraction:
    """Sum of f(t_i) * (x_{i+1} - x_i), each term within 2^-precision / M.

    Tags are rational, so functions exact on rationals contribute no error at all.
    """
    if f.exact:
        return sum((f.at(tag) * width for tag, width in zip(p.tags, p.widths())), Fraction(0))
    per_term = precision + ceil(log2(p.cells)) if p.cells > 1 else precision
    total = Fraction(0)
    for tag, width in zip(p.tags, p.widths()):
        total += f(RealCode.exact(tag)).approx(per_term) * width
    return total


def common_refinement(p: Partition, q: Partition) -> Partition:
    """Union of the points of p and q, tagged at left endpoints."""
    points = tuple(sorted(set(p.points) | set(q.points)))
    return Partition(points, points[:-1])
