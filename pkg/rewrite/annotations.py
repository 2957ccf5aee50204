import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, List, Union


class Direction(str, Enum):
    UPWARD = "upward"
    DOWNWARD = "downward"


@dataclass(frozen=True, slots=True)
class MonotoneAnnotation:
    """User claim that the matrix stays true for larger (upward) or smaller (downward) values of `variable`.

    On a standard universal in an antecedent the annotation instead licenses
    dropping its st qualifier.
    """
    variable: str
    direction: Direction = Direction.UPWARD

    def to_dict(self) -> Dict[str, str]:
        return {"variable": self.variable, "direction": self.direction.value}

    @classmethod
    def from_dict(cls, data: Dict[str, str]) -> "MonotoneAnnotation":
        return cls(data["variable"], Direction(data.get("direction", Direction.UPWARD.value)))


def index_annotations(annotations: Iterable[MonotoneAnnotation]) -> Dict[str, MonotoneAnnotation]:
    return {a.variable: a for a in annotations}


def parse_annotation_text(text: str) -> List[MonotoneAnnotation]:
    """`N:up,M1:down,k` style list; a bare name means upward."""
    result = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        name, _, direction = item.partition(":")
        direction = {"": Direction.UPWARD, "up": Direction.UPWARD, "down": Direction.DOWNWARD}.get(
            direction, None
        ) or Direction(direction)
        result.append(MonotoneAnnotation(name, direction))
    return result


def load_annotations(source: Union[str, Path]) -> List[MonotoneAnnotation]:
    """Annotation file: a JSON list of {variable, direction} objects."""
    data = json.loads(Path(source).read_text(encoding="utf-8"))
    return [MonotoneAnnotation.from_dict(item) for item in data]
