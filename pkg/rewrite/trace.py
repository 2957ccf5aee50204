"""Rewrite steps, traces and the witness operations they record."""
import json
import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from core.formulas import Formula, Path
from core.parser import parse
from core.printer import print_formula


class Rule:
    EXPAND = "R1"
    PULL = "R2"
    HERBRANDIZE = "R3"
    DROP_ST = "R4"
    IDEALISE = "R5"
    COLLAPSE = "R6"
    NF_CHECK = "NF-check"


_OP_SYNTAX = re.compile(r"^(?P<kind>[a-z-]+)\((?P<body>.*)\)$")


@dataclass(frozen=True, slots=True)
class WitnessOp:
    """Term-level action of one step; `bindings` pair a new name with what it stands for"""
    kind: str
    bindings: Tuple[Tuple[str, str], ...] = ()

    def __str__(self) -> str:
        parts = [f"{new}:{old}" if old else new for new, old in self.bindings]
        return f"{self.kind}({', '.join(parts)})"

    @classmethod
    def parse(cls, text: str) -> "WitnessOp":
        match = _OP_SYNTAX.match(text.strip())
        if match is None:
            raise ValueError(f"malformed witness operation {text!r}")
        bindings = []
        for part in filter(None, (p.strip() for p in match["body"].split(","))):
            new, _, old = part.partition(":")
            bindings.append((new, old))
        return cls(match["kind"], tuple(bindings))

    def lookup(self, name: str) -> Optional[str]:
        for new, old in self.bindings:
            if new == name:
                return old
        return None


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    path: Path
    before: Formula
    after: Formula
    witness_op: WitnessOp

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule,
            "path": list(self.path),
            "before": print_formula(self.before),
            "after": print_formula(self.after),
            "witness_op": str(self.witness_op),
        }


@dataclass
class RewriteTrace:
    """Ordered steps from `initial` to `final`"""
    initial: Formula
    final: Formula
    steps: List[RewriteStep] = field(default_factory=list)

    @property
    def rules(self) -> List[str]:
        return [step.rule for step in self.steps]

    def composes(self) -> bool:
        current = self.initial
        for step in self.steps:
            if step.before != current:
                return False
            current = step.after
        return current == self.final

    def to_dict(self) -> Dict[str, Any]:
        return {
            "initial": print_formula(self.initial),
            "final": print_formula(self.final),
            "steps": [step.to_dict() for step in self.steps],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RewriteTrace":
        """Formulas are reparsed; reparsing is stable on printer output."""
        steps = [
            RewriteStep(
                rule=item["rule"],
                path=tuple(item["path"]),
                before=parse(item["before"]),
                after=parse(item["after"]),
                witness_op=WitnessOp.parse(item["witness_op"]),
            )
            for item in data["steps"]
        ]
        return cls(parse(data["initial"]), parse(data["final"]), steps)

    @classmethod
    def from_json(cls, text: str) -> "RewriteTrace":
        return cls.from_dict(json.loads(text))
