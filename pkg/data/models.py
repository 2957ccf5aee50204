import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional

from config.nsakit_config import NsaConfig
from exceptions.nsakit_exceptions import ConfigurationError


@dataclass(frozen=True)
class Caps:
    """Budgets of one run, echoed in every report"""
    search: int = NsaConfig.SEARCH_CAP
    depth: int = NsaConfig.DEPTH_CAP
    max_depth: int = NsaConfig.MAX_DEPTH
    universe: int = NsaConfig.MODEL_UNIVERSE

    FIELDS = {"search": "search", "depth": "depth", "max-depth": "max_depth", "universe": "universe"}

    def __post_init__(self):
        for name, value in asdict(self).items():
            if value <= 0:
                raise ConfigurationError(f"cap '{name}' must be positive, got {value}")
        if self.universe > NsaConfig.MODEL_MAX_UNIVERSE:
            raise ConfigurationError(f"universe cap {self.universe} exceeds {NsaConfig.MODEL_MAX_UNIVERSE}")

    @classmethod
    def parse(cls, text: Optional[str]) -> "Caps":
        """'search=N,depth=N,max-depth=N,universe=N', any subset"""
        if not text:
            return cls()
        values: Dict[str, int] = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, sep, raw = part.partition("=")
            if not sep or key.strip() not in cls.FIELDS:
                raise ConfigurationError(f"unknown cap '{part}'")
            try:
                values[cls.FIELDS[key.strip()]] = int(raw)
            except ValueError:
                raise ConfigurationError(f"cap '{key}' needs an integer, got '{raw}'") from None
        return cls(**values)

    def to_dict(self) -> Dict[str, int]:
        return {"search": self.search, "depth": self.depth, "maxDepth": self.max_depth, "universe": self.universe}


@dataclass
class RunConfig:
    """Everything one CLI invocation needs"""
    command: str
    inputs: List[Path] = field(default_factory=list)
    seed: int = NsaConfig.DEFAULT_SEED
    caps: Caps = field(default_factory=Caps)
    output_format: str = "text"
    annotations: Optional[Path] = None
    models_dir: Optional[Path] = None
    case_study: Optional[str] = None

    def __post_init__(self):
        if self.output_format not in ("text", "json"):
            raise ConfigurationError(f"unknown output format '{self.output_format}'")

    @staticmethod
    def resolve_seed(seed: Optional[int], env: Mapping[str, str] = os.environ) -> int:
        """NSAKIT_SEED wins over the flag; the default applies when neither is set."""
        raw = env.get(NsaConfig.SEED_ENV_VAR)
        if raw is not None and raw.strip():
            try:
                return int(raw)
            except ValueError:
                raise ConfigurationError(f"{NsaConfig.SEED_ENV_VAR} must be an integer, got '{raw}'") from None
        return NsaConfig.DEFAULT_SEED if seed is None else seed


@dataclass
class SweepCell:
    """One verification cell of a case study"""
    name: str
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, **self.detail}


@dataclass
class CaseStudyReport:
    name: str
    cells: List[SweepCell] = field(default_factory=list)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    cap_failure: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.cap_failure is None and all(cell.passed for cell in self.cells)

    @property
    def failing_cells(self) -> List[SweepCell]:
        return [cell for cell in self.cells if not cell.passed]

    def to_dict(self) -> Dict[str, Any]:
        body = {
            "caseStudy": self.name,
            "passed": self.passed,
            "cellCount": len(self.cells),
            "failingCells": [cell.name for cell in self.failing_cells],
            "cells": [cell.to_dict() for cell in self.cells],
            "witnesses": self.witnesses,
        }
        if self.cap_failure is not None:
            body["capExceeded"] = self.cap_failure
        return body


@dataclass
class NormalizeReport:
    input: str
    final: str
    normal_form: bool
    trace: Optional[Dict[str, Any]] = None
    stuck_position: Optional[List[int]] = None

    def to_dict(self) -> Dict[str, Any]:
        body = {"input": self.input, "final": self.final, "normalForm": self.normal_form, "trace": self.trace}
        if self.stuck_position is not None:
            body["stuckPosition"] = self.stuck_position
        return body


@dataclass
class ModelCheckReport:
    trace: str
    model_count: int
    checks: int
    counterexample: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "trace": self.trace,
            "models": self.model_count,
            "checks": self.checks,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


@dataclass(frozen=True)
class MuCase:
    """Search-corpus entry with its known first zero"""
    name: str
    f: Callable[[int], int] = field(compare=False)
    first_zero: Optional[int] = None

    def expected(self, cap: int) -> Optional[int]:
        return self.first_zero if self.first_zero is not None and self.first_zero <= cap else None
