from pathlib import Path

import pytest

from config.nsakit_config import NsaConfig
from core.parser import parse
from data.models import Caps
from model.generators import model_family_for_steps
from rewrite.annotations import load_annotations
from rewrite.engine import normalize
from studies.components.sweep import SweepRunner
from utils.logging import NsaLogger
from utils.report_manager import ReportManager


def corpus_path(name: str) -> Path:
    return NsaConfig.CORPUS_DIR / name


def corpus_formula(name: str):
    return parse(corpus_path(f"{name}.nsa").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def logger():
    return NsaLogger("nsakit.tests")


@pytest.fixture
def report_manager(tmp_path):
    return ReportManager(tmp_path / "reports")


@pytest.fixture
def sweep(logger):
    return SweepRunner(logger)


@pytest.fixture
def small_caps():
    return Caps(search=500, depth=6, max_depth=10, universe=3)


@pytest.fixture(scope="session")
def uniform_continuity():
    return corpus_formula("uniform_continuity")


@pytest.fixture(scope="session")
def uniform_continuity_annotations():
    return load_annotations(corpus_path("uniform_continuity.annotations.json"))


@pytest.fixture(scope="session")
def integrability():
    return corpus_formula("nonstandard_integrability")


@pytest.fixture(scope="session")
def integrability_annotations():
    return load_annotations(corpus_path("nonstandard_integrability.annotations.json"))


@pytest.fixture(scope="session")
def uniform_continuity_trace(uniform_continuity, uniform_continuity_annotations):
    return normalize(uniform_continuity, uniform_continuity_annotations)[1]


@pytest.fixture(scope="session")
def small_models(uniform_continuity_trace):
    """Seeded family over every shape with U <= 3, interpreting every symbol the trace mentions"""
    return model_family_for_steps(uniform_continuity_trace.steps, seed=0, max_universe=3)
