import json
import logging
from pathlib import Path

import pytest

from analysis.library import load_library
from config.nsakit_config import NsaConfig
from data.factories import NsaDataFactory
from data.models import Caps, CaseStudyReport, RunConfig, SweepCell
from exceptions.nsakit_exceptions import ConfigurationError, NsaKitError
from utils.logging import NsaLogger, set_toolkit_level
from utils.report_manager import envelope, render


class TestCaps:
    """Run budgets"""

    def test_defaults(self):
        caps = Caps.parse(None)
        assert caps.search == NsaConfig.SEARCH_CAP
        assert caps.to_dict() == {
            "search": NsaConfig.SEARCH_CAP,
            "depth": NsaConfig.DEPTH_CAP,
            "maxDepth": NsaConfig.MAX_DEPTH,
            "universe": NsaConfig.MODEL_UNIVERSE,
        }

    def test_partial(self):
        caps = Caps.parse("search=50, max-depth=4")
        assert (caps.search, caps.max_depth, caps.depth) == (50, 4, NsaConfig.DEPTH_CAP)

    @pytest.mark.parametrize("text", ["search", "speed=3", "depth=x", "depth=0", "universe=99"])
    def test_invalid(self, text):
        with pytest.raises(ConfigurationError):
            Caps.parse(text)


class TestRunConfig:
    """Seeds and output formats"""

    def test_environment_wins(self):
        assert RunConfig.resolve_seed(3, {NsaConfig.SEED_ENV_VAR: "17"}) == 17

    def test_flag_then_default(self):
        assert RunConfig.resolve_seed(3, {}) == 3
        assert RunConfig.resolve_seed(None, {}) == NsaConfig.DEFAULT_SEED
        assert RunConfig.resolve_seed(3, {NsaConfig.SEED_ENV_VAR: " "}) == 3

    def test_bad_environment(self):
        with pytest.raises(ConfigurationError):
            RunConfig.resolve_seed(None, {NsaConfig.SEED_ENV_VAR: "abc"})

    def test_bad_format(self):
        with pytest.raises(ConfigurationError):
            RunConfig("normalize", output_format="xml")


class TestReports:
    """Report bodies and their files"""

    def test_case_study_report(self):
        report = CaseStudyReport("CRI", [SweepCell("a", True, {"n": 1}), SweepCell("b", False)])
        body = report.to_dict()
        assert body["passed"] is False
        assert body["failingCells"] == ["b"]
        assert body["cells"][0] == {"name": "a", "passed": True, "n": 1}
        assert "capExceeded" not in body

    def test_cap_failure_fails_the_report(self):
        report = CaseStudyReport("GH", [SweepCell("a", True)], cap_failure={"cell": "a", "cap": 2, "message": "m"})
        assert not report.passed
        assert report.to_dict()["capExceeded"]["cap"] == 2

    def test_render_is_deterministic(self):
        body = envelope("case-study", 0, Caps().to_dict(), {"b": 1, "a": [1, 2]})
        assert render(body) == render(json.loads(render(body)))
        assert list(json.loads(render(body))) == ["caps", "command", "report", "schema", "seed"]

    def test_capture(self, report_manager):
        path = Path(report_manager.capture({"z": 1, "a": 2}, "run"))
        assert path.name == "run.json"
        assert path.read_text(encoding="utf-8").index('"a"') < path.read_text(encoding="utf-8").index('"z"')

    def test_capture_error(self, report_manager):
        path = Path(report_manager.capture_error("cri", NsaKitError("boom")))
        data = json.loads(path.read_text(encoding="utf-8"))
        assert path.name == "error_cri.json"
        assert (data["error"], data["message"], data["context"]) == ("NsaKitError", "boom", "cri")


class TestLogging:
    """Phase logging"""

    async def test_phase_logs_failure(self, caplog):
        logger = NsaLogger("nsakit.tests.phase")
        logger.logger.propagate = True
        with caplog.at_level(logging.INFO, logger="nsakit.tests.phase"):
            with pytest.raises(ValueError):
                async with logger.log_phase("failing", cell="x"):
                    raise ValueError("bad cell")
        messages = [record.getMessage() for record in caplog.records]
        assert any("Starting phase: failing (cell=x)" in m for m in messages)
        assert any("failed" in m and "bad cell" in m for m in messages)

    def test_toolkit_level(self):
        logger = NsaLogger("nsakit.tests.level")
        set_toolkit_level(logging.DEBUG)
        assert logger.logger.level == logging.DEBUG
        set_toolkit_level(logging.INFO)
        assert logger.logger.level == logging.INFO


class TestFactories:
    """Seeded data"""

    def test_partition_pairs_are_deterministic(self):
        assert NsaDataFactory.partition_pairs(4, 10, count=5) == NsaDataFactory.partition_pairs(4, 10, count=5)
        assert NsaDataFactory.partition_pairs(4, 10, count=5) != NsaDataFactory.partition_pairs(5, 10, count=5)

    def test_trees_are_prefix_closed(self):
        for tree in NsaDataFactory.random_trees(seed=1, count=20, depth=5):
            assert all(node[:-1] in tree.nodes for node in tree.nodes if node)
            assert tree.depth <= 5

    def test_mu_corpus_mixes_families(self):
        corpus = NsaDataFactory.mu_corpus(seed=0, size=8, cap=100)
        assert [case.name for case in corpus] == [case.name for case in NsaDataFactory.mu_corpus(0, 8, 100)]
        assert any(case.first_zero is None for case in corpus)
        assert any(case.name.startswith("periodic") for case in corpus)


class TestLibraries:
    """Function library files"""

    def test_unknown_expression(self, tmp_path):
        path = tmp_path / "functions.json"
        path.write_text(json.dumps({"functions": [{"name": "f", "expression": "exp(x)", "modulus_scale": 1}]}))
        with pytest.raises(NsaKitError):
            load_library(path)

    def test_custom_library(self, tmp_path):
        path = tmp_path / "functions.json"
        path.write_text(json.dumps({
            "functions": [{"name": "id", "expression": "x", "modulus_scale": 1}],
            "sequences": [{"name": "half", "expression": "1/2"}],
        }))
        functions, sequences = load_library(path)
        assert functions["id"].modulus(3) == 3
        assert sequences["half"](9).approx(4) == 0.5
