import pytest

from data.models import Caps, SweepCell
from exceptions.nsakit_exceptions import CapExceededError, PreconditionError
from studies.case_study import CaseStudy
from studies.cri import CriStudy
from studies.fan import FanStudy
from studies.gh import GhStudy, sequences
from studies.mct import MctStudy


def passing(label):
    return lambda: SweepCell(label, True)


def raising(error):
    def task():
        raise error
    return task


class TestSweepRunner:
    """Worker-thread sweeps"""

    async def test_input_order(self, sweep):
        cells = await sweep.run("order", [passing("a"), passing("b"), passing("c")], ["a", "b", "c"])
        assert [cell.name for cell in cells] == ["a", "b", "c"]

    async def test_precondition_becomes_failing_cell(self, sweep):
        cells = await sweep.run("pre", [passing("a"), raising(PreconditionError("coarse"))], ["a", "b"])
        assert [cell.passed for cell in cells] == [True, False]
        assert cells[1].detail["error"] == "coarse"

    async def test_first_cap_failure_wins(self, sweep):
        tasks = [passing("a"), raising(CapExceededError("first", 5)), raising(CapExceededError("second", 6, "z"))]
        with pytest.raises(CapExceededError) as info:
            await sweep.run("caps", tasks, ["a", "b", "c"])
        assert info.value.cell == "b"
        assert info.value.cap == 5

    async def test_other_errors_propagate(self, sweep):
        with pytest.raises(ZeroDivisionError):
            await sweep.run("boom", [raising(ZeroDivisionError())], ["a"])


class TestCaseStudyBase:
    """Runner contract"""

    def test_collect_is_required(self, sweep, logger, small_caps):
        class Incomplete(CaseStudy):
            NAME = "INCOMPLETE"

        with pytest.raises(TypeError):
            Incomplete(sweep, logger, 0, small_caps)


class TestCaseStudies:
    """The four case studies at small caps"""

    async def test_cri(self, sweep, logger, small_caps):
        report = await CriStudy(sweep, logger, 0, small_caps).run()
        assert report.passed, [cell.name for cell in report.failing_cells]
        witness = next(cell for cell in report.cells if cell.name == "witness:square")
        assert witness.detail["values"]["5"] == 20
        assert "max" in report.witnesses["criModulus"]

    async def test_mct(self, sweep, logger, small_caps):
        report = await MctStudy(sweep, logger, 0, small_caps).run()
        assert report.passed, [cell.name for cell in report.failing_cells]
        assert report.witnesses["moduli"]["harmonic:k=10"] == 19
        assert report.witnesses["moduli"]["constant:k=1"] == 0
        assert any(cell.name.startswith("mu:") for cell in report.cells)

    async def test_gh(self, sweep, logger, small_caps):
        report = await GhStudy(sweep, logger, 0, small_caps).run()
        assert report.passed, [cell.name for cell in report.failing_cells]
        assert report.witnesses["gamma"]["head-sum"] == 1
        assert report.witnesses["thresholds"]["head-sum:[]"] == 2
        assert report.witnesses["thresholds"]["reach4:[]"] == 5

    async def test_gh_depth_cap(self, sweep, logger):
        report = await GhStudy(sweep, logger, 0, Caps(search=500, depth=6, max_depth=2, universe=3)).run()
        assert not report.passed
        assert report.cap_failure["cell"].startswith("bounded-lookup")
        assert report.cap_failure["cap"] == 2

    async def test_fan(self, sweep, logger, small_caps):
        report = await FanStudy(sweep, logger, 0, small_caps).run()
        assert report.passed, [cell.name for cell in report.failing_cells]
        assert report.witnesses["moduli"]["head-sum"] == [2, 2]
        assert report.witnesses["moduli"]["first-one5"] == [5, 5]
        scf = {cell.name for cell in report.cells if cell.name.startswith("scf:")}
        assert "scf:head-sum" in scf
        assert "scf:first-one5" not in scf

    async def test_fan_depth_cap(self, sweep, logger):
        report = await FanStudy(sweep, logger, 0, Caps(search=500, depth=1, max_depth=10, universe=3)).run()
        assert report.cap_failure["cell"] == "head-sum"
        assert "capExceeded" in report.to_dict()

    def test_gh_sequences(self):
        assert len(sequences((0, 1, 2), 3)) == 40
        assert sequences((0, 1), 1) == [(), (0,), (1,)]
