from abc import ABC, abstractmethod
from typing import Dict

from data.models import Caps, CaseStudyReport
from exceptions.nsakit_exceptions import CapExceededError
from studies.components.sweep import SweepRunner
from utils.logging import NsaLogger


class CaseStudy(ABC):
    """Shared wiring of the case-study runners"""

    NAME = ""

    def __init__(self, sweep: SweepRunner, logger: NsaLogger, seed: int, caps: Caps):
        self.sweep = sweep
        self.logger = logger
        self.seed = seed
        self.caps = caps

    async def run(self) -> CaseStudyReport:
        """Run every phase; a cap hit ends the study and is recorded with its cell"""
        report = CaseStudyReport(self.NAME)
        async with self.logger.log_phase(f"case study {self.NAME}", seed=self.seed):
            try:
                await self.collect(report)
            except CapExceededError as e:
                report.cap_failure = cap_failure(e)
        return report

    @abstractmethod
    async def collect(self, report: CaseStudyReport) -> None:
        """Append this study's cells to `report`"""


def cap_failure(error: CapExceededError) -> Dict[str, object]:
    return {"cell": error.cell, "cap": error.cap, "message": str(error)}
