import asyncio
from typing import Callable, List, Sequence

from data.models import SweepCell
from exceptions.nsakit_exceptions import CapExceededError, PreconditionError
from utils.logging import NsaLogger

CellTask = Callable[[], SweepCell]


class SweepRunner:
    """Runs independent verification cells on worker threads and merges them in input order"""

    def __init__(self, logger: NsaLogger):
        self.logger = logger

    async def run(self, name: str, tasks: Sequence[CellTask], labels: Sequence[str]) -> List[SweepCell]:
        """Cap failures propagate (first in input order); precondition failures become failing cells"""
        outcomes = await asyncio.gather(*(asyncio.to_thread(task) for task in tasks), return_exceptions=True)
        cells: List[SweepCell] = []
        for label, outcome in zip(labels, outcomes):
            if isinstance(outcome, CapExceededError):
                self.logger.warning(f"{name}: cap hit in cell {label}: {outcome}")
                if not outcome.cell:
                    outcome.cell = label
                raise outcome
            if isinstance(outcome, PreconditionError):
                self.logger.warning(f"{name}: precondition failed in cell {label}: {outcome}")
                cells.append(SweepCell(label, False, {"error": str(outcome)}))
            elif isinstance(outcome, BaseException):
                raise outcome
            else:
                cells.append(outcome)

        failed = sum(1 for cell in cells if not cell.passed)
        self.logger.info(f"{name}: {len(cells) - failed}/{len(cells)} cells passed")
        return cells
