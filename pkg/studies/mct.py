from functools import partial

from analysis.convergence import is_monotone_bounded, mct_functional, mct_modulus, mu_from_mct, window_holds
from analysis.library import REAL_SEQUENCES
from analysis.reals import RealSequence
from analysis.search import SearchOperator, mu_search
from config.nsakit_config import NsaConfig
from data.factories import NsaDataFactory
from data.models import CaseStudyReport, MuCase, SweepCell
from studies.case_study import CaseStudy


def modulus_cell(name: str, c: RealSequence, op: SearchOperator, k: int) -> SweepCell:
    n = mct_modulus(c, op, k)
    window = window_holds(c, n, k, op.cap)
    monotone = is_monotone_bounded(c)
    return SweepCell(f"{name}:k={k}", window and monotone, {"sequence": name, "k": k, "N": n,
                                                             "window": window, "monotone": monotone})


def round_trip_cell(case: MuCase, op: SearchOperator) -> SweepCell:
    direct = mu_search(case.f, op)
    recovered = mu_from_mct(mct_functional(op), case.f, op.cap, NsaConfig.MU_PROBE_PRECISION)
    expected = case.expected(op.cap)
    return SweepCell(f"mu:{case.name}", direct == recovered == expected,
                     {"search": direct, "fromModulus": recovered, "expected": expected})


class MctStudy(CaseStudy):
    """Convergence moduli from search, and search recovered from those moduli"""

    NAME = "MCT"

    async def collect(self, report: CaseStudyReport) -> None:
        op = SearchOperator(self.caps.search)

        async with self.logger.log_phase("convergence moduli", cap=op.cap):
            tasks, labels = [], []
            for name in NsaConfig.MCT_SEQUENCES:
                for k in NsaConfig.MCT_PRECISIONS:
                    tasks.append(partial(modulus_cell, name, REAL_SEQUENCES[name], op, k))
                    labels.append(f"{name}:k={k}")
            cells = await self.sweep.run(self.NAME, tasks, labels)
            report.cells.extend(cells)
            report.witnesses["moduli"] = {cell.name: cell.detail["N"] for cell in cells if "N" in cell.detail}

        async with self.logger.log_phase("search round trip", corpus=NsaConfig.MU_CORPUS_SIZE):
            corpus = NsaDataFactory.mu_corpus(self.seed, cap=op.cap)
            tasks = [partial(round_trip_cell, case, op) for case in corpus]
            report.cells.extend(await self.sweep.run(self.NAME, tasks, [f"mu:{case.name}" for case in corpus]))
