from functools import partial
from itertools import product
from typing import List, Tuple

from config.nsakit_config import NsaConfig
from data.models import CaseStudyReport, SweepCell
from gh.functionals import TypeTwoFunctional, replay_consistent
from gh.gandy_hyland import (
    check_gh_equation, gamma_from_gh_value, gh_approx, gh_approx_reference, gh_value, is_stable,
)
from gh.library import GH_FUNCTIONALS
from gh.oracles import FinitePrefix
from studies.case_study import CaseStudy


def sequences(alphabet=NsaConfig.GH_ALPHABET, max_length: int = NsaConfig.GH_PREFIX_LENGTH) -> List[Tuple[int, ...]]:
    return [s for length in range(max_length + 1) for s in product(alphabet, repeat=length)]


def gh_cell(name: str, y: TypeTwoFunctional, s: Tuple[int, ...], max_depth: int) -> SweepCell:
    """Stabilisation, fixed point, instrumentation and reference agreement at one (Y, s)"""
    certificate = gh_value(y, s, max_depth)
    stable = is_stable(y, s, certificate.certified_at)
    fixed_point = check_gh_equation(y, s, gamma_from_gh_value(y, max_depth))
    oracle = FinitePrefix(s, tail=1)
    instrumented = y.evaluate_instrumented(oracle)[0] == y.evaluate(oracle) and replay_consistent(y, oracle)
    reference = all(
        gh_approx(y, s, depth) == gh_approx_reference(y, s, depth)
        for depth in range(NsaConfig.GH_REFERENCE_DEPTH + 1)
    )
    return SweepCell(
        f"{name}:{list(s)}",
        stable and fixed_point and instrumented and reference,
        {"functional": name, "sequence": list(s), **certificate.to_dict(), "stable": stable,
         "fixedPoint": fixed_point, "instrumentation": instrumented, "reference": reference},
    )


def fault_cell(name: str, y: TypeTwoFunctional, max_depth: int) -> SweepCell:
    """Γ off by one at the root must break the fixed-point equation there"""
    gamma = gamma_from_gh_value(y, max_depth)
    perturbed = lambda t: gamma(t) + 1 if t == () else gamma(t)
    rejected = not check_gh_equation(y, (), perturbed)
    return SweepCell(f"fault:{name}", rejected, {"functional": name, "rejected": rejected})


class GhStudy(CaseStudy):
    """Gandy-Hyland functional on the continuous library: thresholds, stabilisation and the fixed-point law"""

    NAME = "GH"

    async def collect(self, report: CaseStudyReport) -> None:
        max_depth = self.caps.max_depth
        async with self.logger.log_phase("gandy-hyland sweep", max_depth=max_depth):
            tasks, labels = [], []
            for name, y in GH_FUNCTIONALS.items():
                for s in sequences():
                    tasks.append(partial(gh_cell, name, y, s, max_depth))
                    labels.append(f"{name}:{list(s)}")
                tasks.append(partial(fault_cell, name, y, max_depth))
                labels.append(f"fault:{name}")
            report.cells.extend(await self.sweep.run(self.NAME, tasks, labels))

        report.witnesses["gamma"] = {
            name: gh_value(y, (), max_depth).value for name, y in GH_FUNCTIONALS.items()
        }
        report.witnesses["thresholds"] = {
            cell.name: cell.detail["certifiedAt"] for cell in report.cells if "certifiedAt" in cell.detail
        }
