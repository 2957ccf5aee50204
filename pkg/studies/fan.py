from functools import partial
from typing import List

from config.nsakit_config import NsaConfig
from data.factories import NsaDataFactory
from data.models import CaseStudyReport, SweepCell
from gh.fan import BinaryTree, fan_modulus, special_fan, verify_scf
from gh.functionals import TypeTwoFunctional
from gh.library import FAN_FUNCTIONALS
from gh.oracles import FinitePrefix, binary_strings
from studies.case_study import CaseStudy


def modulus_cell(name: str, g: TypeTwoFunctional, depth_cap: int) -> SweepCell:
    """Exhaustively over the 2^N prefixes: the tail does not matter and B bounds the value"""
    modulus, bound = fan_modulus(g, depth_cap)
    violations = [
        "".join(map(str, bits)) for bits in binary_strings(modulus)
        if not (g.evaluate(FinitePrefix(bits, 0)) == g.evaluate(FinitePrefix(bits, 1)) <= bound)
    ]
    return SweepCell(f"modulus:{name}", not violations,
                     {"functional": name, "N": modulus, "B": bound, "violations": violations})


def scf_cell(name: str, g: TypeTwoFunctional, depth_cap: int, trees: List[BinaryTree]) -> SweepCell:
    out = special_fan(g, depth_cap)
    failing = [index for index, tree in enumerate(trees) if not verify_scf(out, g, tree)]
    return SweepCell(f"scf:{name}", not failing, {"functional": name, **out.to_dict(),
                                                   "trees": len(trees), "failingTrees": failing})


class FanStudy(CaseStudy):
    """Fan moduli of the Cantor-space library and the special fan functional checked on random trees"""

    NAME = "FAN"

    async def collect(self, report: CaseStudyReport) -> None:
        depth_cap = self.caps.depth
        async with self.logger.log_phase("fan moduli", depth_cap=depth_cap):
            tasks = [partial(modulus_cell, name, g, depth_cap) for name, g in FAN_FUNCTIONALS.items()]
            cells = await self.sweep.run(self.NAME, tasks, [f"modulus:{name}" for name in FAN_FUNCTIONALS])
            report.cells.extend(cells)
            report.witnesses["moduli"] = {cell.detail["functional"]: [cell.detail["N"], cell.detail["B"]] for cell in cells}

        async with self.logger.log_phase("special fan", trees=NsaConfig.RANDOM_TREES):
            trees = NsaDataFactory.random_trees(self.seed)
            small = [name for name, (modulus, _) in report.witnesses["moduli"].items()
                     if modulus <= NsaConfig.SCF_MAX_MODULUS]
            tasks = [partial(scf_cell, name, FAN_FUNCTIONALS[name], depth_cap, trees) for name in small]
            report.cells.extend(await self.sweep.run(self.NAME, tasks, [f"scf:{name}" for name in small]))
