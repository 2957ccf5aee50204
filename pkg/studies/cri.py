from fractions import Fraction
from functools import partial
from typing import List, Tuple

from analysis.integration import integration_modulus, measure_cri, refinement_gap
from analysis.library import FUNCTIONS
from analysis.partitions import Partition
from analysis.reals import RealFunction, render_rational
from analysis.witnesses import cri_modulus_term, evaluate_modulus
from config.nsakit_config import NsaConfig
from core.parser import parse
from core.printer import print_term
from core.schemas import SCHEMA_LIBRARY
from data.factories import NsaDataFactory
from data.models import CaseStudyReport, SweepCell
from rewrite.annotations import load_annotations
from rewrite.engine import normalize
from studies.case_study import CaseStudy


def cri_cell(name: str, f: RealFunction, n: int, pairs: List[Tuple[Partition, Partition]]) -> SweepCell:
    """All pairs within 1/n of each other, and a sample within 1/(2n) of their common refinement"""
    failing, worst = [], Fraction(0)
    for index, (p, q) in enumerate(pairs):
        check = measure_cri(f, f.modulus, n, p, q)
        worst = max(worst, check.deviation)
        if not check.holds:
            failing.append(index)

    gap_bound = Fraction(1, 2 * n)
    sampled = pairs[:NsaConfig.REFINEMENT_PAIRS]
    worst_gap = max((refinement_gap(f, p, q) for p, q in sampled), default=Fraction(0))

    return SweepCell(
        f"{name}:n={n}",
        not failing and worst_gap <= gap_bound,
        {
            "function": name,
            "n": n,
            "modulus": integration_modulus(f.modulus, n),
            "pairs": len(pairs),
            "failingPairs": failing,
            "maxDeviation": render_rational(worst),
            "refinementPairs": len(sampled),
            "maxRefinementGap": render_rational(worst_gap),
        },
    )


class CriStudy(CaseStudy):
    """Extracted integration modulus: assembled from the normal form, then checked on random partitions"""

    NAME = "CRI"
    FORMULA_FILE = "cri_ns.nsa"
    ANNOTATION_FILE = "cri_ns.annotations.json"

    def extract_modulus(self):
        text = (NsaConfig.CORPUS_DIR / self.FORMULA_FILE).read_text(encoding="utf-8")
        formula = parse(text, SCHEMA_LIBRARY["CRI_ns"].signature())
        annotations = load_annotations(NsaConfig.CORPUS_DIR / self.ANNOTATION_FILE)
        _, trace = normalize(formula, annotations)
        return cri_modulus_term(trace)

    def witness_cell(self, term, name: str, f: RealFunction) -> SweepCell:
        values = {n: evaluate_modulus(term, f.modulus, n) for n in NsaConfig.CRI_PRECISIONS}
        mismatches = [n for n, value in values.items() if value != integration_modulus(f.modulus, n)]
        return SweepCell(f"witness:{name}", not mismatches,
                         {"values": {str(n): v for n, v in values.items()}, "mismatches": mismatches})

    async def collect(self, report: CaseStudyReport) -> None:
        async with self.logger.log_phase("extract integration modulus"):
            term = self.extract_modulus()
            report.witnesses["criModulus"] = print_term(term)
            self.logger.info(f"extracted modulus: {report.witnesses['criModulus']}")
            for name, f in FUNCTIONS.items():
                report.cells.append(self.witness_cell(term, name, f))

        async with self.logger.log_phase("partition sweep", pairs=NsaConfig.PARTITION_PAIRS):
            tasks, labels = [], []
            for name, f in FUNCTIONS.items():
                for n in NsaConfig.CRI_PRECISIONS:
                    pairs = NsaDataFactory.partition_pairs(self.seed, integration_modulus(f.modulus, n))
                    tasks.append(partial(cri_cell, name, f, n, pairs))
                    labels.append(f"{name}:n={n}")
            report.cells.extend(await self.sweep.run(self.NAME, tasks, labels))
