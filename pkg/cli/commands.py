"""The three commands; each returns a process exit code and writes its report to `out`."""
import sys
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Type

from core.parser import parse
from core.printer import print_formula
from data.models import CaseStudyReport, ModelCheckReport, NormalizeReport, RunConfig
from exceptions.nsakit_exceptions import StuckError
from model.generators import model_family_for_steps, random_rule_instance
from model.oracle import check_step, explain_failure
from model.structure import TwoLevelModel
from rewrite.annotations import load_annotations
from rewrite.engine import normalize
from rewrite.trace import RewriteTrace
from studies.case_study import CaseStudy
from studies.components.sweep import SweepRunner
from studies.cri import CriStudy
from studies.fan import FanStudy
from studies.gh import GhStudy
from studies.mct import MctStudy
from utils.logging import NsaLogger
from utils.report_manager import envelope, render


class ExitCode:
    OK = 0
    INPUT_ERROR = 1
    STUCK = 2
    CAP_EXCEEDED = 3
    FAILED = 4


STUDIES: Dict[str, Type[CaseStudy]] = {
    study.NAME: study for study in (CriStudy, MctStudy, GhStudy, FanStudy)
}

logger = NsaLogger("nsakit.cli")


def emit(config: RunConfig, body: dict, text: str, out: TextIO) -> None:
    if config.output_format == "json":
        out.write(render(envelope(config.command, config.seed, config.caps.to_dict(), body)) + "\n")
    else:
        out.write(text + "\n")


def _format_trace(trace: RewriteTrace) -> List[str]:
    return [f"  {i}. {step.rule} at {list(step.path)}: {step.witness_op}" for i, step in enumerate(trace.steps)]


async def cmd_normalize(config: RunConfig, out: TextIO = sys.stdout) -> int:
    source = config.inputs[0]
    async with logger.log_phase("normalize", file=source.name):
        formula = parse(source.read_text(encoding="utf-8"))
        annotations = load_annotations(config.annotations) if config.annotations else []
        try:
            final, trace = normalize(formula, annotations)
        except StuckError as e:
            report = NormalizeReport(
                print_formula(formula), print_formula(e.formula), False,
                e.trace.to_dict() if e.trace else None, list(e.position),
            )
            text = f"stuck at {list(e.position)}\n{print_formula(e.formula)}"
            emit(config, report.to_dict(), text, out)
            return ExitCode.STUCK

    report = NormalizeReport(print_formula(formula), print_formula(final), True, trace.to_dict())
    text = "\n".join([print_formula(final), f"trace ({len(trace.steps)} steps):", *_format_trace(trace)])
    emit(config, report.to_dict(), text, out)
    return ExitCode.OK


async def cmd_case_study(config: RunConfig, out: TextIO = sys.stdout) -> int:
    study_class = STUDIES[config.case_study.upper()]
    study = study_class(SweepRunner(logger), logger, config.seed, config.caps)
    report: CaseStudyReport = await study.run()

    lines = [f"{report.name}: {'passed' if report.passed else 'FAILED'} ({len(report.cells)} cells)"]
    lines += [f"  failing: {cell.name}" for cell in report.failing_cells]
    if report.cap_failure:
        lines.append(f"  cap exceeded in {report.cap_failure['cell']}: {report.cap_failure['message']}")
    emit(config, report.to_dict(), "\n".join(lines), out)

    if report.cap_failure is not None:
        return ExitCode.CAP_EXCEEDED
    return ExitCode.OK if report.passed else ExitCode.FAILED


def load_models(models_dir: Optional[Path]) -> List[TwoLevelModel]:
    return [TwoLevelModel.load(path) for path in sorted(Path(models_dir).glob("*.json"))]


def _plain(value):
    return [_plain(v) for v in value] if isinstance(value, tuple) else value


async def cmd_model_check(config: RunConfig, out: TextIO = sys.stdout, random_instances: int = 0) -> int:
    """Every (step, model) pair of a recorded trace, or of `random_instances` seeded rule instances"""
    if random_instances:
        label = f"random:{random_instances}"
        steps = [random_rule_instance(config.seed + i) for i in range(random_instances)]
    else:
        label = config.inputs[0].name
        steps = RewriteTrace.from_json(config.inputs[0].read_text(encoding="utf-8")).steps

    checks, counterexample, model_count = 0, None, 0
    async with logger.log_phase("model check", trace=label, steps=len(steps)):
        fixed_models = load_models(config.models_dir) if config.models_dir else None
        if fixed_models is None and not random_instances:
            fixed_models = model_family_for_steps(steps, config.seed, config.caps.universe)
        for index, step in enumerate(steps):
            models = fixed_models or model_family_for_steps([step], config.seed, config.caps.universe)
            model_count = max(model_count, len(models))
            for model_index, model in enumerate(models):
                checks += 1
                outcome = check_step(model, step)
                if not outcome.ok:
                    counterexample = {
                        "step": index,
                        "rule": step.rule,
                        "model": model_index,
                        "direction": outcome.direction,
                        "environment": {k: _plain(v) for k, v in outcome.counterexample.items()},
                        "explanation": explain_failure(step, outcome),
                    }
                    break
            if counterexample:
                break

    report = ModelCheckReport(label, model_count, checks, counterexample)
    text = f"{label}: {checks} checks, " + ("no counterexample" if report.passed else counterexample["explanation"])
    emit(config, report.to_dict(), text, out)
    return ExitCode.OK if report.passed else ExitCode.FAILED
