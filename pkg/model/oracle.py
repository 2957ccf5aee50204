"""Soundness oracle: checks recorded rewrite steps in finite models."""
from dataclasses import dataclass
from typing import Dict, Iterable, Optional

from core.formulas import at_path, free_vars
from core.printer import print_formula
from exceptions.nsakit_exceptions import RulePreconditionError
from model.evaluator import ModelEvaluator
from model.structure import TwoLevelModel, Value, iter_assignments
from rewrite.rules import matches_idealisation
from rewrite.trace import RewriteStep, RewriteTrace, Rule

EQUIVALENCE_RULES = (Rule.PULL, Rule.COLLAPSE)


@dataclass(frozen=True)
class StepCheck:
    """Outcome of checking one step in one model; `counterexample` is set when the check failed"""
    ok: bool
    counterexample: Optional[Dict[str, Value]] = None
    direction: str = "forward"

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return f"counterexample ({self.direction}): {self.counterexample}"


def _open_variables(model: TwoLevelModel, step: RewriteStep):
    variables = {**free_vars(step.before), **free_vars(step.after)}
    return {name: t for name, t in variables.items() if name not in model.functions}


def check_step(model: TwoLevelModel, step: RewriteStep) -> StepCheck:
    """ok iff before implies after under every assignment; R2 and R6 must also hold backwards."""
    if step.rule == Rule.IDEALISE and not matches_idealisation(at_path(step.before, step.path)):
        raise RulePreconditionError(Rule.IDEALISE, step.path, "recorded step does not address an idealisation shape")

    evaluator = ModelEvaluator(model)
    both_ways = step.rule in EQUIVALENCE_RULES
    for env in iter_assignments(model, _open_variables(model, step)):
        before = evaluator.holds(step.before, env)
        after = evaluator.holds(step.after, env)
        if before and not after:
            return StepCheck(False, env, "forward")
        if both_ways and after and not before:
            return StepCheck(False, env, "backward")
    return StepCheck(True)


def check_trace(models: Iterable[TwoLevelModel], trace: RewriteTrace) -> Dict[str, StepCheck]:
    """First failure per step index, or ok; keys are `index:rule`."""
    results: Dict[str, StepCheck] = {}
    models = list(models)
    for index, step in enumerate(trace.steps):
        outcome = StepCheck(True)
        for model in models:
            outcome = check_step(model, step)
            if not outcome.ok:
                break
        results[f"{index}:{step.rule}"] = outcome
    return results


def explain_failure(step: RewriteStep, outcome: StepCheck) -> str:
    return f"{step.rule} at {list(step.path)}: {print_formula(step.before)} => {print_formula(step.after)}; {outcome.describe()}"
