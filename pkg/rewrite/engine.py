"""Normal-form driver: R1, then innermost implications first, then the whole formula."""
from typing import Iterable, List, Optional, Tuple

from core.formulas import (
    Formula, Implies, Path, Quant, QuantKind, at_path, is_internal, polarity, walk_postorder,
)
from core.printer import print_formula
from exceptions.nsakit_exceptions import StuckError
from rewrite.annotations import MonotoneAnnotation, index_annotations
from rewrite.rules import (
    drop_st, expand_definitions, first_offending_position, has_sugar, herbrandize_antecedent,
    idealise, is_normal_form, matches_idealisation, max_collapse, pull_standard_quantifiers,
    split_normal_form,
)
from rewrite.trace import RewriteStep, RewriteTrace, Rule
from utils.logging import NsaLogger

logger = NsaLogger("nsakit.rewrite")


def _is_internal_forall(f: Formula) -> bool:
    return isinstance(f, Quant) and not f.standard and f.kind is QuantKind.FORALL


def _standard_prefix_length(f: Formula) -> int:
    length = 0
    while isinstance(f, Quant) and f.standard:
        f = f.body
        length += 1
    return length


class Normalizer:
    """Drives the rules in their fixed order and records every application"""

    def __init__(self, annotations: Iterable[MonotoneAnnotation] = ()):
        self.annotations = index_annotations(annotations)

    def normalize(self, f: Formula) -> Tuple[Formula, RewriteTrace]:
        steps: List[RewriteStep] = []
        current = f
        if has_sugar(current):
            after, op = expand_definitions(current)
            current = self._record(steps, Rule.EXPAND, (), current, after, op)

        current = self._implications(current, steps)
        current = self._settle(current, (), steps)

        trace = RewriteTrace(f, current, steps)
        if not is_normal_form(current):
            position = first_offending_position(current)
            logger.warning(f"stuck at {list(position)}: {print_formula(current)}")
            raise StuckError(current, position, trace)
        return current, trace

    def _record(self, steps: List[RewriteStep], rule: str, path: Path, before: Formula, after: Formula, op) -> Formula:
        logger.debug(f"{rule} at {list(path)}: {op}")
        steps.append(RewriteStep(rule, tuple(path), before, after, op))
        return after

    def _implications(self, f: Formula, steps: List[RewriteStep]) -> Formula:
        """Herbrandize every positive implication whose antecedent settles into a normal form with witnesses."""
        paths = [path for path, node in walk_postorder(f) if isinstance(node, Implies)]
        for path in paths:
            if polarity(f, path) < 0:
                continue
            antecedent_path = path + (0,)
            scratch: List[RewriteStep] = []
            settled = self._settle(f, antecedent_path, scratch)
            split = split_normal_form(at_path(settled, antecedent_path))
            if split is None or not split[1]:
                continue

            steps.extend(scratch)
            f = settled
            after, op = herbrandize_antecedent(f, path)
            f = self._record(steps, Rule.HERBRANDIZE, path, f, after, op)

            implication_path = path + (0,) * len(op.bindings)
            for offset, universal in enumerate(split[0]):
                if universal.var not in self.annotations:
                    continue
                quantifier_path = implication_path + (0,) + (0,) * offset
                if polarity(f, quantifier_path) > 0:
                    logger.warning(f"not dropping st on {universal.var}: positive position")
                    continue
                after, op = drop_st(f, quantifier_path, self.annotations[universal.var])
                f = self._record(steps, Rule.DROP_ST, quantifier_path, f, after, op)

            f = self._settle(f, path, steps)
        return f

    def _block_roots(self, f: Formula, region: Path) -> List[Path]:
        roots = []
        for relative, node in walk_postorder(at_path(f, region)):
            if not relative:
                roots.append(region)
                continue
            if not _is_internal_forall(node):
                continue
            parent = at_path(f, region + relative[:-1])
            if not _is_internal_forall(parent):
                roots.append(region + relative)
        return roots

    def _settle(self, f: Formula, region: Path, steps: List[RewriteStep]) -> Formula:
        """Bring every quantifier block inside `region` as close to normal form as R2, R5 and R6 allow."""
        for root in self._block_roots(f, region):
            f = self._settle_block(f, root, steps, is_region=root == region)
        return f

    def _settle_block(self, f: Formula, root: Path, steps: List[RewriteStep], is_region: bool) -> Formula:
        pulled, op = pull_standard_quantifiers(f, root)
        changed = pulled != f
        prefix_length = _standard_prefix_length(at_path(pulled, root))
        target = root + (0,) * prefix_length
        if not matches_idealisation(at_path(pulled, target)):
            if is_region and changed:
                f = self._record(steps, Rule.PULL, root, f, pulled, op)
            return f

        if changed:
            f = self._record(steps, Rule.PULL, root, f, pulled, op)
        after, op = idealise(f, target)
        f = self._record(steps, Rule.IDEALISE, target, f, after, op)
        for offset, (_, variable) in enumerate(op.bindings):
            annotation = self.annotations.get(variable)
            if annotation is None:
                continue
            sequence_path = target + (0,) * offset
            after, collapse_op = max_collapse(f, sequence_path, annotation)
            f = self._record(steps, Rule.COLLAPSE, sequence_path, f, after, collapse_op)
        return f


def normalize(f: Formula, annotations: Optional[Iterable[MonotoneAnnotation]] = None) -> Tuple[Formula, RewriteTrace]:
    """Rewrite `f` into (∀st x)(∃st y)φ form, returning the result and its trace.

    Raises StuckError when the rules run out before a normal form is reached.
    Internal input comes back unchanged with an empty trace.
    """
    with logger.phase("normalize"):
        return Normalizer(annotations or ()).normalize(f)
