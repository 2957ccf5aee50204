"""Reads a witness term for a normal form off a rewrite trace."""
from typing import List, Mapping, Optional

from core.terms import TermExpr, Var, apply_all, free_vars, lam_all
from exceptions.nsakit_exceptions import MissingBaseWitnessError, TermEvaluationError
from rewrite.rules import collapse_term, split_normal_form
from rewrite.trace import RewriteTrace, WitnessOp

_COLLAPSES = ("collapse-max", "collapse-min")


def _defining_step(trace: RewriteTrace, name: str, before: int):
    """Latest step before index `before` whose witness operation introduces `name`."""
    for index in range(before - 1, -1, -1):
        op: WitnessOp = trace.steps[index].witness_op
        if op.kind in _COLLAPSES + ("idealise",) and op.lookup(name) is not None:
            return index, op
    return None, None


def assemble_witness(
    trace: RewriteTrace,
    base: Mapping[str, TermExpr],
    target: Optional[str] = None,
) -> TermExpr:
    """Closed term computing the standard existential `target` of the trace's final normal form.

    Collapses become max/min of the sequence they replaced. Anything that was
    idealised, or was already a standard existential, is a base obligation:
    `base[name]` applied to the final normal form's standard universals.
    """
    split = split_normal_form(trace.final)
    if split is None or not split[1]:
        raise TermEvaluationError("final formula has no standard existential to witness")
    universals, existentials, _ = split
    target = target or existentials[0].var
    if target not in {q.var for q in existentials}:
        raise TermEvaluationError(f"'{target}' is not a standard existential of the final normal form")
    params = tuple(Var(q.var, q.type) for q in universals)

    def obligation(name: str) -> TermExpr:
        if name not in base:
            raise MissingBaseWitnessError(name)
        return apply_all(base[name], *params)

    def resolve(name: str, before: int) -> TermExpr:
        index, op = _defining_step(trace, name, before)
        if op is None:
            return obligation(name)
        if op.kind in _COLLAPSES:
            return collapse_term(op, resolve(op.lookup(name), index))
        return obligation(op.lookup(name))

    body = resolve(target, len(trace.steps))
    term = lam_all(params, body)
    return _eta_reduce(term, params, base)


def _eta_reduce(term: TermExpr, params, base: Mapping[str, TermExpr]) -> TermExpr:
    """λx….(b x…) with b closed is just b."""
    for candidate in base.values():
        if not free_vars(candidate) and term == lam_all(params, apply_all(candidate, *params)):
            return candidate
    return term


def obligations(trace: RewriteTrace) -> List[str]:
    """Names `assemble_witness` will look up in the base collection, per final existential."""
    split = split_normal_form(trace.final)
    if split is None:
        return []
    names: List[str] = []

    def collect(name: str, before: int):
        index, op = _defining_step(trace, name, before)
        if op is None:
            names.append(name)
        elif op.kind in _COLLAPSES:
            collect(op.lookup(name), index)
        else:
            names.append(op.lookup(name))

    for q in split[1]:
        collect(q.var, len(trace.steps))
    return names
