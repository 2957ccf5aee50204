"""The rewrite rules R1 to R6 and normal-form detection.

Each rule takes the whole formula and the path of the node it rewrites, and
returns the rewritten formula together with the witness operation to record.
Fresh names are drawn against every name already in the formula, so binders
stay unique and names introduced by one rule can be referred to later.
"""
from typing import List, Optional, Set, Tuple

from config.nsakit_config import Symbols
from core.formulas import (
    And, ApproxBaire, ApproxReal, ElemOfSeq, Formula, Implies, InfiniteNat, Not, Or,
    Path, Quant, QuantKind, Rel, St, SUGAR, all_names, at_path, children, is_internal,
    polarity, replace_at, substitute, walk, with_children,
)
from core.names import fresh_name
from core.terms import App, MaxOf, MinOf, Var, apply_all
from core.types import NAT, FinType, Seq, arrow
from exceptions.nsakit_exceptions import (
    MissingAnnotationError, RulePreconditionError, UnsoundRuleApplicationError,
)
from rewrite.annotations import Direction, MonotoneAnnotation
from rewrite.trace import Rule, WitnessOp

# (kind, variable, type) of a standard quantifier in a pulled prefix
Binder = Tuple[QuantKind, str, FinType]


def _claim(stem: str, used: Set[str]) -> str:
    name = fresh_name(stem, used)
    used.add(name)
    return name


def has_sugar(f: Formula) -> bool:
    return any(isinstance(node, SUGAR) for _, node in walk(f))


# R1

def expand_definitions(f: Formula) -> Tuple[Formula, WitnessOp]:
    """Resolve closeness and Ω sugar into standard quantifiers over internal relations."""
    used = all_names(f)
    introduced: List[Tuple[str, str]] = []

    def expand(node: Formula) -> Formula:
        match node:
            case ApproxReal(left, right, index):
                name = index if index is not None else _claim(Symbols.PRECISION_STEM, used)
                introduced.append((name, "approxR"))
                relation = Rel(Symbols.DIST_LT, (left, right, Var(name, NAT)))
                return Quant(QuantKind.FORALL, True, name, NAT, relation)
            case ApproxBaire(left, right, index):
                name = index if index is not None else _claim(Symbols.PRECISION_STEM, used)
                introduced.append((name, "approx1"))
                point = Var(name, NAT)
                relation = Rel(Symbols.EQ, (App(left, point), App(right, point)))
                return Quant(QuantKind.FORALL, True, name, NAT, relation)
            case InfiniteNat(var, body):
                bound = _claim(Symbols.OMEGA_BOUND_STEM, used)
                introduced.append((bound, "inOmega"))
                below = Quant(QuantKind.FORALL, True, bound, NAT, Rel(Symbols.LT, (Var(bound, NAT), Var(var, NAT))))
                return Quant(QuantKind.FORALL, False, var, NAT, Implies(below, expand(body)))
        kids = children(node)
        return with_children(node, tuple(expand(c) for c in kids)) if kids else node

    return expand(f), WitnessOp("expand", tuple(introduced))


# R2

def dual_prefix(prefix: List[Binder]) -> List[Binder]:
    return [(kind.dual(), var, var_type) for kind, var, var_type in prefix]


def merge_prefixes(left: List[Binder], right: List[Binder]) -> List[Binder]:
    """Interleave two independent prefixes, universals first, keeping each side's order."""
    merged: List[Binder] = []
    i = j = 0
    while i < len(left) or j < len(right):
        for kind in (QuantKind.FORALL, QuantKind.EXISTS):
            while i < len(left) and left[i][0] is kind:
                merged.append(left[i])
                i += 1
            while j < len(right) and right[j][0] is kind:
                merged.append(right[j])
                j += 1
    return merged


def wrap_prefix(prefix: List[Binder], matrix: Formula) -> Formula:
    for kind, var, var_type in reversed(prefix):
        matrix = Quant(kind, True, var, var_type, matrix)
    return matrix


def _leading(prefix: List[Binder], kind: QuantKind) -> int:
    count = 0
    while count < len(prefix) and prefix[count][0] is kind:
        count += 1
    return count


def pull(f: Formula) -> Tuple[List[Binder], Formula]:
    """Split `f` into the standard quantifiers prenex laws can move to the front and the rest."""
    match f:
        case Quant(kind, True, var, var_type, body):
            prefix, matrix = pull(body)
            return [(kind, var, var_type)] + prefix, matrix
        case Quant(kind, False, var, var_type, body):
            prefix, matrix = pull(body)
            cut = _leading(prefix, kind)
            return prefix[:cut], Quant(kind, False, var, var_type, wrap_prefix(prefix[cut:], matrix))
        case ElemOfSeq(var, seq, body):
            prefix, matrix = pull(body)
            cut = _leading(prefix, QuantKind.EXISTS)
            return prefix[:cut], ElemOfSeq(var, seq, wrap_prefix(prefix[cut:], matrix))
        case Not(body):
            prefix, matrix = pull(body)
            return dual_prefix(prefix), Not(matrix)
        case And(left, right) | Or(left, right):
            left_prefix, left_matrix = pull(left)
            right_prefix, right_matrix = pull(right)
            return merge_prefixes(left_prefix, right_prefix), type(f)(left_matrix, right_matrix)
        case Implies(left, right):
            left_prefix, left_matrix = pull(left)
            right_prefix, right_matrix = pull(right)
            return merge_prefixes(dual_prefix(left_prefix), right_prefix), Implies(left_matrix, right_matrix)
    return [], f


def pull_standard_quantifiers(f: Formula, path: Path = ()) -> Tuple[Formula, WitnessOp]:
    target = at_path(f, path)
    result = wrap_prefix(*pull(target))
    return replace_at(f, path, result), WitnessOp("prenex")


# R5

def _split_idealisation(node: Formula) -> Optional[Tuple[List[Quant], List[Quant], Formula]]:
    """(∀x…)(∃^st y…)φ with φ internal, as (universals, standard existentials, φ)."""
    universals: List[Quant] = []
    while isinstance(node, Quant) and not node.standard and node.kind is QuantKind.FORALL:
        universals.append(node)
        node = node.body
    existentials: List[Quant] = []
    while isinstance(node, Quant) and node.standard and node.kind is QuantKind.EXISTS:
        existentials.append(node)
        node = node.body
    if not universals or not existentials or not is_internal(node):
        return None
    return universals, existentials, node


def matches_idealisation(node: Formula) -> bool:
    return _split_idealisation(node) is not None


def idealise(f: Formula, path: Path) -> Tuple[Formula, WitnessOp]:
    """(∀x)(∃st y:τ)φ becomes (∃st w:τ*)(∀x)(∃y ∈ w)φ, one sequence per standard existential."""
    split = _split_idealisation(at_path(f, path))
    if split is None:
        raise RulePreconditionError(
            Rule.IDEALISE, path, "expected internal universals, then standard existentials, then an internal matrix"
        )
    universals, existentials, matrix = split
    used = all_names(f)
    sequences = [(_claim(Symbols.SEQUENCE_STEM, used), q) for q in existentials]

    result = matrix
    for name, q in reversed(sequences):
        result = ElemOfSeq(q.var, Var(name, Seq(q.type)), result)
    for q in reversed(universals):
        result = Quant(QuantKind.FORALL, False, q.var, q.type, result)
    for name, q in reversed(sequences):
        result = Quant(QuantKind.EXISTS, True, name, Seq(q.type), result)
    return replace_at(f, path, result), WitnessOp("idealise", tuple((name, q.var) for name, q in sequences))


# R6

def _strip_bounded(node: Formula, sequence: str, variable: str, path: Path) -> Formula:
    match node:
        case ElemOfSeq(var, Var(name, _), body) if name == sequence:
            if var != variable:
                raise RulePreconditionError(Rule.COLLAPSE, path, f"{name} bounds {var}, not {variable}")
            return body
        case Quant() | ElemOfSeq():
            return with_children(node, (_strip_bounded(node.body, sequence, variable, path),))
    raise RulePreconditionError(Rule.COLLAPSE, path, f"no bounded quantifier over {sequence}")


def max_collapse(f: Formula, path: Path, ann: Optional[MonotoneAnnotation]) -> Tuple[Formula, WitnessOp]:
    """(∃st w:0*)(Q…)(∃y ∈ w)φ becomes (∃st y:0)(Q…)φ, with y the max (or min) of w."""
    if ann is None:
        raise MissingAnnotationError(Rule.COLLAPSE, path, "collapsing a sequence needs a monotonicity annotation")
    node = at_path(f, path)
    if not (isinstance(node, Quant) and node.standard and node.kind is QuantKind.EXISTS and isinstance(node.type, Seq)):
        raise RulePreconditionError(Rule.COLLAPSE, path, "expected a standard existential over a sequence")
    if node.type.element != NAT:
        raise RulePreconditionError(Rule.COLLAPSE, path, "only sequences of naturals collapse to a bound")
    body = _strip_bounded(node.body, node.var, ann.variable, path)
    collapsed = Quant(QuantKind.EXISTS, True, ann.variable, NAT, body)
    kind = "collapse-max" if ann.direction is Direction.UPWARD else "collapse-min"
    return replace_at(f, path, collapsed), WitnessOp(kind, ((ann.variable, node.var),))


def collapse_term(op: WitnessOp, sequence):
    return MaxOf(sequence) if op.kind == "collapse-max" else MinOf(sequence)


# R3

def split_normal_form(f: Formula) -> Optional[Tuple[List[Quant], List[Quant], Formula]]:
    universals: List[Quant] = []
    while isinstance(f, Quant) and f.standard and f.kind is QuantKind.FORALL:
        universals.append(f)
        f = f.body
    existentials: List[Quant] = []
    while isinstance(f, Quant) and f.standard and f.kind is QuantKind.EXISTS:
        existentials.append(f)
        f = f.body
    if not is_internal(f):
        return None
    return universals, existentials, f


def is_normal_form(f: Formula) -> bool:
    """True iff f is (∀st x…)(∃st y…)φ with φ internal; either block may be empty."""
    return split_normal_form(f) is not None


def herbrandize_antecedent(f: Formula, path: Path) -> Tuple[Formula, WitnessOp]:
    """(∀st a)(∃st b)ψ → C becomes (∀st g)((∀st a)ψ(a, g a) → C)."""
    node = at_path(f, path)
    if not isinstance(node, Implies):
        raise RulePreconditionError(Rule.HERBRANDIZE, path, "expected an implication")
    split = split_normal_form(node.left)
    if split is None or not split[1]:
        raise RulePreconditionError(Rule.HERBRANDIZE, path, "antecedent is not a normal form with standard existentials")
    universals, existentials, matrix = split
    used = all_names(f)
    arguments = [Var(q.var, q.type) for q in universals]
    functions = []
    replacements = {}
    for q in existentials:
        name = _claim(Symbols.HERBRAND_STEM, used)
        fun_type = arrow(*[a.type for a in arguments], q.type)
        functions.append((name, fun_type, q.var))
        replacements[q.var] = apply_all(Var(name, fun_type), *arguments)

    antecedent = substitute(matrix, replacements)
    for q in reversed(universals):
        antecedent = Quant(QuantKind.FORALL, True, q.var, q.type, antecedent)
    result: Formula = Implies(antecedent, node.right)
    for name, fun_type, _ in reversed(functions):
        result = Quant(QuantKind.FORALL, True, name, fun_type, result)
    return replace_at(f, path, result), WitnessOp("abstract", tuple((name, var) for name, _, var in functions))


# R4

def drop_st(f: Formula, path: Path, ann: Optional[MonotoneAnnotation] = None) -> Tuple[Formula, WitnessOp]:
    """Turn a standard universal in negative position into a plain universal."""
    node = at_path(f, path)
    if not (isinstance(node, Quant) and node.standard and node.kind is QuantKind.FORALL):
        raise RulePreconditionError(Rule.DROP_ST, path, "expected a standard universal")
    if polarity(f, path) > 0:
        raise UnsoundRuleApplicationError(Rule.DROP_ST, path, f"(forall^st {node.var}) is in positive position")
    return replace_at(f, path, Quant(QuantKind.FORALL, False, node.var, node.type, node.body)), WitnessOp(
        "weaken", ((node.var, ""),)
    )


def first_offending_position(f: Formula) -> Path:
    """Position of the first node that keeps `f` from being a normal form."""
    path: Path = ()
    node = f
    for kind in (QuantKind.FORALL, QuantKind.EXISTS):
        while isinstance(node, Quant) and node.standard and node.kind is kind:
            node = node.body
            path += (0,)
    for sub_path, sub in walk(node):
        if isinstance(sub, SUGAR) or (isinstance(sub, Quant) and sub.standard) or isinstance(sub, St):
            return path + sub_path
    return path
