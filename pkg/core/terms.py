"""Terms of the finite-type calculus with sequences and max."""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, Mapping, Tuple, Union

from core.names import fresh_name
from core.types import FinType


@dataclass(frozen=True, slots=True)
class Var:
    name: str
    type: FinType


@dataclass(frozen=True, slots=True)
class App:
    fun: "TermExpr"
    arg: "TermExpr"


@dataclass(frozen=True, slots=True)
class Lam:
    var: Var
    body: "TermExpr"


@dataclass(frozen=True, slots=True)
class Zero:
    pass


@dataclass(frozen=True, slots=True)
class Succ:
    arg: "TermExpr"


@dataclass(frozen=True, slots=True)
class NumLit:
    n: int


@dataclass(frozen=True, slots=True)
class Rec:
    """Primitive recursor: Rec(b, s) 0 = b and Rec(b, s) (n+1) = s n (Rec(b, s) n)."""
    base: "TermExpr"
    step: "TermExpr"


@dataclass(frozen=True, slots=True)
class SeqLit:
    elements: Tuple["TermExpr", ...]
    element_type: FinType


@dataclass(frozen=True, slots=True)
class SeqLen:
    seq: "TermExpr"


@dataclass(frozen=True, slots=True)
class SeqGet:
    """Out-of-range reads yield the default value of the element type."""
    seq: "TermExpr"
    index: "TermExpr"


@dataclass(frozen=True, slots=True)
class SeqAppend:
    seq: "TermExpr"
    element: "TermExpr"


@dataclass(frozen=True, slots=True)
class MaxOf:
    """Maximum of a sequence of naturals, 0 when empty."""
    seq: "TermExpr"


@dataclass(frozen=True, slots=True)
class MinOf:
    """Minimum of a sequence of naturals, 0 when empty."""
    seq: "TermExpr"


TermExpr = Union[Var, App, Lam, Zero, Succ, NumLit, Rec, SeqLit, SeqLen, SeqGet, SeqAppend, MaxOf, MinOf]


def subterms(term: TermExpr) -> Iterator[TermExpr]:
    """Immediate subterms, left to right."""
    match term:
        case App(fun, arg):
            yield fun
            yield arg
        case Lam(_, body):
            yield body
        case Succ(arg):
            yield arg
        case Rec(base, step):
            yield base
            yield step
        case SeqLit(elements, _):
            yield from elements
        case SeqLen(seq) | MaxOf(seq) | MinOf(seq):
            yield seq
        case SeqGet(seq, index):
            yield seq
            yield index
        case SeqAppend(seq, element):
            yield seq
            yield element


def free_vars(term: TermExpr) -> Dict[str, FinType]:
    found: Dict[str, FinType] = {}
    _collect_free(term, frozenset(), found)
    return found


def _collect_free(term: TermExpr, bound: FrozenSet[str], found: Dict[str, FinType]) -> None:
    match term:
        case Var(name, var_type):
            if name not in bound:
                found.setdefault(name, var_type)
        case Lam(var, body):
            _collect_free(body, bound | {var.name}, found)
        case _:
            for sub in subterms(term):
                _collect_free(sub, bound, found)


def bound_names(term: TermExpr) -> Iterator[str]:
    match term:
        case Lam(var, body):
            yield var.name
            yield from bound_names(body)
        case _:
            for sub in subterms(term):
                yield from bound_names(sub)


def map_subterms(term: TermExpr, fn) -> TermExpr:
    """Rebuild `term` with `fn` applied to each immediate subterm."""
    match term:
        case App(fun, arg):
            return App(fn(fun), fn(arg))
        case Lam(var, body):
            return Lam(var, fn(body))
        case Succ(arg):
            return Succ(fn(arg))
        case Rec(base, step):
            return Rec(fn(base), fn(step))
        case SeqLit(elements, element_type):
            return SeqLit(tuple(fn(e) for e in elements), element_type)
        case SeqLen(seq):
            return SeqLen(fn(seq))
        case MaxOf(seq):
            return MaxOf(fn(seq))
        case MinOf(seq):
            return MinOf(fn(seq))
        case SeqGet(seq, index):
            return SeqGet(fn(seq), fn(index))
        case SeqAppend(seq, element):
            return SeqAppend(fn(seq), fn(element))
    return term


def substitute_term(term: TermExpr, mapping: Mapping[str, TermExpr]) -> TermExpr:
    """Capture-avoiding replacement of free variables by terms."""
    if not mapping:
        return term
    match term:
        case Var(name, _):
            return mapping.get(name, term)
        case Lam(var, body):
            inner = {k: v for k, v in mapping.items() if k != var.name}
            if not inner:
                return term
            incoming = set()
            for replacement in inner.values():
                incoming.update(free_vars(replacement))
            if var.name in incoming:
                used = incoming | set(free_vars(body)) | set(bound_names(body)) | set(inner)
                renamed = Var(fresh_name(var.name, used), var.type)
                body = substitute_term(body, {var.name: renamed})
                var = renamed
            return Lam(var, substitute_term(body, inner))
    return map_subterms(term, lambda sub: substitute_term(sub, mapping))


def rename_term(term: TermExpr, renaming: Mapping[str, str]) -> TermExpr:
    """Rename variables (bound and free) by name."""
    match term:
        case Var(name, var_type):
            return Var(renaming.get(name, name), var_type)
        case Lam(var, body):
            return Lam(Var(renaming.get(var.name, var.name), var.type), rename_term(body, renaming))
    return map_subterms(term, lambda sub: rename_term(sub, renaming))


def apply_all(fun: TermExpr, *args: TermExpr) -> TermExpr:
    result = fun
    for arg in args:
        result = App(result, arg)
    return result


def lam_all(params: Tuple[Var, ...], body: TermExpr) -> TermExpr:
    result = body
    for param in reversed(params):
        result = Lam(param, result)
    return result
