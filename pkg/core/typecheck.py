"""Typing for terms and formulas.

Types are assigned by a small unifier. Fully annotated input never leaves an
unknown behind, so checking is deterministic; the parser uses the same
machinery to infer types of undeclared free symbols, and defaults whatever
stays unknown to type 0.
"""
from dataclasses import dataclass, field
from itertools import count
from typing import Dict, Mapping, Optional, Tuple

from core.formulas import (
    ApproxBaire, ApproxReal, ElemOfSeq, Formula, InfiniteNat, Quant, Rel, St,
    children, free_vars, map_terms, with_children,
)
from core.terms import (
    App, Lam, MaxOf, MinOf, NumLit, Rec, SeqAppend, SeqGet, SeqLen, SeqLit,
    Succ, TermExpr, Var, Zero, map_subterms,
)
from core.types import NAT, ONE, Arrow, FinType, Nat, Seq, render_type
from exceptions.nsakit_exceptions import NsaTypeError

BUILTIN_RELATIONS: Dict[str, Tuple[FinType, ...]] = {
    "eq": (NAT, NAT),
    "lt": (NAT, NAT),
    "le": (NAT, NAT),
    "le1": (ONE, ONE),
}

_META_IDS = count()


@dataclass(frozen=True, slots=True)
class TypeMeta:
    """Unknown type awaiting unification"""
    id: int

    def __str__(self) -> str:
        return f"?{self.id}"


def fresh_meta() -> TypeMeta:
    return TypeMeta(next(_META_IDS))


@dataclass
class Signature:
    """Declared types for free variables and relation symbols"""
    variables: Dict[str, FinType] = field(default_factory=dict)
    relations: Dict[str, Tuple[FinType, ...]] = field(default_factory=dict)

    def merged(self, other: Optional["Signature"]) -> "Signature":
        if other is None:
            return Signature(dict(self.variables), dict(self.relations))
        return Signature({**self.variables, **other.variables}, {**self.relations, **other.relations})


class Unifier:
    """Union-find over type metavariables"""

    def __init__(self):
        self.bindings: Dict[TypeMeta, FinType] = {}

    def walk(self, t):
        while isinstance(t, TypeMeta) and t in self.bindings:
            t = self.bindings[t]
        return t

    def resolve(self, t, default: FinType = NAT) -> FinType:
        t = self.walk(t)
        match t:
            case TypeMeta():
                self.bindings[t] = default
                return default
            case Arrow(domain, codomain):
                return Arrow(self.resolve(domain, default), self.resolve(codomain, default))
            case Seq(element):
                return Seq(self.resolve(element, default))
        return t

    def _occurs(self, meta: TypeMeta, t) -> bool:
        t = self.walk(t)
        if t == meta:
            return True
        match t:
            case Arrow(domain, codomain):
                return self._occurs(meta, domain) or self._occurs(meta, codomain)
            case Seq(element):
                return self._occurs(meta, element)
        return False

    def unify(self, expected, found, where: str) -> None:
        a, b = self.walk(expected), self.walk(found)
        if a == b:
            return
        if isinstance(a, TypeMeta) and not self._occurs(a, b):
            self.bindings[a] = b
            return
        if isinstance(b, TypeMeta) and not self._occurs(b, a):
            self.bindings[b] = a
            return
        match a, b:
            case Arrow(d1, c1), Arrow(d2, c2):
                self.unify(d1, d2, where)
                self.unify(c1, c2, where)
                return
            case Seq(e1), Seq(e2):
                self.unify(e1, e2, where)
                return
        raise NsaTypeError(
            f"type mismatch in {where}: expected {render_type(self.resolve_shallow(a))}, "
            f"found {render_type(self.resolve_shallow(b))}",
            subterm=where,
        )

    def resolve_shallow(self, t):
        t = self.walk(t)
        match t:
            case Arrow(domain, codomain):
                return Arrow(self.resolve_shallow(domain), self.resolve_shallow(codomain))
            case Seq(element):
                return Seq(self.resolve_shallow(element))
        return t


def _show(term: TermExpr) -> str:
    from core.printer import print_term
    return print_term(term)


def infer_term(term: TermExpr, unifier: Unifier, scope: Mapping[str, FinType] = None):
    """Type of `term` under `unifier`; bound occurrences must agree with their binder."""
    scope = scope or {}
    match term:
        case Var(name, var_type):
            if name in scope:
                unifier.unify(scope[name], var_type, _show(term))
            return var_type
        case Zero() | NumLit():
            return NAT
        case Succ(arg):
            unifier.unify(NAT, infer_term(arg, unifier, scope), _show(term))
            return NAT
        case App(fun, arg):
            fun_type = infer_term(fun, unifier, scope)
            arg_type = infer_term(arg, unifier, scope)
            walked = unifier.walk(fun_type)
            if isinstance(walked, (Nat, Seq)):
                raise NsaTypeError(f"{_show(fun)} is not a function in {_show(term)}", subterm=_show(term))
            result = fresh_meta()
            unifier.unify(fun_type, Arrow(arg_type, result), _show(term))
            return result
        case Lam(var, body):
            inner = {**scope, var.name: var.type}
            return Arrow(var.type, infer_term(body, unifier, inner))
        case Rec(base, step):
            base_type = infer_term(base, unifier, scope)
            step_type = infer_term(step, unifier, scope)
            unifier.unify(Arrow(NAT, Arrow(base_type, base_type)), step_type, _show(term))
            return Arrow(NAT, base_type)
        case SeqLit(elements, element_type):
            for element in elements:
                unifier.unify(element_type, infer_term(element, unifier, scope), _show(term))
            return Seq(element_type)
        case SeqLen(seq):
            unifier.unify(Seq(fresh_meta()), infer_term(seq, unifier, scope), _show(term))
            return NAT
        case SeqGet(seq, index):
            element = fresh_meta()
            unifier.unify(Seq(element), infer_term(seq, unifier, scope), _show(term))
            unifier.unify(NAT, infer_term(index, unifier, scope), _show(term))
            return element
        case SeqAppend(seq, element):
            element_type = fresh_meta()
            unifier.unify(Seq(element_type), infer_term(seq, unifier, scope), _show(term))
            unifier.unify(element_type, infer_term(element, unifier, scope), _show(term))
            return Seq(element_type)
        case MaxOf(seq) | MinOf(seq):
            unifier.unify(Seq(NAT), infer_term(seq, unifier, scope), _show(term))
            return NAT
    raise NsaTypeError(f"not a term: {term!r}")


def type_of(term: TermExpr) -> FinType:
    """The unique type of a fully annotated term."""
    unifier = Unifier()
    return unifier.resolve(infer_term(term, unifier))


def infer_formula(
    f: Formula,
    unifier: Unifier,
    relations: Dict[str, Tuple],
    scope: Mapping[str, FinType] = None,
) -> None:
    """Collect typing constraints of `f`; relation signatures accumulate in `relations`."""
    from core.printer import print_formula

    scope = dict(scope or {})
    match f:
        case Rel(symbol, args):
            arg_types = [infer_term(a, unifier, scope) for a in args]
            declared = BUILTIN_RELATIONS.get(symbol) or relations.get(symbol)
            if declared is None:
                relations[symbol] = tuple(arg_types)
                return
            if len(declared) != len(args):
                raise NsaTypeError(
                    f"relation {symbol} takes {len(declared)} arguments, got {len(args)} in {print_formula(f)}",
                    subterm=print_formula(f),
                )
            for expected, found, arg in zip(declared, arg_types, args):
                unifier.unify(expected, found, _show(arg))
        case St(term):
            infer_term(term, unifier, scope)
        case ApproxReal(left, right, _):
            unifier.unify(infer_term(left, unifier, scope), infer_term(right, unifier, scope), print_formula(f))
        case ApproxBaire(left, right, _):
            unifier.unify(ONE, infer_term(left, unifier, scope), _show(left))
            unifier.unify(ONE, infer_term(right, unifier, scope), _show(right))
        case Quant(var=var, type=var_type, body=body):
            scope[var] = var_type
            infer_formula(body, unifier, relations, scope)
        case InfiniteNat(var, body):
            scope[var] = NAT
            infer_formula(body, unifier, relations, scope)
        case ElemOfSeq(var, seq, body):
            element = fresh_meta()
            unifier.unify(Seq(element), infer_term(seq, unifier, scope), _show(seq))
            scope[var] = element
            infer_formula(body, unifier, relations, scope)
        case _:
            for child in children(f):
                infer_formula(child, unifier, relations, scope)


def resolve_term(term: TermExpr, unifier: Unifier) -> TermExpr:
    match term:
        case Var(name, var_type):
            return Var(name, unifier.resolve(var_type))
        case Lam(var, body):
            return Lam(Var(var.name, unifier.resolve(var.type)), resolve_term(body, unifier))
        case SeqLit(elements, element_type):
            return SeqLit(tuple(resolve_term(e, unifier) for e in elements), unifier.resolve(element_type))
    return map_subterms(term, lambda sub: resolve_term(sub, unifier))


def resolve_formula(f: Formula, unifier: Unifier) -> Formula:
    """Replace every metavariable by its solution (type 0 when unconstrained)."""
    f = map_terms(f, lambda t: resolve_term(t, unifier))
    return _resolve_binders(f, unifier)


def _resolve_binders(f: Formula, unifier: Unifier) -> Formula:
    kids = tuple(_resolve_binders(c, unifier) for c in children(f))
    if isinstance(f, Quant):
        return Quant(f.kind, f.standard, f.var, unifier.resolve(f.type), kids[0])
    return with_children(f, kids) if kids else f


def type_check(f: Formula, signature: Optional[Signature] = None) -> Dict[str, Tuple[FinType, ...]]:
    """Check `f` and return the relation signature it uses.

    Raises NsaTypeError naming the offending subterm.
    """
    unifier = Unifier()
    relations: Dict[str, Tuple] = dict(signature.relations) if signature else {}
    scope = {**free_vars(f), **(signature.variables if signature else {})}
    infer_formula(f, unifier, relations, scope)
    return {name: tuple(unifier.resolve(t) for t in types) for name, types in relations.items()}
