"""Formula AST, positions, substitution and alpha-normalization."""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Set, Tuple, Union

from core.names import fresh_name
from core.terms import (
    Lam, TermExpr, Var, bound_names as term_bound_names, free_vars as term_free_vars,
    map_subterms, substitute_term, subterms,
)
from core.types import FinType

Path = Tuple[int, ...]


class QuantKind(str, Enum):
    FORALL = "forall"
    EXISTS = "exists"

    def dual(self) -> "QuantKind":
        return QuantKind.EXISTS if self is QuantKind.FORALL else QuantKind.FORALL


class Classification(str, Enum):
    INTERNAL = "internal"
    EXTERNAL = "external"


@dataclass(frozen=True, slots=True)
class Rel:
    """Declared internal relation applied to terms"""
    symbol: str
    args: Tuple[TermExpr, ...]


@dataclass(frozen=True, slots=True)
class Not:
    body: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Quant:
    kind: QuantKind
    standard: bool
    var: str
    type: FinType
    body: "Formula"


@dataclass(frozen=True, slots=True)
class St:
    term: TermExpr


@dataclass(frozen=True, slots=True)
class ApproxReal:
    """x ≈ y on reals; `index` names the standard precision variable R1 introduces"""
    left: TermExpr
    right: TermExpr
    index: Optional[str] = None


@dataclass(frozen=True, slots=True)
class ApproxBaire:
    """f ≈₁ g on Baire space"""
    left: TermExpr
    right: TermExpr
    index: Optional[str] = None


@dataclass(frozen=True, slots=True)
class InfiniteNat:
    """(∀N ∈ Ω) body: N ranges over nonstandard numbers"""
    var: str
    body: "Formula"


@dataclass(frozen=True, slots=True)
class ElemOfSeq:
    """Bounded existential (∃var ∈ seq) body"""
    var: str
    seq: TermExpr
    body: "Formula"


Formula = Union[Rel, Not, And, Or, Implies, Quant, St, ApproxReal, ApproxBaire, InfiniteNat, ElemOfSeq]

SUGAR = (ApproxReal, ApproxBaire, InfiniteNat)
BINARY = (And, Or, Implies)


def children(f: Formula) -> Tuple[Formula, ...]:
    match f:
        case Not(body) | Quant(body=body) | InfiniteNat(body=body) | ElemOfSeq(body=body):
            return (body,)
        case And(left, right) | Or(left, right) | Implies(left, right):
            return (left, right)
    return ()


def with_children(f: Formula, new: Tuple[Formula, ...]) -> Formula:
    match f:
        case Not():
            return Not(new[0])
        case Quant(kind, standard, var, var_type, _):
            return Quant(kind, standard, var, var_type, new[0])
        case InfiniteNat(var, _):
            return InfiniteNat(var, new[0])
        case ElemOfSeq(var, seq, _):
            return ElemOfSeq(var, seq, new[0])
        case And():
            return And(new[0], new[1])
        case Or():
            return Or(new[0], new[1])
        case Implies():
            return Implies(new[0], new[1])
    return f


def at_path(f: Formula, path: Path) -> Formula:
    node = f
    for index in path:
        kids = children(node)
        if index >= len(kids):
            raise IndexError(f"path {list(path)} leaves the formula")
        node = kids[index]
    return node


def replace_at(f: Formula, path: Path, replacement: Formula) -> Formula:
    if not path:
        return replacement
    kids = list(children(f))
    head, rest = path[0], path[1:]
    if head >= len(kids):
        raise IndexError(f"path {list(path)} leaves the formula")
    kids[head] = replace_at(kids[head], rest, replacement)
    return with_children(f, tuple(kids))


def walk(f: Formula, path: Path = ()) -> Iterator[Tuple[Path, Formula]]:
    """Pre-order traversal yielding (path, node)."""
    yield path, f
    for index, child in enumerate(children(f)):
        yield from walk(child, path + (index,))


def walk_postorder(f: Formula, path: Path = ()) -> Iterator[Tuple[Path, Formula]]:
    for index, child in enumerate(children(f)):
        yield from walk_postorder(child, path + (index,))
    yield path, f


def polarity(f: Formula, path: Path) -> int:
    """+1 for positive position, -1 for negative (under an odd number of negations)."""
    sign = 1
    node = f
    for index in path:
        if isinstance(node, Not) or (isinstance(node, Implies) and index == 0):
            sign = -sign
        node = children(node)[index]
    return sign


def own_terms(f: Formula) -> Tuple[TermExpr, ...]:
    """Terms occurring directly in the node (not in subformulas)."""
    match f:
        case Rel(_, args):
            return tuple(args)
        case St(term):
            return (term,)
        case ApproxReal(left, right, _) | ApproxBaire(left, right, _):
            return (left, right)
        case ElemOfSeq(_, seq, _):
            return (seq,)
    return ()


def binder_of(f: Formula) -> Optional[str]:
    match f:
        case Quant(var=var) | InfiniteNat(var=var) | ElemOfSeq(var=var):
            return var
    return None


def free_vars(f: Formula) -> Dict[str, FinType]:
    found: Dict[str, FinType] = {}
    _free(f, frozenset(), found)
    return found


def _free(f: Formula, bound: frozenset, found: Dict[str, FinType]) -> None:
    for term in own_terms(f):
        for name, var_type in term_free_vars(term).items():
            if name not in bound:
                found.setdefault(name, var_type)
    binder = binder_of(f)
    inner = bound | {binder} if binder is not None else bound
    for child in children(f):
        _free(child, inner, found)


def bound_names(f: Formula) -> Set[str]:
    names: Set[str] = set()
    for _, node in walk(f):
        binder = binder_of(node)
        if binder is not None:
            names.add(binder)
        for term in own_terms(node):
            names.update(term_bound_names(term))
    return names


def all_names(f: Formula) -> Set[str]:
    return bound_names(f) | set(free_vars(f)) | {
        node.index for _, node in walk(f)
        if isinstance(node, (ApproxReal, ApproxBaire)) and node.index is not None
    }


def map_terms(f: Formula, fn) -> Formula:
    """Apply `fn` to every term directly held by every node."""
    match f:
        case Rel(symbol, args):
            return Rel(symbol, tuple(fn(a) for a in args))
        case St(term):
            return St(fn(term))
        case ApproxReal(left, right, index):
            return ApproxReal(fn(left), fn(right), index)
        case ApproxBaire(left, right, index):
            return ApproxBaire(fn(left), fn(right), index)
        case ElemOfSeq(var, seq, body):
            return ElemOfSeq(var, fn(seq), map_terms(body, fn))
    return with_children(f, tuple(map_terms(c, fn) for c in children(f)))


def substitute(f: Formula, mapping: Mapping[str, TermExpr]) -> Formula:
    """Capture-avoiding substitution of terms for free variables."""
    if not mapping:
        return f
    incoming: Set[str] = set()
    for term in mapping.values():
        incoming.update(term_free_vars(term))
    if incoming & bound_names(f):
        f = alpha_normalize(f, reserved=incoming | set(mapping))
    return _subst(f, dict(mapping))


def _subst(f: Formula, mapping: Dict[str, TermExpr]) -> Formula:
    if not mapping:
        return f
    match f:
        case Rel(symbol, args):
            return Rel(symbol, tuple(substitute_term(a, mapping) for a in args))
        case St(term):
            return St(substitute_term(term, mapping))
        case ApproxReal(left, right, index):
            return ApproxReal(substitute_term(left, mapping), substitute_term(right, mapping), index)
        case ApproxBaire(left, right, index):
            return ApproxBaire(substitute_term(left, mapping), substitute_term(right, mapping), index)
        case ElemOfSeq(var, seq, body):
            inner = {k: v for k, v in mapping.items() if k != var}
            return ElemOfSeq(var, substitute_term(seq, mapping), _subst(body, inner))
        case Quant(kind, standard, var, var_type, body):
            inner = {k: v for k, v in mapping.items() if k != var}
            return Quant(kind, standard, var, var_type, _subst(body, inner))
        case InfiniteNat(var, body):
            inner = {k: v for k, v in mapping.items() if k != var}
            return InfiniteNat(var, _subst(body, inner))
    return with_children(f, tuple(_subst(c, mapping) for c in children(f)))


def alpha_normalize(f: Formula, reserved: Optional[Set[str]] = None) -> Formula:
    """Rename binders so every binder is unique and distinct from free names.

    Binders keep their name when it is still unused, so the operation is
    idempotent.
    """
    used = set(free_vars(f)) | set(reserved or ())
    return _normalize(f, {}, used)


def _fresh(name: str, used: Set[str]) -> str:
    new = fresh_name(name, used) if name in used else name
    used.add(new)
    return new


def _normalize_term(term: TermExpr, env: Dict[str, str], used: Set[str]) -> TermExpr:
    match term:
        case Var(name, var_type):
            return Var(env.get(name, name), var_type)
        case Lam(var, body):
            new = _fresh(var.name, used)
            return Lam(Var(new, var.type), _normalize_term(body, {**env, var.name: new}, used))
    return map_subterms(term, lambda sub: _normalize_term(sub, env, used))


def _normalize(f: Formula, env: Dict[str, str], used: Set[str]) -> Formula:
    match f:
        case Quant(kind, standard, var, var_type, body):
            new = _fresh(var, used)
            return Quant(kind, standard, new, var_type, _normalize(body, {**env, var: new}, used))
        case InfiniteNat(var, body):
            new = _fresh(var, used)
            return InfiniteNat(new, _normalize(body, {**env, var: new}, used))
        case ElemOfSeq(var, seq, body):
            seq = _normalize_term(seq, env, used)
            new = _fresh(var, used)
            return ElemOfSeq(new, seq, _normalize(body, {**env, var: new}, used))
        case ApproxReal(left, right, index) | ApproxBaire(left, right, index):
            left = _normalize_term(left, env, used)
            right = _normalize_term(right, env, used)
            if index is not None:
                index = _fresh(index, used)
            return type(f)(left, right, index)
    kids = tuple(_normalize(c, env, used) for c in children(f))
    if kids:
        return with_children(f, kids)
    return map_terms(f, lambda t: _normalize_term(t, env, used))


def alpha_equivalent(f: Formula, g: Formula) -> bool:
    """Structural equality up to renaming of bound variables."""
    return _alpha(f, g, {}, {}, [0])


def _bind(left: Dict[str, int], right: Dict[str, int], a: str, b: str, counter: List[int]):
    counter[0] += 1
    return {**left, a: counter[0]}, {**right, b: counter[0]}


def _alpha_term(s: TermExpr, t: TermExpr, left: Dict[str, int], right: Dict[str, int], counter: List[int]) -> bool:
    if type(s) is not type(t):
        return False
    match s:
        case Var(name, var_type):
            if var_type != t.type:
                return False
            if name in left or t.name in right:
                return left.get(name) == right.get(t.name)
            return name == t.name
        case Lam(var, body):
            if var.type != t.var.type:
                return False
            inner_left, inner_right = _bind(left, right, var.name, t.var.name, counter)
            return _alpha_term(body, t.body, inner_left, inner_right, counter)
    pairs_s = list(subterms(s))
    pairs_t = list(subterms(t))
    if len(pairs_s) != len(pairs_t):
        return False
    if not pairs_s:
        return s == t
    if _shallow_fields(s) != _shallow_fields(t):
        return False
    return all(_alpha_term(a, b, left, right, counter) for a, b in zip(pairs_s, pairs_t))


def _shallow_fields(term: TermExpr) -> Tuple:
    """Non-term payload of a term node (numeral values, literal element types)."""
    element_type = getattr(term, "element_type", None)
    return (type(term).__name__, element_type)


def _alpha(f: Formula, g: Formula, left: Dict[str, int], right: Dict[str, int], counter: List[int]) -> bool:
    if type(f) is not type(g):
        return False
    match f:
        case Quant(kind, standard, var, var_type, body):
            if (kind, standard, var_type) != (g.kind, g.standard, g.type):
                return False
            inner_left, inner_right = _bind(left, right, var, g.var, counter)
            return _alpha(body, g.body, inner_left, inner_right, counter)
        case InfiniteNat(var, body):
            inner_left, inner_right = _bind(left, right, var, g.var, counter)
            return _alpha(body, g.body, inner_left, inner_right, counter)
        case ElemOfSeq(var, seq, body):
            if not _alpha_term(seq, g.seq, left, right, counter):
                return False
            inner_left, inner_right = _bind(left, right, var, g.var, counter)
            return _alpha(body, g.body, inner_left, inner_right, counter)
        case Rel(symbol, args):
            return symbol == g.symbol and len(args) == len(g.args) and all(
                _alpha_term(a, b, left, right, counter) for a, b in zip(args, g.args)
            )
    own_f, own_g = own_terms(f), own_terms(g)
    if len(own_f) != len(own_g) or not all(
        _alpha_term(a, b, left, right, counter) for a, b in zip(own_f, own_g)
    ):
        return False
    return all(_alpha(a, b, left, right, counter) for a, b in zip(children(f), children(g)))


def is_internal(f: Formula) -> bool:
    for _, node in walk(f):
        if isinstance(node, (St,) + SUGAR):
            return False
        if isinstance(node, Quant) and node.standard:
            return False
    return True


def classify(f: Formula) -> Classification:
    """Internal iff no st, no standard quantifier and no closeness or Ω sugar.

    The bounded quantifier (∃y ∈ w) unfolds to an internal formula and does
    not make a formula external.
    """
    return Classification.INTERNAL if is_internal(f) else Classification.EXTERNAL


def forall(var: str, var_type: FinType, body: Formula, standard: bool = False) -> Formula:
    return Quant(QuantKind.FORALL, standard, var, var_type, body)


def exists(var: str, var_type: FinType, body: Formula, standard: bool = False) -> Formula:
    return Quant(QuantKind.EXISTS, standard, var, var_type, body)
