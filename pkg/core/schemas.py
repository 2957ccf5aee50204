"""Named axiom and definition schemas with typed holes."""
import re
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from core.formulas import Formula, substitute
from core.names import fresh_name
from core.parser import parse, parse_type
from core.terms import TermExpr, Var
from core.typecheck import Signature, type_check, type_of
from core.types import FinType, render_type
from exceptions.nsakit_exceptions import NsaTypeError, SchemaArityError, UnknownSchemaError


@dataclass(frozen=True)
class Hole:
    """A template parameter; binder holes rename a quantified variable instead of being substituted"""
    name: str
    type: FinType
    binder: bool = False


@dataclass(frozen=True)
class SchemaTemplate:
    name: str
    text: str
    holes: Tuple[Hole, ...] = ()
    variables: Dict[str, str] = field(default_factory=dict)
    relations: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    def signature(self) -> Signature:
        variables = {name: parse_type(t) for name, t in self.variables.items()}
        variables.update({h.name: h.type for h in self.holes if not h.binder})
        relations = {name: tuple(parse_type(t) for t in types) for name, types in self.relations.items()}
        return Signature(variables, relations)


def _t(text: str) -> FinType:
    return parse_type(text)


_REAL_SYMBOLS = {"mesh": "1->1", "rsum": "(1->1)->1->1", "zeroR": "1"}
_REAL_RELATIONS = {"unitI": ("1",), "partition": ("1",)}
_BAIRE_SYMBOLS = {"initSeg": "1->0->0", "cat": "0*->1->1"}

SCHEMA_LIBRARY: Dict[str, SchemaTemplate] = {
    "UniformContinuity": SchemaTemplate(
        "UniformContinuity",
        "(forall x:1)(forall y:1)((unitI(x) & unitI(y)) -> (approxR(x, y) -> approxR(f x, f y)))",
        (Hole("f", _t("1->1")),),
        relations=_REAL_RELATIONS,
    ),
    "PointwiseContinuity": SchemaTemplate(
        "PointwiseContinuity",
        "(forall^st x:1)(forall y:1)((unitI(x) & unitI(y)) -> (approxR(x, y) -> approxR(f x, f y)))",
        (Hole("f", _t("1->1")),),
        relations=_REAL_RELATIONS,
    ),
    "NSIntegrable": SchemaTemplate(
        "NSIntegrable",
        "(forall p:1)(forall q:1)((partition(p) & partition(q)) -> "
        "((approxR(mesh p, zeroR) & approxR(mesh q, zeroR)) -> approxR(rsum f p, rsum f q)))",
        (Hole("f", _t("1->1")),),
        variables=_REAL_SYMBOLS,
        relations=_REAL_RELATIONS,
    ),
    "CRI_ns": SchemaTemplate(
        "CRI_ns",
        "(forall f:1->1)("
        "(forall x:1)(forall y:1)((unitI(x) & unitI(y)) -> (approxR[N](x, y) -> approxR[k](f x, f y))) -> "
        "(forall p:1)(forall q:1)((partition(p) & partition(q)) -> "
        "((approxR[M1](mesh p, zeroR) & approxR[M2](mesh q, zeroR)) -> approxR[n](rsum f p, rsum f q))))",
        variables=_REAL_SYMBOLS,
        relations=_REAL_RELATIONS,
    ),
    "MCT_ns": SchemaTemplate(
        "MCT_ns",
        "(forall^st c:0->1)((forall n:0) monoStep(c, n) -> inOmega(N) inOmega(M) approxR(c N, c M))",
        relations={"monoStep": ("0->1", "0")},
    ),
    "Pi01-TRANS": SchemaTemplate(
        "Pi01-TRANS",
        "(forall^st f:1)((forall^st n:0) ~eq(f n, 0) -> (forall m:0) ~eq(f m, 0))",
        (Hole("f", _t("1"), binder=True),),
    ),
    "Sigma02-TRANS": SchemaTemplate(
        "Sigma02-TRANS",
        "(forall^st f:0->1)((exists m:0)(forall n:0) eq(f m n, 0) -> (exists^st k:0)(forall l:0) eq(f k l, 0))",
        (Hole("f", _t("0->1"), binder=True),),
    ),
    "Pi11-TRANS": SchemaTemplate(
        "Pi11-TRANS",
        "(forall^st f:1)((exists g:1)(forall x:0) ~eq(f (initSeg g x), 0) -> "
        "(exists^st h:1)(forall y:0) ~eq(f (initSeg h y), 0))",
        (Hole("f", _t("1"), binder=True),),
        variables=_BAIRE_SYMBOLS,
    ),
    "STP": SchemaTemplate(
        "STP",
        "(forall f:1)(le1(f, (lambda i:0. 1)) -> (exists^st g:1)(le1(g, (lambda j:0. 1)) & approx1(f, g)))",
    ),
    "GH_st": SchemaTemplate(
        "GH_st",
        "(forall^st Y:1->0)(forall^st s:0*)(cont(Y) -> "
        "eq(Gamma Y s, Y (cat s (lambda n:0. Gamma Y (append(s, succ(n)))))))",
        (Hole("Gamma", _t("(1->0)->0*->0")),),
        variables=_BAIRE_SYMBOLS,
        relations={"cont": ("1->0",)},
    ),
    "SCF": SchemaTemplate(
        "SCF",
        "(forall g:1->0)(forall T:1)(le1(T, (lambda i:0. 1)) -> "
        "((forall j:0)(lt(j, len(Theta2 g)) -> ~inTree(initSeg (get(Theta2 g, j)) (g (get(Theta2 g, j))), T)) -> "
        "(forall b:1)(le1(b, (lambda m:0. 1)) -> (exists i:0)(le(i, Theta1 g) & ~inTree(initSeg b i, T)))))",
        (Hole("Theta1", _t("(1->0)->0")), Hole("Theta2", _t("(1->0)->1*"))),
        variables=_BAIRE_SYMBOLS,
        relations={"inTree": ("0", "1")},
    ),
    "MUC": SchemaTemplate(
        "MUC",
        "(forall Y:1->0)(forall f:1)(forall g:1)((le1(f, (lambda i:0. 1)) & le1(g, (lambda j:0. 1))) -> "
        "(eq(initSeg f (Phi Y), initSeg g (Phi Y)) -> eq(Y f, Y g)))",
        (Hole("Phi", _t("(1->0)->0")),),
        variables=_BAIRE_SYMBOLS,
    ),
    "MU": SchemaTemplate(
        "MU",
        "(forall f:1)((exists n:0) eq(f n, 0) -> eq(f (mu f), 0))",
        (Hole("mu", _t("1->0")),),
    ),
    "MPC": SchemaTemplate(
        "MPC",
        "(forall Y:1->0)(forall f:1)(forall g:1)(cont(Y) -> "
        "(eq(initSeg f (Psi Y f), initSeg g (Psi Y f)) -> eq(Y f, Y g)))",
        (Hole("Psi", _t("(1->0)->1->0")),),
        variables=_BAIRE_SYMBOLS,
        relations={"cont": ("1->0",)},
    ),
    "PCM": SchemaTemplate(
        "PCM",
        "(forall f:1)(forall g:1)(eq(initSeg f (Z f), initSeg g (Z f)) -> eq(Y f, Y g))",
        (Hole("Y", _t("1->0")), Hole("Z", _t("1->0"))),
        variables=_BAIRE_SYMBOLS,
    ),
    "GHU": SchemaTemplate(
        "GHU",
        "(forall s:0*)(eq(Gamma Y s, Y (cat s (lambda n:0. Gamma Y (append(s, succ(n)))))) & le(Gamma Y s, H Y s))",
        (Hole("Gamma", _t("(1->0)->0*->0")), Hole("Y", _t("1->0")), Hole("H", _t("(1->0)->0*->0"))),
        variables=_BAIRE_SYMBOLS,
    ),
    "NPC": SchemaTemplate(
        "NPC",
        "(forall^st f:1)(forall g:1)(approx1(f, g) -> eq(Y f, Y g))",
        (Hole("Y", _t("1->0")),),
    ),
}


def schema_names() -> List[str]:
    return sorted(SCHEMA_LIBRARY)


def instantiate_schema(name: str, holes: Sequence[TermExpr]) -> Formula:
    """Fill a library template; binder holes must be variables, term holes any term of the declared type."""
    template = SCHEMA_LIBRARY.get(name)
    if template is None:
        raise UnknownSchemaError(f"unknown schema '{name}'")
    if len(holes) != len(template.holes):
        raise SchemaArityError(f"schema '{name}' takes {len(template.holes)} holes, got {len(holes)}")

    text = template.text
    replacements: Dict[str, TermExpr] = {}
    for hole, term in zip(template.holes, holes):
        found = type_of(term)
        if found != hole.type:
            raise NsaTypeError(
                f"hole '{hole.name}' of {name} expects type {render_type(hole.type)}, got {render_type(found)}",
                subterm=hole.name,
            )
        if hole.binder:
            if not isinstance(term, Var):
                raise NsaTypeError(f"hole '{hole.name}' of {name} names a bound variable", subterm=hole.name)
            if term.name != hole.name and re.search(rf"\b{re.escape(term.name)}\b", text):
                used = set(re.findall(r"[A-Za-z_][A-Za-z0-9_]*", text))
                text = re.sub(rf"\b{re.escape(term.name)}\b", fresh_name(term.name, used), text)
            text = re.sub(rf"\b{re.escape(hole.name)}\b", term.name, text)
        else:
            replacements[hole.name] = term

    signature = template.signature()
    formula = substitute(parse(text, signature), replacements)
    type_check(formula, signature)
    return formula
