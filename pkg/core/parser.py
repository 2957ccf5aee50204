"""Recursive-descent parser for formulas, terms and types.

    formula     ::= disjunction [ "->" formula ]
    disjunction ::= conjunction { "|" conjunction }
    conjunction ::= unary { "&" unary }
    unary       ::= "~" unary | header unary | "inOmega(" ident ")" unary | primary
    header      ::= "(" ("forall"|"exists") ["^st"] ident ":" type ")"
                  | "(" "exists" ident "in" term ")"
    primary     ::= "(" formula ")" | "st(" term ")"
                  | ("approxR"|"approx1") ["[" ident "]"] "(" term "," term ")"
                  | ident "(" [ term { "," term } ] ")"
    type        ::= postfix [ "->" type ]      postfix ::= ("0"|"1"|"(" type ")") { "*" }
"""
from typing import Dict, List, Optional

from config.nsakit_config import Symbols
from core.formulas import (
    And, ApproxBaire, ApproxReal, ElemOfSeq, Formula, Implies, InfiniteNat, Not, Or,
    Quant, QuantKind, Rel, St, alpha_normalize, children, with_children,
)
from core.lexer import Token, tokenize
from core.terms import (
    App, Lam, MaxOf, MinOf, NumLit, Rec, SeqAppend, SeqGet, SeqLen, SeqLit, Succ,
    TermExpr, Var, Zero,
)
from core.typecheck import (
    Signature, Unifier, fresh_meta, infer_formula, infer_term, resolve_formula,
    resolve_term, type_check,
)
from core.types import NAT, ONE, Arrow, FinType, Seq
from exceptions.nsakit_exceptions import NsaSyntaxError

KEYWORDS = set(Symbols.KEYWORDS)
_TERM_FUNCTIONS = {"succ": 1, "rec": 2, "len": 1, "get": 2, "append": 2, "max": 1, "min": 1}


class Parser:
    """Builds an AST whose unknown types are metavariables, solved after parsing"""

    def __init__(self, text: str, signature: Optional[Signature] = None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.signature = signature or Signature()
        self.scopes: List[Dict[str, object]] = [{}]
        self.free: Dict[str, object] = dict(self.signature.variables)

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def error(self, message: str, token: Optional[Token] = None):
        token = token or self.current
        found = token.value or "end of input"
        raise NsaSyntaxError(f"{message}, found {found!r}", token.line, token.column)

    def accept(self, value: str) -> bool:
        if self.current.value == value and self.current.kind != "EOF":
            self.pos += 1
            return True
        return False

    def expect(self, value: str) -> Token:
        token = self.current
        if token.value != value or token.kind == "EOF":
            self.error(f"expected {value!r}")
        self.pos += 1
        return token

    def expect_ident(self) -> str:
        token = self.current
        if token.kind != "IDENT" or token.value in KEYWORDS:
            self.error("expected identifier")
        self.pos += 1
        return token.value

    def expect_end(self) -> None:
        if self.current.kind != "EOF":
            self.error("unexpected trailing input")

    def lookup(self, name: str):
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        if name not in self.free:
            self.free[name] = fresh_meta()
        return self.free[name]

    # types

    def parse_type(self) -> FinType:
        left = self._postfix_type()
        if self.accept("->"):
            return Arrow(left, self.parse_type())
        return left

    def _postfix_type(self) -> FinType:
        token = self.current
        if self.accept("("):
            result = self.parse_type()
            self.expect(")")
        elif token.kind == "NUMBER" and token.value in ("0", "1"):
            self.pos += 1
            result = NAT if token.value == "0" else ONE
        else:
            self.error("expected a type")
        while self.accept("*"):
            result = Seq(result)
        return result

    # formulas

    def parse_formula(self) -> Formula:
        left = self._disjunction()
        if self.accept("->"):
            return Implies(left, self.parse_formula())
        return left

    def _disjunction(self) -> Formula:
        result = self._conjunction()
        while self.accept("|"):
            result = Or(result, self._conjunction())
        return result

    def _conjunction(self) -> Formula:
        result = self._unary()
        while self.accept("&"):
            result = And(result, self._unary())
        return result

    def _unary(self) -> Formula:
        if self.accept("~"):
            return Not(self._unary())
        if self.current.value == "(" and self.peek().value in ("forall", "exists"):
            return self._quantified()
        if self.current.value == "inOmega" and self.peek().value == "(":
            self.pos += 2
            var = self.expect_ident()
            self.expect(")")
            self.scopes.append({var: NAT})
            body = self._unary()
            self.scopes.pop()
            return InfiniteNat(var, body)
        return self._primary()

    def _quantified(self) -> Formula:
        self.expect("(")
        kind = QuantKind(self.current.value)
        self.pos += 1
        standard = False
        if self.current.kind == "STMARK":
            standard = True
            self.pos += 1
        var = self.expect_ident()
        if self.current.value == "in":
            if kind is not QuantKind.EXISTS or standard:
                self.error("bounded quantifiers are internal existentials")
            self.pos += 1
            seq = self.parse_term()
            self.expect(")")
            self.scopes.append({var: fresh_meta()})
            body = self._unary()
            self.scopes.pop()
            return ElemOfSeq(var, seq, body)
        self.expect(":")
        var_type = self.parse_type()
        self.expect(")")
        self.scopes.append({var: var_type})
        body = self._unary()
        self.scopes.pop()
        return Quant(kind, standard, var, var_type, body)

    def _primary(self) -> Formula:
        token = self.current
        if self.accept("("):
            inner = self.parse_formula()
            self.expect(")")
            return inner
        if token.kind != "IDENT":
            self.error("expected a formula")
        if token.value == "st" and self.peek().value == "(":
            self.pos += 2
            term = self.parse_term()
            self.expect(")")
            return St(term)
        if token.value in ("approxR", "approx1"):
            self.pos += 1
            index = None
            if self.accept("["):
                index = self.expect_ident()
                self.expect("]")
            self.expect("(")
            left = self.parse_term()
            self.expect(",")
            right = self.parse_term()
            self.expect(")")
            node = ApproxReal if token.value == "approxR" else ApproxBaire
            return node(left, right, index)
        if token.value in KEYWORDS:
            self.error("expected a formula")
        self.pos += 1
        self.expect("(")
        args: List[TermExpr] = []
        if not self.accept(")"):
            args.append(self.parse_term())
            while self.accept(","):
                args.append(self.parse_term())
            self.expect(")")
        return Rel(token.value, tuple(args))

    # terms

    def _starts_atom(self) -> bool:
        token = self.current
        if token.kind in ("NUMBER",):
            return True
        if token.kind == "IDENT":
            return token.value not in KEYWORDS or token.value in _TERM_FUNCTIONS or token.value == "zero"
        return token.value in ("(", "<")

    def parse_term(self) -> TermExpr:
        result = self._atom_term()
        while self._starts_atom():
            result = App(result, self._atom_term())
        return result

    def _atom_term(self) -> TermExpr:
        token = self.current
        if token.kind == "NUMBER":
            self.pos += 1
            return NumLit(int(token.value))
        if self.accept("("):
            if self.accept("lambda"):
                name = self.expect_ident()
                self.expect(":")
                var_type = self.parse_type()
                self.expect(".")
                self.scopes.append({name: var_type})
                body = self.parse_term()
                self.scopes.pop()
                self.expect(")")
                return Lam(Var(name, var_type), body)
            inner = self.parse_term()
            self.expect(")")
            return inner
        if self.accept("<"):
            elements: List[TermExpr] = []
            if not self.accept(">"):
                elements.append(self.parse_term())
                while self.accept(","):
                    elements.append(self.parse_term())
                self.expect(">")
            element_type = self.parse_type() if self.accept(":") else fresh_meta()
            return SeqLit(tuple(elements), element_type)
        if token.kind != "IDENT":
            self.error("expected a term")
        if token.value == "zero":
            self.pos += 1
            return Zero()
        if token.value in _TERM_FUNCTIONS:
            self.pos += 1
            self.expect("(")
            args = [self.parse_term()]
            for _ in range(_TERM_FUNCTIONS[token.value] - 1):
                self.expect(",")
                args.append(self.parse_term())
            self.expect(")")
            return _build_term_function(token.value, args)
        name = self.expect_ident()
        return Var(name, self.lookup(name))


def _build_term_function(name: str, args: List[TermExpr]) -> TermExpr:
    match name:
        case "succ":
            return Succ(args[0])
        case "rec":
            return Rec(args[0], args[1])
        case "len":
            return SeqLen(args[0])
        case "get":
            return SeqGet(args[0], args[1])
        case "append":
            return SeqAppend(args[0], args[1])
        case "max":
            return MaxOf(args[0])
        case "min":
            return MinOf(args[0])
    raise ValueError(name)


def normalize_st_guards(f: Formula) -> Formula:
    """(∀x)(st(x) → B) becomes (∀^st x)B and (∃x)(st(x) ∧ B) becomes (∃^st x)B."""
    kids = tuple(normalize_st_guards(c) for c in children(f))
    if kids:
        f = with_children(f, kids)
    if isinstance(f, Quant) and not f.standard:
        guard_shape = Implies if f.kind is QuantKind.FORALL else And
        body = f.body
        if (
            isinstance(body, guard_shape)
            and isinstance(body.left, St)
            and isinstance(body.left.term, Var)
            and body.left.term.name == f.var
        ):
            return Quant(f.kind, True, f.var, f.type, body.right)
    return f


def parse(text: str, signature: Optional[Signature] = None) -> Formula:
    """Parse one formula; returns it alpha-normalized and type-checked."""
    parser = Parser(text, signature)
    raw = parser.parse_formula()
    parser.expect_end()
    unifier = Unifier()
    relations = dict(parser.signature.relations)
    infer_formula(raw, unifier, relations, parser.free)
    formula = resolve_formula(raw, unifier)
    formula = alpha_normalize(normalize_st_guards(formula))
    type_check(formula, parser.signature)
    return formula


def parse_term(text: str, signature: Optional[Signature] = None) -> TermExpr:
    parser = Parser(text, signature)
    raw = parser.parse_term()
    parser.expect_end()
    unifier = Unifier()
    infer_term(raw, unifier, parser.free)
    return resolve_term(raw, unifier)


def parse_type(text: str) -> FinType:
    parser = Parser(text)
    result = parser.parse_type()
    parser.expect_end()
    return result
