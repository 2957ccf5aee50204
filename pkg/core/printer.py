from core.formulas import (
    And, ApproxBaire, ApproxReal, ElemOfSeq, Formula, Implies, InfiniteNat, Not, Or,
    Quant, Rel, St,
)
from core.terms import (
    App, Lam, MaxOf, MinOf, NumLit, Rec, SeqAppend, SeqGet, SeqLen, SeqLit, Succ,
    TermExpr, Var, Zero,
)
from core.types import render_type

_IMPLIES, _OR, _AND, _UNARY = 1, 2, 3, 4


def print_term(term: TermExpr) -> str:
    match term:
        case Var(name, _):
            return name
        case App(fun, arg):
            argument = print_term(arg)
            if isinstance(arg, App):
                argument = f"({argument})"
            return f"{print_term(fun)} {argument}"
        case Lam(var, body):
            return f"(lambda {var.name}:{render_type(var.type)}. {print_term(body)})"
        case Zero():
            return "zero"
        case NumLit(n):
            return str(n)
        case Succ(arg):
            return f"succ({print_term(arg)})"
        case Rec(base, step):
            return f"rec({print_term(base)}, {print_term(step)})"
        case SeqLit(elements, element_type):
            if not elements:
                return f"<>:{render_type(element_type)}"
            return "<" + ", ".join(print_term(e) for e in elements) + ">"
        case SeqLen(seq):
            return f"len({print_term(seq)})"
        case SeqGet(seq, index):
            return f"get({print_term(seq)}, {print_term(index)})"
        case SeqAppend(seq, element):
            return f"append({print_term(seq)}, {print_term(element)})"
        case MaxOf(seq):
            return f"max({print_term(seq)})"
        case MinOf(seq):
            return f"min({print_term(seq)})"
    return repr(term)


def print_formula(f: Formula) -> str:
    """Surface syntax of `f`; standard quantifiers carry the ^st marker."""
    return _format(f, _IMPLIES)


def _wrap(text: str, level: int, needed: int) -> str:
    return f"({text})" if needed > level else text


def _format(f: Formula, needed: int) -> str:
    match f:
        case Implies(left, right):
            return _wrap(f"{_format(left, _OR)} -> {_format(right, _IMPLIES)}", _IMPLIES, needed)
        case Or(left, right):
            return _wrap(f"{_format(left, _OR)} | {_format(right, _AND)}", _OR, needed)
        case And(left, right):
            return _wrap(f"{_format(left, _AND)} & {_format(right, _UNARY)}", _AND, needed)
        case Not(body):
            return "~" + _format(body, _UNARY)
        case Quant(kind, standard, var, var_type, body):
            marker = "^st" if standard else ""
            return f"({kind.value}{marker} {var}:{render_type(var_type)}) {_format(body, _UNARY)}"
        case InfiniteNat(var, body):
            return f"inOmega({var}) {_format(body, _UNARY)}"
        case ElemOfSeq(var, seq, body):
            return f"(exists {var} in {print_term(seq)}) {_format(body, _UNARY)}"
        case Rel(symbol, args):
            return f"{symbol}({', '.join(print_term(a) for a in args)})"
        case St(term):
            return f"st({print_term(term)})"
        case ApproxReal(left, right, index) | ApproxBaire(left, right, index):
            name = "approxR" if isinstance(f, ApproxReal) else "approx1"
            suffix = f"[{index}]" if index else ""
            return f"{name}{suffix}({print_term(left)}, {print_term(right)})"
    return repr(f)
