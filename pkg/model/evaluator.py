from typing import Dict, Mapping, Optional

from core.formulas import (
    And, ApproxBaire, ApproxReal, ElemOfSeq, Formula, Implies, InfiniteNat, Not, Or,
    Quant, QuantKind, Rel, St,
)
from core.terms import (
    App, Lam, MaxOf, MinOf, NumLit, Rec, SeqAppend, SeqGet, SeqLen, SeqLit, Succ,
    TermExpr, Var, Zero,
)
from core.typecheck import type_of
from core.types import NAT, render_type
from config.nsakit_config import Symbols
from exceptions.nsakit_exceptions import UninterpretedSymbolError, UnsupportedFragmentError
from model.structure import TwoLevelModel, Value

Env = Mapping[str, Value]


def _builtin(symbol: str, args) -> Optional[bool]:
    match symbol, args:
        case Symbols.EQ, (a, b):
            return a == b
        case Symbols.LT, (a, b):
            return a < b
        case Symbols.LE, (a, b):
            return a <= b
        case Symbols.LE1, (f, g):
            return all(x <= y for x, y in zip(f, g))
    return None


class ModelEvaluator:
    """Classical truth of a formula in one finite model, by exhaustive enumeration"""

    def __init__(self, model: TwoLevelModel):
        self.model = model

    def term(self, term: TermExpr, env: Env) -> Value:
        m = self.model
        match term:
            case Var(name, _):
                if name in env:
                    return env[name]
                if name in m.functions:
                    return m.functions[name]
                raise UninterpretedSymbolError(f"model has no value for '{name}'")
            case App(fun, arg):
                table = self.term(fun, env)
                point = self.term(arg, env)
                if not isinstance(table, tuple) or not isinstance(point, int):
                    raise UnsupportedFragmentError("only type 0->0 application is modelled")
                return table[point]
            case Lam(var, body):
                if var.type != NAT:
                    raise UnsupportedFragmentError(f"lambda over type {render_type(var.type)}")
                return tuple(self.term(body, {**env, var.name: i}) for i in range(m.universe))
            case Zero():
                return 0
            case NumLit(n):
                return m.saturate(n)
            case Succ(arg):
                return m.saturate(self.term(arg, env) + 1)
            case SeqLit(elements, _):
                return tuple(self.term(e, env) for e in elements)
            case SeqLen(seq):
                return m.saturate(len(self.term(seq, env)))
            case SeqGet(seq, index):
                values = self.term(seq, env)
                i = self.term(index, env)
                return values[i] if i < len(values) else 0
            case SeqAppend(seq, element):
                return self.term(seq, env) + (self.term(element, env),)
            case MaxOf(seq):
                return max(self.term(seq, env), default=0)
            case MinOf(seq):
                return min(self.term(seq, env), default=0)
            case Rec():
                raise UnsupportedFragmentError("recursors are not modelled")
        raise UnsupportedFragmentError(f"cannot evaluate {term!r}")

    def holds(self, f: Formula, env: Optional[Env] = None) -> bool:
        env = env or {}
        m = self.model
        match f:
            case Rel(symbol, args):
                values = tuple(self.term(a, env) for a in args)
                result = _builtin(symbol, values)
                if result is not None:
                    return result
                if symbol not in m.relations:
                    raise UninterpretedSymbolError(f"model has no table for relation '{symbol}'")
                return values in m.relations[symbol]
            case St(term):
                return m.is_standard(self.term(term, env), type_of(term))
            case Not(body):
                return not self.holds(body, env)
            case And(left, right):
                return self.holds(left, env) and self.holds(right, env)
            case Or(left, right):
                return self.holds(left, env) or self.holds(right, env)
            case Implies(left, right):
                return not self.holds(left, env) or self.holds(right, env)
            case Quant(kind, standard, var, var_type, body):
                values = m.domain(var_type, standard)
                test = all if kind is QuantKind.FORALL else any
                return test(self.holds(body, {**env, var: v}) for v in values)
            case ElemOfSeq(var, seq, body):
                return any(self.holds(body, {**env, var: v}) for v in self.term(seq, env))
            case InfiniteNat(var, body):
                return all(self.holds(body, {**env, var: n}) for n in range(m.standard, m.universe))
            case ApproxReal(left, right, _):
                if Symbols.DIST_LT not in m.relations:
                    raise UninterpretedSymbolError(f"model has no table for relation '{Symbols.DIST_LT}'")
                x, y = self.term(left, env), self.term(right, env)
                return all((x, y, n) in m.relations[Symbols.DIST_LT] for n in range(m.standard))
            case ApproxBaire(left, right, _):
                a, b = self.term(left, env), self.term(right, env)
                return all(a[n] == b[n] for n in range(m.standard))
        raise UnsupportedFragmentError(f"cannot evaluate {f!r}")


def eval_formula(model: TwoLevelModel, f: Formula, env: Optional[Dict[str, Value]] = None) -> bool:
    """Truth of `f` in `model`; standard quantifiers range over the standard fragment only."""
    return ModelEvaluator(model).holds(f, env)
