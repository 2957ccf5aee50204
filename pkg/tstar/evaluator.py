"""Call-by-value evaluator for closed terms of the primitive-recursive calculus."""
from typing import Any, Mapping, Optional

from core.printer import print_term
from core.terms import (
    App, Lam, MaxOf, MinOf, NumLit, Rec, SeqAppend, SeqGet, SeqLen, SeqLit, Succ,
    TermExpr, Var, Zero, free_vars,
)
from exceptions.nsakit_exceptions import FuelExhaustedError, TermEvaluationError
from tstar.values import Closure, NativeFunction, RecursorValue, TStarValue, show_value


class Evaluator:
    """Evaluates terms; with `fuel` set every reduction step costs one unit"""

    def __init__(self, fuel: Optional[int] = None):
        self.fuel = fuel
        self.steps = 0

    def _tick(self):
        self.steps += 1
        if self.fuel is not None and self.steps > self.fuel:
            raise FuelExhaustedError(f"fuel of {self.fuel} steps exhausted")

    def eval(self, term: TermExpr, env: Mapping[str, Any]) -> TStarValue:
        self._tick()
        match term:
            case Var(name, _):
                if name not in env:
                    raise TermEvaluationError(f"unbound variable '{name}'")
                return env[name]
            case App(fun, arg):
                return self.apply(self.eval(fun, env), self.eval(arg, env))
            case Lam(var, body):
                return Closure(var.name, body, env)
            case Zero():
                return 0
            case NumLit(n):
                return n
            case Succ(arg):
                return self._nat(self.eval(arg, env), term) + 1
            case Rec(base, step):
                return RecursorValue(self.eval(base, env), self.eval(step, env))
            case SeqLit(elements, _):
                return tuple(self.eval(e, env) for e in elements)
            case SeqLen(seq):
                return len(self._seq(self.eval(seq, env), term))
            case SeqGet(seq, index):
                values = self._seq(self.eval(seq, env), term)
                i = self._nat(self.eval(index, env), term)
                return values[i] if i < len(values) else 0
            case SeqAppend(seq, element):
                return self._seq(self.eval(seq, env), term) + (self.eval(element, env),)
            case MaxOf(seq):
                return max(self._seq(self.eval(seq, env), term), default=0)
            case MinOf(seq):
                return min(self._seq(self.eval(seq, env), term), default=0)
        raise TermEvaluationError(f"not a term: {term!r}")

    def apply(self, fun: TStarValue, arg: TStarValue) -> TStarValue:
        """Beta-application under the closure's environment."""
        self._tick()
        match fun:
            case Closure(var, body, env):
                return self.eval(body, {**env, var: arg})
            case NativeFunction(fn=fn):
                return fn(arg)
            case RecursorValue(base, step):
                if not isinstance(arg, int):
                    raise TermEvaluationError(f"recursor applied to {show_value(arg)}")
                acc = base
                for i in range(arg):
                    acc = self.apply(self.apply(step, i), acc)
                return acc
        raise TermEvaluationError(f"cannot apply {show_value(fun)} to {show_value(arg)}")

    @staticmethod
    def _nat(value: TStarValue, term: TermExpr) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise TermEvaluationError(f"expected a numeral in {print_term(term)}, got {show_value(value)}")
        return value

    @staticmethod
    def _seq(value: TStarValue, term: TermExpr) -> tuple:
        if not isinstance(value, tuple):
            raise TermEvaluationError(f"expected a sequence in {print_term(term)}, got {show_value(value)}")
        return value


def eval_closed(term: TermExpr, fuel: Optional[int] = None) -> TStarValue:
    """Value of a closed term."""
    unbound = free_vars(term)
    if unbound:
        raise TermEvaluationError(f"term is not closed: {', '.join(sorted(unbound))}")
    return Evaluator(fuel).eval(term, {})


def eval_with(term: TermExpr, env: Mapping[str, TStarValue], fuel: Optional[int] = None) -> TStarValue:
    return Evaluator(fuel).eval(term, env)


def apply(fun: TStarValue, *args: TStarValue) -> TStarValue:
    evaluator = Evaluator()
    for arg in args:
        fun = evaluator.apply(fun, arg)
    return fun
