"""Seeded generators for models, formulas and rule instances."""
import random
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from config.nsakit_config import NsaConfig, Symbols
from core.formulas import (
    And, ApproxBaire, ApproxReal, ElemOfSeq, Formula, Implies, InfiniteNat, Not, Or,
    Quant, QuantKind, Rel, St, alpha_normalize, free_vars, walk,
)
from core.terms import App, NumLit, Succ, TermExpr, Var
from core.typecheck import type_check
from core.types import NAT, NAT_SEQ, ONE, FinType
from model.structure import TwoLevelModel
from rewrite.annotations import Direction, MonotoneAnnotation
from rewrite.rules import (
    drop_st, expand_definitions, herbrandize_antecedent, idealise, max_collapse,
    pull_standard_quantifiers,
)
from rewrite.trace import RewriteStep, Rule

RANDOM_RELATIONS: Dict[str, Tuple[FinType, ...]] = {
    "P": (NAT,),
    "R": (NAT, NAT),
    Symbols.DIST_LT: (NAT, NAT, NAT),
}
RANDOM_FUNCTIONS = ("f", "g")
RULES = (Rule.EXPAND, Rule.PULL, Rule.HERBRANDIZE, Rule.DROP_ST, Rule.IDEALISE, Rule.COLLAPSE)


@dataclass(frozen=True)
class ModelBounds:
    universe: int = NsaConfig.MODEL_UNIVERSE
    standard: int = NsaConfig.MODEL_STANDARD
    seq_bound: Optional[int] = None


def random_model(
    seed: int,
    bounds: ModelBounds = ModelBounds(),
    relations: Optional[Dict[str, Tuple[FinType, ...]]] = None,
    functions: Iterable[str] = RANDOM_FUNCTIONS,
) -> TwoLevelModel:
    """Deterministic for a fixed seed.

    A relation whose last argument has type 0 gets a threshold table: for each
    prefix it holds exactly below a random cut-off, so it reads as a precision
    relation (true for coarse precisions, false past some point).
    """
    rng = random.Random(seed)
    universe = bounds.universe
    shell = TwoLevelModel(universe, bounds.standard, bounds.seq_bound or bounds.standard)
    tables = {}
    for name, arg_types in sorted((relations if relations is not None else RANDOM_RELATIONS).items()):
        rows = set()
        if arg_types and arg_types[-1] == NAT:
            prefixes = product(*(shell.domain(t) for t in arg_types[:-1]))
            for prefix in prefixes:
                cut = rng.randint(0, universe)
                rows.update(prefix + (n,) for n in range(cut))
        else:
            for row in product(*(shell.domain(t) for t in arg_types)):
                if rng.random() < 0.5:
                    rows.add(row)
        tables[name] = frozenset(rows)
    tables_f = {name: tuple(rng.randrange(universe) for _ in range(universe)) for name in sorted(functions)}
    return TwoLevelModel(universe, bounds.standard, shell.seq_bound, tables, tables_f)


def model_shapes(max_universe: int = NsaConfig.MODEL_UNIVERSE, max_standard: int = NsaConfig.MODEL_STANDARD):
    for universe in range(1, max_universe + 1):
        for standard in range(1, min(universe, max_standard) + 1):
            yield universe, standard


def default_model_family(
    relations: Optional[Dict[str, Tuple[FinType, ...]]] = None,
    functions: Iterable[str] = RANDOM_FUNCTIONS,
    seed: int = NsaConfig.DEFAULT_SEED,
    max_universe: int = NsaConfig.MODEL_UNIVERSE,
) -> List[TwoLevelModel]:
    """MODELS_PER_SHAPE seeded models for every shape S <= U <= max_universe."""
    functions = tuple(functions)
    models = []
    for index, (universe, standard) in enumerate(model_shapes(max_universe)):
        for copy in range(NsaConfig.MODELS_PER_SHAPE):
            model_seed = seed * 1000 + index * NsaConfig.MODELS_PER_SHAPE + copy
            models.append(random_model(model_seed, ModelBounds(universe, standard), relations, functions))
    return models


def model_family_for(formulas: Sequence[Formula], seed: int = NsaConfig.DEFAULT_SEED, max_universe: int = NsaConfig.MODEL_UNIVERSE):
    """Model family interpreting every relation and free 0->0 symbol the formulas use."""
    relations: Dict[str, Tuple[FinType, ...]] = {}
    functions = set()
    for f in formulas:
        relations.update(type_check(f))
        functions.update(name for name, t in free_vars(f).items() if t == ONE)
    return default_model_family(relations, sorted(functions), seed, max_universe)


def model_family_for_steps(steps: Sequence[RewriteStep], seed: int = NsaConfig.DEFAULT_SEED, max_universe: int = NsaConfig.MODEL_UNIVERSE):
    """Family covering both sides of every step, so symbols introduced by expansion get tables."""
    return model_family_for([f for step in steps for f in (step.before, step.after)], seed, max_universe)


class FormulaGenerator:
    """Random formulas over P, R, eq, lt, le and the free functions f, g"""

    def __init__(self, rng: random.Random, internal: bool = False, sugar: bool = False):
        self.rng = rng
        self.internal = internal
        self.sugar = sugar
        self.counter = 0

    def fresh(self, stem: str = "v") -> str:
        self.counter += 1
        return f"{stem}{self.counter}"

    def term(self, scope: Sequence[str], exclude: Sequence[str] = ()) -> TermExpr:
        names = [n for n in scope if n not in exclude]
        roll = self.rng.random()
        if not names or roll < 0.2:
            return NumLit(self.rng.randrange(3))
        var = Var(self.rng.choice(names), NAT)
        if roll < 0.3:
            return Succ(var)
        if roll < 0.4:
            return App(Var(self.rng.choice(RANDOM_FUNCTIONS), ONE), var)
        return var

    def atom(self, scope: Sequence[str], exclude: Sequence[str] = ()) -> Formula:
        if self.sugar:
            roll = self.rng.random()
            if roll < 0.2:
                return ApproxReal(self.term(scope, exclude), self.term(scope, exclude))
            if roll < 0.3:
                return ApproxBaire(Var("f", ONE), Var("g", ONE))
        if not self.internal and scope and self.rng.random() < 0.1:
            return St(Var(self.rng.choice(list(scope)), NAT))
        symbol = self.rng.choice(("P", "R", Symbols.EQ, Symbols.LT, Symbols.LE))
        arity = 1 if symbol == "P" else 2
        return Rel(symbol, tuple(self.term(scope, exclude) for _ in range(arity)))

    def formula(self, size: int, scope: Sequence[str] = (), exclude: Sequence[str] = ()) -> Formula:
        if size <= 0:
            return self.atom(scope, exclude)
        roll = self.rng.random()
        if roll < 0.15:
            return Not(self.formula(size - 1, scope, exclude))
        if roll < 0.45:
            left = self.rng.randint(0, size - 1)
            node = self.rng.choice((And, Or, Implies))
            return node(self.formula(left, scope, exclude), self.formula(size - 1 - left, scope, exclude))
        if self.sugar and roll < 0.55:
            name = self.fresh("N")
            return InfiniteNat(name, self.formula(size - 1, list(scope) + [name], exclude))
        name = self.fresh()
        kind = self.rng.choice((QuantKind.FORALL, QuantKind.EXISTS))
        standard = not self.internal and self.rng.random() < 0.5
        return Quant(kind, standard, name, NAT, self.formula(size - 1, list(scope) + [name], exclude))

    def monotone(self, size: int, scope: Sequence[str], variable: str, direction: Direction) -> Formula:
        """Internal formula that stays true when `variable` grows (upward) or shrinks (downward)."""
        if size <= 0:
            if self.rng.random() < 0.6:
                bound = self.term(scope, exclude=(variable,))
                pair = (bound, Var(variable, NAT)) if direction is Direction.UPWARD else (Var(variable, NAT), bound)
                return Rel(Symbols.LE, pair)
            return self.atom(scope, exclude=(variable,))
        roll = self.rng.random()
        if roll < 0.6:
            left = self.rng.randint(0, size - 1)
            node = self.rng.choice((And, Or))
            return node(
                self.monotone(left, scope, variable, direction),
                self.monotone(size - 1 - left, scope, variable, direction),
            )
        name = self.fresh()
        kind = self.rng.choice((QuantKind.FORALL, QuantKind.EXISTS))
        return Quant(kind, False, name, NAT, self.monotone(size - 1, list(scope) + [name], variable, direction))


def random_formula(seed: int, size: int = NsaConfig.RANDOM_FORMULA_SIZE) -> Formula:
    """Closed, well-typed formula in the type-0 fragment; size 0 gives an atom."""
    formula = FormulaGenerator(random.Random(seed)).formula(size)
    formula = alpha_normalize(formula)
    type_check(formula)
    return formula


def has_standard_quantifier(f: Formula) -> bool:
    return any(isinstance(node, Quant) and node.standard for _, node in walk(f))


def random_rule_instance(seed: int, rule: Optional[str] = None) -> RewriteStep:
    """Random formula satisfying the rule's precondition, rewritten once; `rule` defaults by seed."""
    rng = random.Random(seed)
    rule = rule or RULES[seed % len(RULES)]
    size = rng.randint(0, 3)
    match rule:
        case Rule.EXPAND:
            before = alpha_normalize(FormulaGenerator(rng, sugar=True).formula(size))
            after, op = expand_definitions(before)
            return RewriteStep(rule, (), before, after, op)
        case Rule.PULL:
            before = alpha_normalize(FormulaGenerator(rng).formula(size + 1))
            after, op = pull_standard_quantifiers(before)
            return RewriteStep(rule, (), before, after, op)
        case Rule.HERBRANDIZE:
            internal = FormulaGenerator(rng, internal=True)
            universals = ["a"] if rng.random() < 0.7 else []
            matrix = internal.formula(size, universals + ["b"])
            antecedent: Formula = Quant(QuantKind.EXISTS, True, "b", NAT, matrix)
            for name in universals:
                antecedent = Quant(QuantKind.FORALL, True, name, NAT, antecedent)
            before = alpha_normalize(Implies(antecedent, FormulaGenerator(rng).formula(rng.randint(0, 2))))
            after, op = herbrandize_antecedent(before, ())
            return RewriteStep(rule, (), before, after, op)
        case Rule.DROP_ST:
            internal = FormulaGenerator(rng, internal=True)
            before = alpha_normalize(Implies(
                Quant(QuantKind.FORALL, True, "k", NAT, internal.formula(size, ["k"])),
                FormulaGenerator(rng).formula(rng.randint(0, 2)),
            ))
            after, op = drop_st(before, (0,))
            return RewriteStep(rule, (0,), before, after, op)
        case Rule.IDEALISE:
            internal = FormulaGenerator(rng, internal=True)
            x_type = NAT_SEQ if rng.random() < 0.2 else NAT
            scope = ["y"] + (["x"] if x_type == NAT else [])
            before = Quant(
                QuantKind.FORALL, False, "x", x_type,
                Quant(QuantKind.EXISTS, True, "y", NAT, internal.formula(size, scope)),
            )
            after, op = idealise(before, ())
            return RewriteStep(rule, (), before, after, op)
        case Rule.COLLAPSE:
            direction = rng.choice((Direction.UPWARD, Direction.DOWNWARD))
            matrix = FormulaGenerator(rng, internal=True).monotone(size, ["x", "y"], "y", direction)
            before = Quant(
                QuantKind.EXISTS, True, "w", NAT_SEQ,
                Quant(QuantKind.FORALL, False, "x", NAT, ElemOfSeq("y", Var("w", NAT_SEQ), matrix)),
            )
            after, op = max_collapse(before, (), MonotoneAnnotation("y", direction))
            return RewriteStep(rule, (), before, after, op)
    raise ValueError(f"unknown rule {rule}")
