import json
import random
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from config.nsakit_config import NsaConfig, Symbols
from core.formulas import Classification, Not, Quant, QuantKind, classify
from core.parser import parse
from core.types import NAT
from exceptions.nsakit_exceptions import RulePreconditionError, UninterpretedSymbolError
from model.evaluator import eval_formula
from model.generators import (
    RULES, FormulaGenerator, has_standard_quantifier, model_family_for, model_family_for_steps, model_shapes,
    random_formula, random_model, random_rule_instance,
)
from model.oracle import check_step, check_trace, explain_failure
from model.structure import TwoLevelModel
from rewrite.engine import normalize
from rewrite.trace import RewriteStep, Rule, WitnessOp


def single_p_model(holds_at):
    return TwoLevelModel(2, 1, 1, {"P": frozenset((v,) for v in holds_at)})


class TestEvaluator:
    """Truth in finite two-level models"""

    def test_standard_quantifier_ranges_over_standard_part(self):
        model = single_p_model([0])
        assert eval_formula(model, parse("(forall^st x:0) P(x)"))
        assert not eval_formula(model, parse("(forall x:0) P(x)"))

    def test_st_predicate(self):
        model = TwoLevelModel(3, 2, 2)
        assert eval_formula(model, parse("(exists x:0) ~st(x)"))
        assert not eval_formula(model, parse("(forall x:0) st(x)"))

    def test_infinite_natural_is_nonstandard(self):
        model = TwoLevelModel(3, 1, 1)
        assert eval_formula(model, parse("(forall y:0) inOmega(N) le(1, N)"))

    def test_function_tables(self):
        model = TwoLevelModel(3, 1, 1, functions={"f": (1, 2, 2)})
        assert eval_formula(model, parse("(forall x:0) le(x, f x)"))

    def test_missing_relation(self):
        with pytest.raises(UninterpretedSymbolError):
            eval_formula(TwoLevelModel(2, 1, 1), parse("(forall x:0) Q(x)"))

    def test_bad_shape(self):
        with pytest.raises(ValueError):
            TwoLevelModel(2, 3, 3)


class TestModelFiles:
    """JSON model files"""

    def test_load(self, tmp_path):
        model = random_model(7)
        path = tmp_path / "m.json"
        path.write_text(json.dumps(model.to_dict()), encoding="utf-8")
        assert TwoLevelModel.load(path) == model

    def test_shapes(self):
        shapes = list(model_shapes(3, 2))
        assert (1, 1) in shapes and (3, 2) in shapes
        assert all(s <= u for u, s in shapes)


class TestGenerators:
    """Seeded formulas and models"""

    def test_deterministic(self):
        assert random_formula(0) == random_formula(0)
        assert random_model(0) == random_model(0)

    def test_enough_external_formulas(self):
        external = [f for f in map(random_formula, range(1000)) if has_standard_quantifier(f)]
        assert len(external) >= 200
        assert all(classify(f) is Classification.EXTERNAL for f in external)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000), st.sampled_from(list(QuantKind)), st.booleans())
    def test_quantifier_duality(self, seed, kind, standard):
        rng = random.Random(seed)
        body = FormulaGenerator(rng).formula(rng.randint(0, 3), ["x"])
        quantified = Quant(kind, standard, "x", NAT, body)
        dual = Quant(kind.dual(), standard, "x", NAT, Not(body))
        for model in model_family_for([quantified], seed, max_universe=3):
            assert eval_formula(model, Not(quantified)) == eval_formula(model, dual)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_internal_truth_ignores_standard_part(self, seed):
        rng = random.Random(seed)
        f = FormulaGenerator(rng, internal=True).formula(rng.randint(0, 4))
        for model in model_family_for([f], seed, max_universe=4):
            truths = {
                eval_formula(replace(model, standard=s, seq_bound=max(model.seq_bound, s)), f)
                for s in range(1, model.universe + 1)
            }
            assert len(truths) == 1


class TestSoundnessOracle:
    """Recorded steps checked in model families"""

    def test_family_interprets_expanded_symbols(self, small_models):
        assert all(Symbols.DIST_LT in model.relations for model in small_models)

    def test_uniform_continuity_trace(self, uniform_continuity_trace, small_models):
        results = check_trace(small_models, uniform_continuity_trace)
        assert list(results) == ["0:R1", "1:R2", "2:R5", "3:R6"]
        assert all(outcome.ok for outcome in results.values())

    def test_integrability_trace(self, integrability, integrability_annotations):
        _, trace = normalize(integrability, integrability_annotations)
        models = model_family_for_steps(trace.steps, seed=0, max_universe=4)
        assert all(outcome.ok for outcome in check_trace(models, trace).values())

    def test_unsound_weakening_is_caught(self):
        step = RewriteStep(
            Rule.DROP_ST, (), parse("(forall^st k:0) P(k)"), parse("(forall k:0) P(k)"), WitnessOp("weaken", (("k", ""),))
        )
        outcome = check_step(single_p_model([0]), step)
        assert not outcome.ok
        assert outcome.direction == "forward"
        assert "R4" in explain_failure(step, outcome)

    def test_equivalence_rules_checked_backwards(self):
        step = RewriteStep(Rule.PULL, (), parse("P(zero)"), parse("(exists x:0) P(x)"), WitnessOp("prenex"))
        outcome = check_step(single_p_model([1]), step)
        assert not outcome.ok
        assert outcome.direction == "backward"

    def test_one_way_rules_not_checked_backwards(self):
        step = RewriteStep(Rule.DROP_ST, (), parse("P(zero)"), parse("(exists x:0) P(x)"), WitnessOp("weaken"))
        assert check_step(single_p_model([1]), step).ok

    def test_idealisation_precondition(self):
        before = parse("(exists^st y:0) P(y)")
        step = RewriteStep(Rule.IDEALISE, (), before, before, WitnessOp("idealise"))
        with pytest.raises(RulePreconditionError):
            check_step(single_p_model([0]), step)

    @pytest.mark.parametrize("rule", RULES)
    def test_random_rule_instances(self, rule):
        first = RULES.index(rule)
        for seed in range(first, NsaConfig.RANDOM_RULE_INSTANCES, len(RULES)):
            step = random_rule_instance(seed)
            assert step.rule == rule
            for model in model_family_for_steps([step], seed, max_universe=3):
                outcome = check_step(model, step)
                assert outcome.ok, explain_failure(step, outcome)
