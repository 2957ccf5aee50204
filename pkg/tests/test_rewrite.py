import pytest

from conftest import corpus_formula, corpus_path
from core.formulas import ElemOfSeq, Implies, Quant, QuantKind, alpha_equivalent, at_path, is_internal
from core.parser import parse
from core.printer import print_formula
from core.schemas import SCHEMA_LIBRARY
from core.types import NAT, Seq
from exceptions.nsakit_exceptions import (
    MissingAnnotationError, RulePreconditionError, StuckError, UnsoundRuleApplicationError,
)
from rewrite.annotations import Direction, MonotoneAnnotation, load_annotations, parse_annotation_text
from rewrite.engine import normalize
from rewrite.rules import (
    drop_st, expand_definitions, herbrandize_antecedent, idealise, is_normal_form, max_collapse,
    pull_standard_quantifiers, split_normal_form,
)
from rewrite.trace import RewriteTrace, Rule, WitnessOp


def cri_formula():
    text = corpus_path("cri_ns.nsa").read_text(encoding="utf-8")
    return parse(text, SCHEMA_LIBRARY["CRI_ns"].signature())


class TestRules:
    """Single rule applications"""

    def test_expand_closeness(self):
        f = parse("(forall x:0)(forall y:0) approxR[N](x, y)")
        after, op = expand_definitions(f)
        assert op.kind == "expand"
        inner = at_path(after, (0, 0))
        assert isinstance(inner, Quant) and inner.standard and inner.var == "N"
        assert "distLt" in print_formula(after)

    def test_pull_through_internal_universal(self):
        f = parse("(forall x:0)(forall^st k:0) P(x, k)")
        after, _ = pull_standard_quantifiers(f)
        assert alpha_equivalent(after, parse("(forall^st k:0)(forall x:0) P(x, k)"))

    def test_pull_stops_at_alternation(self):
        f = parse("(forall x:0)(exists^st y:0) R(x, y)")
        after, _ = pull_standard_quantifiers(f)
        assert after == f

    def test_pull_dualises_antecedent(self):
        f = parse("((forall^st a:0) P(a)) -> (forall^st b:0) R(b, b)")
        after, _ = pull_standard_quantifiers(f)
        assert alpha_equivalent(after, parse("(forall^st b:0)(exists^st a:0)(P(a) -> R(b, b))"))

    def test_idealise(self):
        f = parse("(forall x:0)(exists^st y:0) R(x, y)")
        after, op = idealise(f, ())
        assert op == WitnessOp("idealise", (("w", "y"),))
        assert isinstance(after, Quant) and after.standard and after.type == Seq(NAT)
        bounded = at_path(after, (0, 0))
        assert isinstance(bounded, ElemOfSeq) and bounded.var == "y"

    def test_idealise_precondition(self):
        with pytest.raises(RulePreconditionError) as info:
            idealise(parse("(exists^st y:0) P(y)"), ())
        assert info.value.rule == Rule.IDEALISE

    def test_collapse_up(self):
        f, _ = idealise(parse("(forall x:0)(exists^st y:0) le(x, y)"), ())
        after, op = max_collapse(f, (), MonotoneAnnotation("y", Direction.UPWARD))
        assert op.kind == "collapse-max"
        assert alpha_equivalent(after, parse("(exists^st y:0)(forall x:0) le(x, y)"))

    def test_collapse_down(self):
        f, _ = idealise(parse("(forall x:0)(exists^st y:0) le(y, x)"), ())
        _, op = max_collapse(f, (), MonotoneAnnotation("y", Direction.DOWNWARD))
        assert op.kind == "collapse-min"

    def test_collapse_needs_annotation(self):
        f, _ = idealise(parse("(forall x:0)(exists^st y:0) le(x, y)"), ())
        with pytest.raises(MissingAnnotationError):
            max_collapse(f, (), None)

    def test_herbrandize(self):
        f = parse("((forall^st a:0)(exists^st b:0) R(a, b)) -> P(zero)")
        after, op = herbrandize_antecedent(f, ())
        assert op.kind == "abstract"
        assert op.bindings[0][1] == "b"
        assert isinstance(after, Quant) and after.standard and after.var == op.bindings[0][0]
        assert isinstance(after.body, Implies)

    def test_herbrandize_needs_existential(self):
        with pytest.raises(RulePreconditionError):
            herbrandize_antecedent(parse("((forall^st a:0) P(a)) -> P(zero)"), ())

    def test_drop_st_in_antecedent(self):
        f = parse("((forall^st k:0) P(k)) -> P(zero)")
        after, op = drop_st(f, (0,))
        assert op.kind == "weaken"
        assert not at_path(after, (0,)).standard

    def test_drop_st_refuses_positive_position(self):
        with pytest.raises(UnsoundRuleApplicationError):
            drop_st(parse("(forall^st k:0) P(k)"), ())


class TestAnnotations:
    """Monotonicity annotations"""

    def test_inline_text(self):
        annotations = parse_annotation_text("N:up,m:down")
        assert [(a.variable, a.direction) for a in annotations] == [
            ("N", Direction.UPWARD), ("m", Direction.DOWNWARD),
        ]

    def test_corpus_file(self):
        annotations = load_annotations(corpus_path("nonstandard_integrability.annotations.json"))
        assert {a.variable for a in annotations} == {"M1", "M2"}


class TestNormalize:
    """End-to-end normal forms and their traces"""

    def test_uniform_continuity(self, uniform_continuity, uniform_continuity_annotations):
        final, trace = normalize(uniform_continuity, uniform_continuity_annotations)
        assert trace.rules == [Rule.EXPAND, Rule.PULL, Rule.IDEALISE, Rule.COLLAPSE]
        expected = parse(
            "(forall^st k:0)(exists^st N:0)(forall x:0)(forall y:0)(distLt(x, y, N) -> distLt(f x, f y, k))"
        )
        assert alpha_equivalent(final, expected)
        assert trace.composes()

    def test_integrability(self, integrability, integrability_annotations):
        final, trace = normalize(integrability, integrability_annotations)
        universals, existentials, matrix = split_normal_form(final)
        assert [q.var for q in universals] == ["n"]
        assert {q.var for q in existentials} == {"M1", "M2"}
        assert all(q.type == NAT for q in existentials)
        assert is_internal(matrix)
        assert trace.rules.count(Rule.COLLAPSE) == 2

    def test_without_annotations_sequences_remain(self, integrability):
        final, trace = normalize(integrability, [])
        _, existentials, _ = split_normal_form(final)
        assert all(q.type == Seq(NAT) for q in existentials)
        assert Rule.COLLAPSE not in trace.rules

    def test_cri_with_precision_annotation(self):
        final, trace = normalize(cri_formula(), load_annotations(corpus_path("cri_ns.annotations.json")))
        universals, existentials, _ = split_normal_form(final)
        assert {q.var for q in universals} >= {"n"}
        assert len(universals) == 2
        assert {q.var for q in existentials} == {"M1", "M2"}
        assert Rule.HERBRANDIZE in trace.rules
        assert Rule.DROP_ST in trace.rules

    def test_cri_without_precision_annotation(self):
        final, trace = normalize(cri_formula(), load_annotations(corpus_path("cri_herbrand.annotations.json")))
        _, existentials, _ = split_normal_form(final)
        assert Rule.DROP_ST not in trace.rules
        assert any(q.type == Seq(NAT) for q in existentials)

    def test_internal_is_unchanged(self):
        f = corpus_formula("internal")
        final, trace = normalize(f)
        assert final == f
        assert trace.steps == []

    def test_stuck(self):
        with pytest.raises(StuckError) as info:
            normalize(corpus_formula("stuck"))
        assert info.value.position == (0,)
        assert not is_normal_form(info.value.formula)

    def test_normal_form_input(self):
        f = parse("(forall^st k:0)(exists^st N:0) le(k, N)")
        final, trace = normalize(f)
        assert final == f
        assert trace.rules == []

    @pytest.mark.parametrize("source, annotation_file", [
        ("uniform_continuity", "uniform_continuity.annotations.json"),
        ("nonstandard_integrability", "nonstandard_integrability.annotations.json"),
        ("nonstandard_integrability", None),
        ("cri_ns", "cri_ns.annotations.json"),
        ("cri_ns", "cri_herbrand.annotations.json"),
        ("internal", None),
    ])
    def test_idempotent_on_own_output(self, source, annotation_file):
        f = cri_formula() if source == "cri_ns" else corpus_formula(source)
        annotations = load_annotations(corpus_path(annotation_file)) if annotation_file else []
        final, _ = normalize(f, annotations)
        again, trace = normalize(final, annotations)
        assert again == final
        assert trace.steps == []


class TestTrace:
    """Trace serialization"""

    def test_json_reparses(self, uniform_continuity, uniform_continuity_annotations):
        _, trace = normalize(uniform_continuity, uniform_continuity_annotations)
        restored = RewriteTrace.from_json(trace.to_json())
        assert restored.rules == trace.rules
        assert [step.witness_op for step in restored.steps] == [step.witness_op for step in trace.steps]
        assert alpha_equivalent(restored.final, trace.final)

    def test_witness_op_text(self):
        op = WitnessOp("idealise", (("w", "y"), ("w_1", "z")))
        assert str(op) == "idealise(w:y, w_1:z)"
        assert WitnessOp.parse(str(op)) == op

    def test_malformed_witness_op(self):
        with pytest.raises(ValueError):
            WitnessOp.parse("idealise")
