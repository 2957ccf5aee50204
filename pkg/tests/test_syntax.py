import pytest
from hypothesis import given, settings, strategies as st

from core.formulas import (
    Classification, Quant, QuantKind, alpha_equivalent, bound_names, classify, free_vars, is_internal, polarity,
)
from core.parser import parse, parse_term, parse_type
from core.printer import print_formula, print_term
from core.schemas import SCHEMA_LIBRARY, instantiate_schema, schema_names
from core.terms import Var
from core.typecheck import type_check
from core.types import NAT, ONE, Seq, arrow, render_type
from exceptions.nsakit_exceptions import (
    NsaSyntaxError, NsaTypeError, SchemaArityError, UnknownSchemaError,
)
from conftest import corpus_formula
from model.generators import random_formula
from rewrite.rules import is_normal_form


def canonical_argument(hole, renamed):
    """Binder holes take a name some templates already bind, forcing a rename; term holes a fresh one"""
    if not renamed:
        return hole.name
    return "n" if hole.binder else f"{hole.name}_arg"


class TestParser:
    """Surface syntax into formulas"""

    def test_types(self):
        assert parse_type("0") == NAT
        assert parse_type("0->0") == ONE
        assert parse_type("(0->0)->0") == arrow(ONE, NAT)
        assert parse_type("0*") == Seq(NAT)
        assert parse_type("1->0") == arrow(ONE, NAT)

    @pytest.mark.parametrize("t, text", [
        (ONE, "1"),
        (arrow(ONE, NAT), "1->0"),
        (arrow(arrow(NAT, ONE), NAT), "(0->1)->0"),
        (arrow(arrow(ONE, NAT), Seq(ONE)), "(1->0)->1*"),
        (Seq(arrow(ONE, NAT)), "(1->0)*"),
    ])
    def test_type_rendering(self, t, text):
        assert render_type(t) == text
        assert parse_type(text) == t

    def test_standard_quantifier(self):
        f = parse("(forall^st x:0) le(x, succ(x))")
        assert isinstance(f, Quant)
        assert f.standard and f.kind is QuantKind.FORALL

    def test_st_guard_becomes_standard_quantifier(self):
        guarded = parse("(forall x:0)(st(x) -> le(x, x))")
        assert alpha_equivalent(guarded, parse("(forall^st x:0) le(x, x)"))

    def test_comments_are_skipped(self):
        assert alpha_equivalent(parse("# leading note\n(forall x:0) le(x, x)"), parse("(forall x:0) le(x, x)"))

    def test_syntax_error_reports_position(self):
        with pytest.raises(NsaSyntaxError) as info:
            parse("(forall x:0)\n  le(x, ")
        assert info.value.line == 2
        assert info.value.column >= 1

    def test_unknown_character(self):
        with pytest.raises(NsaSyntaxError):
            parse("(forall x:0) le(x, x) $")

    def test_type_error_names_subterm(self):
        with pytest.raises(NsaTypeError) as info:
            parse("(forall f:0->0) P(succ(f))")
        assert "f" in info.value.subterm

    def test_relation_signature_is_inferred(self):
        relations = type_check(parse("(forall x:0)(forall h:0->0) R(x, h)"))
        assert relations["R"] == (NAT, ONE)

    def test_terms(self):
        term = parse_term("succ(succ(zero))")
        assert print_term(term) == "succ(succ(zero))"


class TestPrinter:
    """Printing is stable under reparsing"""

    @pytest.mark.parametrize("name", ["uniform_continuity", "nonstandard_integrability", "internal", "stuck"])
    def test_corpus_fixpoint(self, name):
        f = corpus_formula(name)
        printed = print_formula(f)
        assert print_formula(parse(printed)) == printed

    def test_standard_marker(self):
        assert print_formula(parse("(exists^st y:0) le(y, y)")).startswith("(exists^st ")

    @settings(max_examples=150, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=0, max_value=5))
    def test_random_formulas_round_trip(self, seed, size):
        f = random_formula(seed, size)
        assert alpha_equivalent(parse(print_formula(f)), f)


class TestClassification:
    """Internal, external and normal-form classification"""

    def test_internal(self):
        f = parse("(forall x:0) le(x, succ(x))")
        assert is_internal(f)
        assert classify(f) is Classification.INTERNAL

    def test_external(self, uniform_continuity):
        assert not is_internal(uniform_continuity)
        assert classify(uniform_continuity) is Classification.EXTERNAL
        assert not is_normal_form(uniform_continuity)

    def test_normal_form(self):
        f = parse("(forall^st k:0)(exists^st N:0)(forall x:0) le(N, k)")
        assert classify(f) is Classification.EXTERNAL
        assert is_normal_form(f)

    def test_polarity_of_antecedent(self):
        f = parse("((forall^st k:0) P(k)) -> (forall y:0) P(y)")
        assert polarity(f, (0,)) < 0
        assert polarity(f, (1,)) > 0


class TestSchemas:
    """Axiom and definition templates"""

    def test_library_names(self):
        names = schema_names()
        for expected in ("CRI_ns", "MCT_ns", "GH_st", "SCF", "MU", "Pi01-TRANS", "NSIntegrable"):
            assert expected in names
        assert names == sorted(names)

    @pytest.mark.parametrize("name", sorted(SCHEMA_LIBRARY))
    @pytest.mark.parametrize("renamed", [False, True])
    def test_every_template_instantiates(self, name, renamed):
        holes = SCHEMA_LIBRARY[name].holes
        arguments = [Var(canonical_argument(hole, renamed), hole.type) for hole in holes]
        f = instantiate_schema(name, arguments)
        type_check(f, SCHEMA_LIBRARY[name].signature())
        free = free_vars(f)
        for hole, argument in zip(holes, arguments):
            if hole.binder:
                assert argument.name in bound_names(f)
                assert hole.name == argument.name or hole.name not in bound_names(f)
            else:
                assert free[argument.name] == hole.type

    def test_unknown_schema(self):
        with pytest.raises(UnknownSchemaError):
            instantiate_schema("NoSuchSchema", [])

    def test_hole_arity(self):
        with pytest.raises(SchemaArityError):
            instantiate_schema("MU", [])

    def test_hole_type_is_checked(self):
        with pytest.raises(NsaTypeError):
            instantiate_schema("MU", [Var("m", NAT)])

    def test_hole_is_filled(self):
        f = instantiate_schema("MU", [Var("search", arrow(ONE, NAT))])
        assert "search" in print_formula(f)
