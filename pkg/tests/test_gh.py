import pytest

from data.factories import NsaDataFactory
from exceptions.nsakit_exceptions import (
    DepthExceededError, FunctionalSyntaxError, GammaUndefinedError, InvalidTreeError, PreconditionError,
)
from gh.fan import BinaryTree, SpecialFanOutput, fan_modulus, special_fan, verify_scf
from gh.functionals import TypeTwoFunctional, constant, from_json, parse_node, replay_consistent
from gh.gandy_hyland import (
    check_gh_equation, gamma_from_gh_value, gh_approx, gh_approx_reference, gh_threshold, gh_value, is_stable,
)
from gh.library import FAN_FUNCTIONALS, GH_FUNCTIONALS
from gh.oracles import Computed, FinitePrefix, InstrumentedOracle, binary_strings, initial_segment, zeros


class TestOracles:
    """Baire-space points and query recording"""

    def test_finite_prefix(self):
        alpha = FinitePrefix((3, 1), tail=7)
        assert alpha.prefix(4) == (3, 1, 7, 7)
        assert str(alpha) == "31·7^ω"
        assert zeros().query(100) == 0

    def test_instrumented(self):
        recorder = InstrumentedOracle(Computed(lambda n: n * n))
        assert recorder.max_query == -1
        recorder.query(3)
        recorder.query(1)
        assert recorder.queried == {1, 3}
        assert recorder.max_query == 3

    def test_binary_strings(self):
        assert list(binary_strings(2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert initial_segment(Computed(lambda n: n), 3) == (0, 1, 2)


class TestFunctionals:
    """Functional expressions and instrumented evaluation"""

    def test_library_entries(self):
        assert GH_FUNCTIONALS["head-sum"](FinitePrefix((3, 4))) == 7
        assert GH_FUNCTIONALS["bounded-lookup"](FinitePrefix((5, 1, 2, 9))) == 9
        assert GH_FUNCTIONALS["first-one3"](FinitePrefix((0, 0, 4))) == 2
        assert GH_FUNCTIONALS["first-one3"](zeros()) == 3

    def test_instrumented_evaluation(self):
        assert GH_FUNCTIONALS["head-sum"].evaluate_instrumented(FinitePrefix((3, 4))) == (7, 1)
        assert constant(5).evaluate_instrumented(zeros()) == (5, -1)

    def test_replay(self):
        for y in GH_FUNCTIONALS.values():
            assert replay_consistent(y, Computed(lambda n: (3 * n + 1) % 4))

    def test_bad_nodes(self):
        with pytest.raises(FunctionalSyntaxError):
            parse_node({"op": "nope"})
        with pytest.raises(FunctionalSyntaxError):
            parse_node({"op": "const"})
        with pytest.raises(FunctionalSyntaxError):
            from_json({"name": "bad", "body": {"op": "lookup", "index": {"op": "proj", "index": 0}}})


class TestGandyHyland:
    """Approximations, certified values and the fixed-point equation"""

    def test_constant(self):
        certificate = gh_value(GH_FUNCTIONALS["const3"], ())
        assert (certificate.value, certificate.certified_at) == (3, 0)

    def test_head_sum(self):
        y = GH_FUNCTIONALS["head-sum"]
        assert gh_approx(y, (), 0) == 0
        assert gh_approx(y, (), 1) == 1
        certificate = gh_value(y, ())
        assert certificate.value == 1
        assert certificate.certified_at == 2
        assert certificate.observed_modulus == 2
        assert certificate.to_dict()["certifiedAt"] == 2

    def test_long_prefix_is_read_directly(self):
        assert gh_threshold(GH_FUNCTIONALS["head-sum"], (2, 5)) == 0
        assert gh_value(GH_FUNCTIONALS["head-sum"], (2, 5)).value == 7

    def test_bounded_lookup(self):
        certificate = gh_value(GH_FUNCTIONALS["bounded-lookup"], ())
        assert (certificate.value, certificate.certified_at) == (0, 3)

    def test_first_one(self):
        certificate = gh_value(GH_FUNCTIONALS["first-one3"], ())
        assert (certificate.value, certificate.certified_at) == (3, 1)

    def test_deep_reader(self):
        y = GH_FUNCTIONALS["reach4"]
        assert gh_threshold(y, ()) == 5
        with pytest.raises(DepthExceededError) as info:
            gh_value(y, (), max_depth=2)
        assert info.value.depth == 2
        assert "reach4" in info.value.cell

    def test_stability(self):
        y = GH_FUNCTIONALS["head-sum"]
        assert is_stable(y, (), 2, width=4)
        assert not is_stable(y, (), 0, width=4)

    def test_discontinuous_input_is_refused(self):
        y = TypeTwoFunctional("unbounded", lambda f: f.query(f.query(0)), declared_continuous=False)
        with pytest.raises(PreconditionError):
            gh_value(y, ())

    @pytest.mark.parametrize("name", sorted(GH_FUNCTIONALS))
    @pytest.mark.parametrize("s", [(), (0,), (1, 2), (2, 0, 1)])
    def test_reference_agrees(self, name, s):
        y = GH_FUNCTIONALS[name]
        for depth in range(4):
            assert gh_approx(y, s, depth) == gh_approx_reference(y, s, depth)

    @pytest.mark.parametrize("name", ["const3", "head-sum", "bounded-lookup", "first-one3", "spread"])
    @pytest.mark.parametrize("s", [(), (1,), (0, 2), (2, 2, 1)])
    def test_equation_holds(self, name, s):
        y = GH_FUNCTIONALS[name]
        assert check_gh_equation(y, s, gamma_from_gh_value(y))

    def test_perturbed_gamma_fails(self):
        y = GH_FUNCTIONALS["first-one3"]
        gamma = gamma_from_gh_value(y)
        assert not check_gh_equation(y, (), lambda t: gamma(t) + 1 if t == () else gamma(t))

    def test_undefined_gamma(self):
        with pytest.raises(GammaUndefinedError) as info:
            check_gh_equation(GH_FUNCTIONALS["head-sum"], (), {}.__getitem__)
        assert info.value.sequence == ()


class TestFan:
    """Uniform moduli on Cantor space and the special fan functional"""

    @pytest.mark.parametrize("name, expected", [
        ("const0", (0, 0)),
        ("const2", (0, 2)),
        ("head-sum", (2, 2)),
        ("third-bit", (3, 1)),
        ("first-one3", (3, 3)),
        ("first-one5", (5, 5)),
    ])
    def test_fan_modulus(self, name, expected):
        assert fan_modulus(FAN_FUNCTIONALS[name]) == expected

    def test_depth_cap(self):
        with pytest.raises(DepthExceededError) as info:
            fan_modulus(FAN_FUNCTIONALS["head-sum"], depth_cap=1)
        assert info.value.cell == "head-sum"

    def test_special_fan(self):
        out = special_fan(FAN_FUNCTIONALS["head-sum"])
        assert out.bound == 2
        assert len(out.witnesses) == 4
        assert out.to_dict() == {"bound": 2, "witnessCount": 4, "modulus": 2, "valueBound": 2}

    def test_trees(self):
        tree = BinaryTree.of(["", "0", "01"])
        assert (0, 1) in tree and "01" in tree
        assert "1" not in tree
        assert tree.depth == 2
        assert BinaryTree(frozenset()).depth == -1
        assert len(BinaryTree.full(2).nodes) == 7

    def test_invalid_trees(self):
        with pytest.raises(InvalidTreeError):
            BinaryTree.of(["", "01"])
        with pytest.raises(InvalidTreeError):
            BinaryTree.of(["", "2"])

    def test_scf_on_small_tree(self):
        g = FAN_FUNCTIONALS["const2"]
        assert verify_scf(special_fan(g), g, BinaryTree.full(1))
        assert verify_scf(special_fan(g), g, BinaryTree(frozenset()))

    def test_short_bound_is_caught(self):
        g = FAN_FUNCTIONALS["const2"]
        too_short = SpecialFanOutput(1, tuple(FinitePrefix(bits) for bits in binary_strings(1)), 0, 2)
        assert not verify_scf(too_short, g, BinaryTree.full(1))

    @pytest.mark.parametrize("name", ["const0", "const2", "head-sum", "third-bit", "first-one3"])
    def test_scf_on_random_trees(self, name):
        g = FAN_FUNCTIONALS[name]
        out = special_fan(g)
        for tree in NsaDataFactory.random_trees(seed=5, count=30, depth=4):
            assert verify_scf(out, g, tree)
