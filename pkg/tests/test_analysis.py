import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from analysis.convergence import (
    ZeroIndicator, is_monotone_bounded, mct_functional, mct_modulus, mu_from_mct, window_holds, window_pairs,
)
from analysis.integration import check_cri, integration_modulus, measure_cri, refinement_gap
from analysis.library import FUNCTIONS, REAL_SEQUENCES, constant_function, exact_sequence, identity_function
from analysis.partitions import Partition, common_refinement, mesh, riemann_sum
from analysis.reals import RealCode, RealFunction, compare_lt, dyadic, less_than, satisfies_modulus
from analysis.search import SearchOperator, bounded_search, mu_search
from data.factories import NsaDataFactory
from exceptions.nsakit_exceptions import InvalidPartitionError, PreconditionError
from utils.precision import Comparison, PrecisionRefiner


class TestReals:
    """Cauchy codes and approximate comparison"""

    def test_exact_code(self):
        x = RealCode.exact(Fraction(1, 3))
        assert x.approx(10) == Fraction(1, 3)
        assert satisfies_modulus(x)

    def test_modulus_is_checked(self):
        assert satisfies_modulus(RealCode(lambda n: 1 - dyadic(n + 1)))
        assert not satisfies_modulus(RealCode(lambda n: Fraction(n % 2)))

    def test_function_application(self):
        assert FUNCTIONS["square"](RealCode.exact(Fraction(1, 2))).approx(10) == Fraction(1, 4)

    def test_clamped(self):
        assert RealCode.exact(Fraction(3, 2)).clamped().approx(5) == 1

    def test_compare(self):
        third, half = RealCode.exact(Fraction(1, 3)), RealCode.exact(Fraction(1, 2))
        assert compare_lt(third, half, 8) is Comparison.TRUE
        assert compare_lt(half, third, 8) is Comparison.FALSE
        assert compare_lt(half, half, 8) is Comparison.INDETERMINATE

    def test_refiner_gives_up_on_equal_reals(self, logger):
        half = RealCode.exact(Fraction(1, 2))
        assert less_than(half, half, PrecisionRefiner(logger, max_attempts=3)) is Comparison.INDETERMINATE

    def test_refiner_raises_precision(self, logger):
        close = RealCode.exact(Fraction(1, 2) + dyadic(20))
        assert compare_lt(RealCode.exact(Fraction(1, 2)), close, 8) is Comparison.INDETERMINATE
        assert less_than(RealCode.exact(Fraction(1, 2)), close, PrecisionRefiner(logger)) is Comparison.TRUE


class TestPartitions:
    """Tagged partitions, mesh and Riemann sums"""

    def test_validation(self):
        with pytest.raises(InvalidPartitionError):
            Partition.of([0, Fraction(1, 2)], [0])
        with pytest.raises(InvalidPartitionError):
            Partition.of([0, Fraction(1, 2), Fraction(1, 2), 1], [0, Fraction(1, 2), Fraction(1, 2)])
        with pytest.raises(InvalidPartitionError):
            Partition.of([0, 1], [0, 1])
        with pytest.raises(InvalidPartitionError):
            Partition.of([0, Fraction(1, 2), 1], [Fraction(3, 4), Fraction(3, 4)])

    def test_mesh(self):
        assert mesh(Partition.uniform(4)) == Fraction(1, 4)
        assert mesh(Partition.of([0, Fraction(1, 10), 1], [0, 1])) == Fraction(9, 10)

    def test_constant(self):
        assert riemann_sum(constant_function(Fraction(3, 4)), Partition.uniform(7)) == Fraction(3, 4)

    @pytest.mark.parametrize("cells", [1, 2, 10, 100])
    def test_identity_left_and_right(self, cells):
        f = identity_function()
        assert riemann_sum(f, Partition.uniform(cells, "left")) == Fraction(cells - 1, 2 * cells)
        assert riemann_sum(f, Partition.uniform(cells, "right")) == Fraction(cells + 1, 2 * cells)

    def test_square_midpoint(self):
        assert riemann_sum(FUNCTIONS["square"], Partition.uniform(10, "mid")) == Fraction(133, 400)
        total = riemann_sum(FUNCTIONS["square"], Partition.uniform(1000, "mid"))
        assert abs(total - Fraction(1, 3)) < Fraction(1, 10 ** 6)

    def test_inexact_path_agrees(self):
        inexact = RealFunction("square", FUNCTIONS["square"].rational, exact=False)
        p = Partition.uniform(16, "mid")
        assert abs(riemann_sum(inexact, p) - riemann_sum(FUNCTIONS["square"], p)) <= dyadic(24)

    def test_common_refinement(self):
        refined = common_refinement(Partition.uniform(2), Partition.uniform(3))
        assert refined.points == (0, Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), 1)
        assert refined.tags == refined.points[:-1]

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 32), st.integers(min_value=1, max_value=40))
    def test_generated_partitions_are_admissible(self, seed, modulus):
        p = NsaDataFactory.admissible_partition(random.Random(seed), modulus)
        assert mesh(p) < Fraction(1, modulus)


class TestIntegration:
    """Integration modulus from a modulus of uniform continuity"""

    def test_modulus(self):
        assert integration_modulus(lambda k: 2 * k, 5) == 20
        assert integration_modulus(lambda k: k, 1) == 2
        assert integration_modulus(lambda k: 1, 3) == 1

    def test_square_on_generated_pairs(self):
        f = FUNCTIONS["square"]
        for n in range(1, 5):
            for p, q in NsaDataFactory.partition_pairs(0, integration_modulus(f.modulus, n), count=20):
                assert check_cri(f, f.modulus, n, p, q)

    def test_coarse_partition_is_rejected(self):
        f = FUNCTIONS["square"]
        with pytest.raises(PreconditionError):
            check_cri(f, f.modulus, 2, Partition.uniform(8), Partition.uniform(9))

    def test_uniform_partitions(self):
        f = FUNCTIONS["square"]
        check = measure_cri(f, f.modulus, 2, Partition.uniform(9, "left"), Partition.uniform(10, "right"))
        assert check.holds
        assert check.bound == Fraction(1, 2)

    def test_wrong_modulus_is_detected(self):
        steep = RealFunction("steep", lambda x: 64 * x, modulus=lambda k: 1)
        assert not check_cri(steep, steep.modulus, 4, Partition.uniform(2, "left"), Partition.uniform(2, "right"))

    def test_refinement_gap(self):
        p = Partition.uniform(4)
        assert refinement_gap(identity_function(), p, p) == 0
        assert refinement_gap(identity_function(), Partition.uniform(4, "right"), p) == Fraction(1, 4)


class TestSearch:
    """Capped unbounded search"""

    def test_first_zero(self):
        assert mu_search(lambda n: max(5 - n, 0), SearchOperator(100)) == 5
        assert SearchOperator(100)(lambda n: 0) == 0

    def test_no_zero(self):
        assert mu_search(lambda n: 1, SearchOperator(100)) is None

    def test_cap_boundary(self):
        assert mu_search(lambda n: 0 if n == 100 else 1, SearchOperator(100)) == 100
        assert mu_search(lambda n: 0 if n == 101 else 1, SearchOperator(100)) is None

    def test_bounded(self):
        assert bounded_search(lambda n: 0 if n == 3 else 1, 2) is None
        assert bounded_search(lambda n: 0 if n == 3 else 1, 3) == 3


class TestConvergence:
    """Moduli of convergence and search recovered from them"""

    @pytest.mark.parametrize("name, k, expected", [
        ("harmonic", 10, 19),
        ("dyadic", 10, 5),
        ("constant", 10, 0),
        ("harmonic", 1, 1),
    ])
    def test_mct_modulus(self, name, k, expected):
        assert mct_modulus(REAL_SEQUENCES[name], SearchOperator(10_000), k) == expected

    def test_jump_at_cap(self):
        jump = exact_sequence("jump", lambda n: Fraction(1 if n >= 50 else 0))
        assert mct_modulus(jump, SearchOperator(50), 2) == 50

    def test_window_after_modulus(self):
        harmonic = REAL_SEQUENCES["harmonic"]
        assert window_holds(harmonic, 19, 10, 10_000)
        assert not window_holds(harmonic, 0, 10, 10_000)

    def test_window_pairs(self):
        pairs = window_pairs(10, 100, samples=5)
        assert (10, 100) in pairs and (100, 100) in pairs
        assert all(10 <= a <= b <= 100 for a, b in pairs)
        assert window_pairs(7, 7) == [(7, 7)]

    def test_monotone_bounded(self):
        assert all(is_monotone_bounded(c) for c in REAL_SEQUENCES.values())
        assert not is_monotone_bounded(exact_sequence("down", lambda n: Fraction(1, n + 1)))

    def test_zero_indicator(self):
        indicator = ZeroIndicator(lambda n: 0 if n == 4 else 1)
        assert [indicator.value(n) for n in range(7)] == [0, 0, 0, 0, 1, 1, 1]
        assert indicator.first_zero == 4

    @pytest.mark.parametrize("z, expected", [(0, 0), (7, 7), (200, 200), (205, None)])
    def test_mu_from_mct(self, z, expected):
        t = mct_functional(SearchOperator(200))
        assert mu_from_mct(t, lambda n: 0 if n == z else 1, 200) == expected

    def test_mu_corpus(self):
        cap = 300
        t = mct_functional(SearchOperator(cap))
        for case in NsaDataFactory.mu_corpus(seed=11, size=24, cap=cap):
            assert mu_from_mct(t, case.f, cap) == case.expected(cap), case.name
            assert mu_search(case.f, SearchOperator(cap)) == case.expected(cap), case.name
