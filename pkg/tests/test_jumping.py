from fractions import Fraction

import pytest

import mulseries as ms
from mulseries.errors import NotMember
from mulseries.jumping import StarWitness, TerminalWitness

CUSP_JUMPS = [
    Fraction(5, 6), Fraction(7, 6), Fraction(4, 3), Fraction(3, 2),
    Fraction(5, 3), Fraction(11, 6), Fraction(2),
]


class TestFamilies:
    def test_point_family(self, point):
        values = ms.family_values(point, 1, Fraction(5))
        assert [v for v, _ in values] == [Fraction(k) for k in (2, 3, 4, 5)]
        # witnesses enumerate every split p + q = value
        assert values[1][1] == ((1, 2), (2, 1))

    def test_cusp_family(self, cusp):
        values = ms.family_values(cusp, 1, Fraction(2))
        assert [v for v, _ in values] == CUSP_JUMPS
        assert ms.family_values(cusp, 1, Fraction(1, 2)) == []

    def test_star_family_of_two_stage_model(self, two_stars):
        values = ms.family_values(two_stars, 1, Fraction(1))
        assert [v for v, _ in values] == [Fraction(5, 12), Fraction(11, 12)]
        assert values[0][1] == ((1, 1, 0),)

    def test_family_index_bounds(self, cusp):
        with pytest.raises(IndexError):
            ms.family_values(cusp, 2, Fraction(2))


class TestThreshold:
    def test_examples(self, point, cusp):
        assert ms.log_canonical_threshold(point) == 2
        assert ms.log_canonical_threshold(cusp) == Fraction(5, 6)
        model = ms.model_from_proximity(4, {3: 1, 4: 2})
        assert ms.log_canonical_threshold(model) == Fraction(8, 15)

    def test_is_smallest_jump(self, small_corpus):
        for model in small_corpus:
            records = ms.jumping_numbers(model, Fraction(3))
            assert records[0].value == ms.log_canonical_threshold(model)
            assert all(r.value != 1 for r in records)


class TestDecomposition:
    def test_terminal_bases(self, cusp, point):
        w = ms.decompose_membership(cusp, 1, Fraction(5, 6))
        assert w == TerminalWitness(family=1, s=1, q=1, r=0)
        w = ms.decompose_membership(cusp, 1, Fraction(11, 6))
        assert (w.s, w.q, w.r) == (1, 1, 1)
        w = ms.decompose_membership(point, 1, Fraction(7))
        assert (w.s, w.q, w.r) == (1, 1, 5)

    def test_star_bases(self, two_stars):
        w = ms.decompose_membership(two_stars, 1, Fraction(5, 12))
        assert w == StarWitness(family=1, p=1, q=1, s=0, r=0)
        w = ms.decompose_membership(two_stars, 1, Fraction(17, 12))
        assert (w.p, w.q, w.s, w.r) == (1, 1, 0, 1)
        w = ms.decompose_membership(two_stars, 1, Fraction(11, 12))
        assert (w.p, w.q, w.s, w.r) == (1, 1, 1, 0)
        assert ms.witness_base_value(two_stars, w) == Fraction(11, 12)

    def test_not_member(self, cusp):
        with pytest.raises(NotMember):
            ms.decompose_membership(cusp, 1, Fraction(1, 2))

    def test_memberships(self, cusp, chain7):
        assert ms.memberships(cusp, Fraction(5, 6)) == (1,)
        assert ms.memberships(cusp, Fraction(1, 2)) == ()
        assert ms.memberships(chain7, Fraction(5, 6)) == (1,)
        assert ms.memberships(chain7, Fraction(8, 7)) == (2,)


class TestContribution:
    def test_candidates(self, cusp):
        assert ms.is_candidate(cusp, 3, Fraction(5, 6))
        assert not ms.is_candidate(cusp, 1, Fraction(5, 6))
        assert ms.is_candidate(cusp, 1, Fraction(2))

    def test_contributes_both_criteria(self, cusp, point):
        for criterion in ("intersection", "ideal"):
            assert ms.contributes(cusp, 3, Fraction(5, 6), criterion)
            assert not ms.contributes(cusp, 1, Fraction(5, 6), criterion)
            assert not ms.contributes(cusp, 2, Fraction(2), criterion)
            assert ms.contributes(point, 1, Fraction(2), criterion)

    def test_contributing_divisors(self, cusp, point, chain7):
        assert ms.contributing_divisors(cusp, Fraction(5, 6)) == (3,)
        assert ms.contributing_divisors(cusp, Fraction(2)) == (3,)
        assert ms.contributing_divisors(point, Fraction(3)) == (1,)
        assert ms.contributing_divisors(chain7, Fraction(2)) == (4,)


class TestPredecessor:
    def test_previous_jump(self, cusp):
        assert ms.previous_jumping_number(cusp, Fraction(5, 6)) is None
        assert ms.previous_jumping_number(cusp, Fraction(7, 6)) == Fraction(5, 6)
        assert ms.previous_jumping_number(cusp, Fraction(2)) == Fraction(11, 6)

    def test_predecessor_ideal(self, cusp, point):
        assert ms.predecessor_ideal(cusp, Fraction(5, 6)).is_unit
        assert ms.predecessor_ideal(cusp, Fraction(7, 6)).divisor == (1, 1, 2)
        assert ms.predecessor_ideal(point, Fraction(3)).divisor == (1,)

    def test_rejects_non_jump(self, cusp):
        with pytest.raises(NotMember):
            ms.predecessor_ideal(cusp, Fraction(1))


class TestDimensions:
    def test_family_dimension(self, cusp, point):
        assert ms.family_dimension(cusp, 1, Fraction(5, 6)) == 1
        assert ms.family_dimension(cusp, 1, Fraction(11, 6)) == 2
        for k in range(2, 7):
            assert ms.family_dimension(point, 1, Fraction(k)) == k - 1

    def test_total_dimension(self, cusp, point):
        assert ms.total_dimension(cusp, Fraction(5, 6)) == 1
        assert ms.total_dimension(cusp, Fraction(11, 6)) == 2
        for k in range(2, 7):
            assert ms.total_dimension(point, Fraction(k)) == k - 1


class TestRecords:
    def test_cusp_table(self, cusp):
        records = ms.jumping_numbers(cusp, Fraction(2))
        assert [r.value for r in records] == CUSP_JUMPS
        assert [r.dimension for r in records] == [1, 1, 1, 1, 1, 2, 1]
        assert all(r.memberships == (1,) for r in records)
        assert all(r.contributing == (3,) for r in records)
        assert [r.in_omega for r in records] == [True] * 5 + [False, True]
        eleven_sixths = records[5]
        assert eleven_sixths.witnesses_for(1) == ((1, 4), (3, 1))

    def test_chain7_table(self, chain7):
        records = ms.jumping_numbers(chain7, Fraction(2))
        expected = [
            Fraction(5, 6), Fraction(8, 7), Fraction(9, 7), Fraction(10, 7),
            Fraction(11, 7), Fraction(12, 7), Fraction(11, 6), Fraction(13, 7),
            Fraction(2),
        ]
        assert [r.value for r in records] == expected
        assert all(r.dimension == 1 for r in records)
        assert records[0].memberships == (1,)
        assert records[0].contributing == (3,)
        assert records[1].memberships == (2,)
        assert records[1].contributing == (4,)

    def test_below_threshold_is_empty(self, small_corpus):
        for model in small_corpus:
            below = ms.log_canonical_threshold(model) - Fraction(1, 100)
            if below > 0:
                assert ms.jumping_numbers(model, below) == []

    def test_dimension_dominates_membership_count(self, small_corpus):
        for model in small_corpus:
            for record in ms.jumping_numbers(model, Fraction(3)):
                assert record.dimension >= len(record.memberships)
