"""Exact-arithmetic engine tests.

Expected values come from independent oracles: a naive Fraction-by-Fraction
sawtooth summation, the classical closed forms, and the classical
reciprocity law, none of which share code with the fast integer kernels
under test.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elliptic_dedekind import (
    CoprimePair,
    DenominatorClass,
    Route,
    SumKind,
    SumRecord,
    dedekind_sum,
    denominator_class,
    hardy_berndt,
    inversion_check,
    m_reciprocity_defect,
    m_value,
    q_value,
    rao_identity_defect,
    reciprocity_constant,
    zero_characterization,
)
from elliptic_dedekind.errors import (
    CoprimalityError,
    DomainError,
    UndefinedRationalPartError,
)
from elliptic_dedekind.exact import bq_from_m, q_euclidean


def naive_dedekind(a: int, b: int) -> Fraction:
    """Direct sawtooth summation, one Fraction per factor."""
    total = Fraction(0)
    for v in range(1, b):
        first = Fraction(a * v, b)
        first = Fraction(0) if first.denominator == 1 else first - math.floor(first) - Fraction(1, 2)
        second = Fraction(v, b) - math.floor(Fraction(v, b)) - Fraction(1, 2)
        total += first * second
    return total


def naive_hardy_berndt(a: int, b: int) -> int:
    return sum(
        (-1) ** (mu + 1 + math.floor(Fraction(a * mu, b))) for mu in range(1, b)
    )


class TestDedekindSum:
    def test_worked_examples(self):
        assert dedekind_sum(1, 3) == Fraction(1, 18)
        assert dedekind_sum(2, 5) == 0
        assert dedekind_sum(7, 1) == 0
        assert dedekind_sum(2, 6) == Fraction(1, 18)

    def test_closed_forms(self):
        for b in range(2, 60):
            assert dedekind_sum(1, b) == Fraction((b - 1) * (b - 2), 12 * b)
        for b in range(3, 60, 2):
            assert dedekind_sum(2, b) == Fraction((b - 1) * (b - 5), 24 * b)

    def test_rejects_bad_modulus(self):
        with pytest.raises(DomainError):
            dedekind_sum(1, 0)
        with pytest.raises(DomainError):
            dedekind_sum(1, -3)

    @given(st.integers(-150, 150), st.integers(1, 90))
    def test_matches_naive_summation(self, a, b):
        assert dedekind_sum(a, b) == naive_dedekind(a, b)

    @given(st.integers(-150, 150).filter(bool), st.integers(1, 90))
    def test_parity_and_reduction(self, a, b):
        s = dedekind_sum(a, b)
        assert dedekind_sum(-a, b) == -s
        assert dedekind_sum(a + b, b) == s

    @given(st.integers(1, 120), st.integers(1, 120))
    def test_classical_reciprocity(self, a, b):
        if math.gcd(a, b) != 1:
            return
        lhs = dedekind_sum(a, b) + dedekind_sum(b, a)
        assert lhs == Fraction(-1, 4) + Fraction(a * a + b * b + 1, 12 * a * b)

    @given(st.integers(1, 200), st.integers(1, 200))
    def test_classical_denominator(self, a, b):
        if math.gcd(a, b) != 1:
            return
        value = 2 * b * math.gcd(3, b) * dedekind_sum(a, b)
        assert value.denominator == 1

    @given(st.integers(1, 150), st.integers(1, 150))
    def test_classical_zero_law(self, a, b):
        if math.gcd(a, b) != 1:
            return
        assert (dedekind_sum(a, b) == 0) == ((a * a + 1) % b == 0)


class TestHardyBerndt:
    def test_worked_examples(self):
        assert hardy_berndt(2, 3) == 2
        assert hardy_berndt(1, 2) == 1
        assert hardy_berndt(5, 1) == 0

    def test_rejects_common_factor(self):
        with pytest.raises(CoprimalityError):
            hardy_berndt(2, 4)
        with pytest.raises(DomainError):
            hardy_berndt(1, 0)

    @given(st.integers(-99, 99).filter(bool), st.integers(1, 70))
    def test_matches_naive_summation(self, a, b):
        if math.gcd(a, b) != 1:
            return
        assert hardy_berndt(a, b) == naive_hardy_berndt(a, b)

    @given(st.integers(1, 99), st.integers(1, 70))
    def test_oddness(self, a, b):
        if math.gcd(a, b) != 1:
            return
        assert hardy_berndt(-a, b) == -hardy_berndt(a, b)


class TestReciprocityConstant:
    def test_worked_examples(self):
        assert reciprocity_constant(2, 3) == Fraction(7, 12)
        assert reciprocity_constant(1, 1) == Fraction(3, 4)
        assert reciprocity_constant(1, 2) == Fraction(3, 4)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            reciprocity_constant(0, 3)
        with pytest.raises(DomainError):
            reciprocity_constant(2, -1)


ROUTES = (Route.MAIN_RESULT, Route.RAO, Route.EUCLIDEAN)


def u_odd_pairs(bound):
    for b in range(1, bound + 1):
        for a in range(1 + b % 2, bound + 1, 2):
            if math.gcd(a, b) == 1:
                yield a, b


class TestRationalPart:
    @pytest.mark.parametrize("route", ROUTES)
    def test_worked_examples(self, route):
        assert q_value(CoprimePair(2, 3), route) == Fraction(4, 3)
        assert q_value(CoprimePair(1, 2), route) == Fraction(3, 4)
        assert q_value(CoprimePair(2, 5), route) == 0
        assert q_value(CoprimePair(4, 1), route) == 0

    def test_rejects_outside_domain(self):
        with pytest.raises(UndefinedRationalPartError):
            q_value(CoprimePair(3, 5))
        with pytest.raises(UndefinedRationalPartError):
            q_euclidean(1, 3)

    def test_route_agreement_small_box(self):
        for a, b in u_odd_pairs(40):
            pair = CoprimePair(a, b)
            values = {q_value(pair, route) for route in ROUTES}
            assert len(values) == 1, (a, b, values)

    @given(st.integers(-80, 80).filter(bool), st.integers(1, 80))
    def test_parity_and_even_reduction(self, a, b):
        if math.gcd(a, b) != 1 or (a + b) % 2 == 0:
            return
        q = q_euclidean(a, b)
        assert q_euclidean(-a, b) == -q
        assert q_euclidean(a + 2 * b, b) == q

    @given(st.integers(1, 80), st.integers(1, 80))
    def test_reciprocity(self, a, b):
        if math.gcd(a, b) != 1 or (a + b) % 2 == 0:
            return
        assert q_euclidean(a, b) + q_euclidean(b, a) == reciprocity_constant(a, b)

    def test_denominator_always_divides_two_b(self):
        for a, b in u_odd_pairs(50):
            bq = b * q_euclidean(a, b)
            assert (2 * bq).denominator == 1


class TestIntegralPart:
    def test_worked_examples(self):
        assert m_value(CoprimePair(2, 3)) == 12
        assert m_value(CoprimePair(3, 2)) == 6
        assert m_value(CoprimePair(-2, 3)) == -12

    def test_linkage_and_shift(self):
        for a, b in u_odd_pairs(60):
            pair = CoprimePair(a, b)
            m = m_value(pair)
            assert b * q_euclidean(a, b) == Fraction(a * (1 - 3 * b), 2) + m
            assert m_value(CoprimePair(a + 2 * b, b)) == m + b * (3 * b - 1)

    def test_bq_from_m_route(self):
        for a, b in u_odd_pairs(60):
            if a % 2:
                continue
            assert bq_from_m(a, b) == b * q_euclidean(a, b)

    def test_reciprocity_defect_vanishes(self):
        assert m_reciprocity_defect(2, 3) == 0
        assert m_reciprocity_defect(1, 2) == 0
        assert m_reciprocity_defect(4, 5) == 0
        for a, b in u_odd_pairs(25):
            assert m_reciprocity_defect(a, b) == 0


class TestDenominatorClass:
    def test_examples(self):
        assert denominator_class(CoprimePair(1, 2)) is DenominatorClass.HALF_INTEGER
        assert 2 * q_euclidean(1, 2) == Fraction(3, 2)
        assert denominator_class(CoprimePair(2, 3)) is DenominatorClass.INTEGER
        assert 3 * q_euclidean(2, 3) == 4
        assert denominator_class(CoprimePair(4, 5)) is DenominatorClass.INTEGER
        assert 5 * q_euclidean(4, 5) == 12

    def test_agrees_with_actual_denominator(self):
        for a, b in u_odd_pairs(60):
            bq = b * q_euclidean(a, b)
            if denominator_class(CoprimePair(a, b)) is DenominatorClass.INTEGER:
                assert bq.denominator == 1
            else:
                assert bq.denominator == 2


class TestZeroCharacterization:
    def test_examples(self):
        zc = zero_characterization(CoprimePair(2, 5))
        assert zc.predicted_zero and zc.actual_zero
        zc = zero_characterization(CoprimePair(2, 3))
        assert not zc.predicted_zero and not zc.actual_zero
        zc = zero_characterization(CoprimePair(12, 5))
        assert zc.predicted_zero and zc.actual_zero

    def test_rejects_wrong_parities(self):
        with pytest.raises(DomainError):
            zero_characterization(CoprimePair(3, 2))

    def test_prediction_matches_reality(self):
        for a, b in u_odd_pairs(80):
            if a % 2:
                continue
            zc = zero_characterization(CoprimePair(a, b))
            assert zc.predicted_zero == zc.actual_zero

    def test_integrality_forces_congruence(self):
        for a, b in u_odd_pairs(80):
            if a % 2:
                continue
            if q_euclidean(a, b).denominator == 1:
                assert (a * a + 1) % b == 0


class TestInversion:
    def test_examples(self):
        check = inversion_check(2, 2, 5)
        assert (check.applicable, check.sign, check.holds) == (True, -1, True)
        check = inversion_check(4, 4, 17)
        assert (check.applicable, check.sign, check.holds) == (True, -1, True)
        check = inversion_check(2, 8, 15)
        assert (check.applicable, check.sign, check.holds) == (True, 1, True)

    def test_inapplicable_inputs(self):
        assert not inversion_check(1, 1, 2).applicable  # even modulus branch
        assert not inversion_check(2, 4, 9).applicable  # no congruence

    def test_holds_over_range(self):
        for b in range(3, 60, 2):
            for a in range(2, 60, 2):
                if math.gcd(a, b) != 1:
                    continue
                inv = pow(a, -1, b)
                a_prime = inv if inv % 2 == 0 else inv - b
                assert inversion_check(a, a_prime, b).holds
                assert inversion_check(a, -a_prime, b).holds


class TestRaoIdentity:
    def test_examples(self):
        assert rao_identity_defect(CoprimePair(2, 3)) == 0
        assert rao_identity_defect(CoprimePair(1, 2)) == 0
        assert rao_identity_defect(CoprimePair(4, 5)) == 0

    def test_vanishes_on_domain(self):
        for a, b in u_odd_pairs(45):
            assert rao_identity_defect(CoprimePair(a, b)) == 0


class TestValueTypes:
    def test_pair_validation(self):
        with pytest.raises(CoprimalityError):
            CoprimePair(2, 4)
        with pytest.raises(DomainError):
            CoprimePair(0, 1)
        with pytest.raises(DomainError):
            CoprimePair(1, 0)
        assert CoprimePair(2, 3).in_U_odd
        assert not CoprimePair(3, 5).in_U_odd
        assert CoprimePair(-3, 2).in_U_odd

    def test_sum_record_m_must_be_integral(self):
        pair = CoprimePair(2, 3)
        SumRecord(pair, Fraction(12), Route.DEFINITION, SumKind.M_PART)
        with pytest.raises(DomainError):
            SumRecord(pair, Fraction(1, 2), Route.DEFINITION, SumKind.M_PART)

    def test_record_serialization(self):
        record = SumRecord(CoprimePair(2, 3), Fraction(4, 3), Route.MAIN_RESULT, SumKind.Q_PART)
        assert record.as_dict() == {
            "a": 2,
            "b": 3,
            "kind": "Q",
            "route": "main",
            "value": "4/3",
        }
