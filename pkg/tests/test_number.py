"""Field arithmetic, ordering, truncation, and the reduction operators."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import exact_numbers, infinitesimals, limited_numbers, nonzero_numbers, nonzero_rationals, rationals
from lcfield.errors import (
    NegativeRootError,
    NotAnNthPowerError,
    UndecidableError,
    UnlimitedError,
    ZeroDivisionLCError,
    ZeroInputError,
)
from lcfield.number import EPS, ONE, ZERO, Comparison, LCNumber, OrderClass, parse, render


def num(s):
    return parse(s)


class TestAdd:
    def test_identity(self):
        assert EPS + ZERO == EPS

    def test_disjoint_supports(self):
        assert LCNumber.from_rational(3) + EPS == num("3 + eps")

    def test_truncation_is_min(self):
        a = LCNumber([(0, 1), (1, -1)], trunc=2)
        assert a + EPS == num("1 + O(eps^(2))")

    @given(exact_numbers, exact_numbers)
    def test_commutative(self, a, b):
        assert a + b == b + a

    @given(exact_numbers, exact_numbers, exact_numbers)
    def test_associative(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @given(exact_numbers)
    def test_additive_inverse(self, a):
        assert a + (-a) == ZERO


class TestMul:
    def test_increment_expansion(self):
        # (x+dx)(y+dy) - xy at x=2, y=3, dx=dy=eps.
        x, y = LCNumber.from_rational(2), LCNumber.from_rational(3)
        assert (x + EPS) * (y + EPS) - x * y == num("5*eps + eps^(2)")

    def test_eps_squared(self):
        assert EPS * EPS == num("eps^(2)")

    def test_multiply_back_inverse(self):
        inv = num("1 - eps + eps^(2) + O(eps^(3))")
        assert (ONE + EPS) * inv == num("1 + O(eps^(3))")

    @given(exact_numbers, exact_numbers)
    def test_commutative(self, a, b):
        assert a * b == b * a

    @given(exact_numbers, exact_numbers, exact_numbers)
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(exact_numbers, exact_numbers, exact_numbers)
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c


class TestInv:
    def test_inv_eps_is_unlimited(self):
        H = EPS.inv()
        assert H == num("eps^(-1)")
        assert not H.is_limited()

    def test_inv_rational(self):
        assert LCNumber.from_rational(2).inv() == num("1/2")

    def test_inv_one_plus_eps(self):
        got = (ONE + EPS).inv(depth=3)
        assert got == num("1 - eps + eps^(2) + O(eps^(3))")
        assert ((ONE + EPS) * got) == num("1 + O(eps^(3))")

    def test_inv_zero_raises(self):
        with pytest.raises(ZeroDivisionLCError):
            ZERO.inv()

    def test_inv_zero_up_to_truncation_undecidable(self):
        with pytest.raises(UndecidableError):
            LCNumber([], trunc=3).inv()

    @given(nonzero_numbers)
    @settings(max_examples=200)
    def test_mul_inverse_up_to_truncation(self, a):
        # a * inv(a) = 1 up to the declared truncation order.
        prod = a * a.inv()
        assert prod.coefficient(0) == 1
        assert all(c == 0 for q, c in prod.terms if q != 0)


class TestCompare:
    def test_eps_below_every_positive_rational(self):
        assert EPS.compare(F(1, 1000000)) is Comparison.LT

    def test_equal_rationals(self):
        assert LCNumber.from_rational(3).compare(3) is Comparison.EQ

    def test_eps_above_eps_squared(self):
        assert EPS.compare(EPS * EPS) is Comparison.GT

    def test_tie_up_to_truncation_is_undecidable(self):
        a = LCNumber([(0, 1)], trunc=2)
        with pytest.raises(UndecidableError):
            a.compare(ONE)

    @given(exact_numbers, exact_numbers, exact_numbers)
    def test_order_respects_addition(self, a, b, c):
        if a.compare(b) is Comparison.LT:
            assert (a + c).compare(b + c) is Comparison.LT

    @given(nonzero_numbers, nonzero_numbers)
    def test_product_of_positives_is_positive(self, a, b):
        if a > ZERO and b > ZERO:
            assert a * b > ZERO

    @given(exact_numbers, exact_numbers, infinitesimals)
    def test_comparison_invariant_under_common_infinitesimal_shift(self, a, b, d):
        # When the standard parts differ, a common infinitesimal shift
        # cannot flip the comparison.
        if not (a - b).terms or (a - b).leading_exponent > 0:
            return
        assert a.compare(b) is (a + d).compare(b + d)

    def test_non_archimedean(self):
        n = 1
        while n <= 10**6:
            assert EPS * n < ONE
            n *= 10


class TestSt:
    def test_drops_infinitesimal_part(self):
        assert (LCNumber.from_rational(2) + EPS).st() == 2

    def test_fixes_standard_numbers(self):
        assert LCNumber.from_rational(5).st() == 5

    def test_pure_infinitesimal(self):
        assert (EPS + EPS * EPS).st() == 0

    def test_unlimited_raises(self):
        with pytest.raises(UnlimitedError):
            EPS.inv().st()

    def test_truncation_at_zero_raises(self):
        with pytest.raises(UndecidableError):
            LCNumber([], trunc=0).st()

    @given(limited_numbers, limited_numbers)
    def test_additive_morphism(self, a, b):
        assert (a + b).st() == a.st() + b.st()

    @given(limited_numbers, limited_numbers)
    def test_multiplicative_morphism(self, a, b):
        assert (a * b).st() == a.st() * b.st()

    @given(nonzero_rationals, nonzero_rationals, infinitesimals, infinitesimals)
    @settings(max_examples=300)
    def test_quotient_rule(self, x, y, d1, d2):
        # st((x + small)/(y + small)) == x/y.
        lhs = (LCNumber.from_rational(x) + d1) * (LCNumber.from_rational(y) + d2).inv()
        assert lhs.st() == x / y


class TestTlh:
    def test_standard_dominates_infinitesimal(self):
        assert (LCNumber.from_rational(7) + EPS).tlh() == num("7")

    def test_first_order_dominates_second(self):
        assert (EPS + EPS * EPS).tlh() == EPS

    @given(nonzero_numbers)
    def test_idempotent(self, a):
        assert a.tlh().tlh() == a.tlh()

    @given(nonzero_numbers, nonzero_numbers)
    def test_multiplicative(self, a, b):
        assert (a * b).tlh() == a.tlh() * b.tlh()

    def test_zero_raises(self):
        with pytest.raises(ZeroInputError):
            ZERO.tlh()


class TestRoots:
    def test_sqrt_eps(self):
        r = EPS.nth_root(2)
        assert r == num("eps^(1/2)")
        assert r * r == EPS

    def test_sqrt_four(self):
        assert LCNumber.from_rational(4).nth_root(2) == num("2")

    def test_sqrt_four_plus_eps(self):
        got = (LCNumber.from_rational(4) + EPS).nth_root(2, depth=3)
        assert got == num("2 + 1/4*eps - 1/64*eps^(2) + O(eps^(3))")
        assert got * got == num("4 + eps + O(eps^(3))")

    def test_imperfect_square_raises(self):
        with pytest.raises(NotAnNthPowerError):
            LCNumber.from_rational(2).nth_root(2)

    def test_negative_even_root_raises(self):
        with pytest.raises(NegativeRootError):
            LCNumber.from_rational(-4).nth_root(2)

    @given(nonzero_numbers, nonzero_rationals)
    @settings(max_examples=200)
    def test_square_root_squares_back(self, a, c):
        squared = a * a * c * c
        root = squared.nth_root(2)
        diff = root * root - squared
        assert not diff.terms


class TestClassification:
    def test_eps_is_infinitesimal(self):
        assert EPS.is_infinitesimal()

    def test_inv_eps_is_not_limited(self):
        assert not EPS.inv().is_limited()

    @given(exact_numbers, infinitesimals)
    def test_infinitesimal_shift_is_infinitely_close(self, x, d):
        assert (x + d).is_close_to(x)

    def test_order_class_zero(self):
        assert ZERO.order_class() == OrderClass(F(0), 0)

    def test_order_class_of_negative_unlimited(self):
        assert (-EPS.inv()).order_class() == OrderClass(F(-1), -1)

    @given(nonzero_numbers, nonzero_numbers)
    def test_distinct_order_classes_are_incomparable(self, a, b):
        # No integer multiple of the higher-order element passes the other.
        if a.order_class().leading_exponent <= b.order_class().leading_exponent:
            return
        if not (a > ZERO and b > ZERO):
            return
        for n in (1, 1000, 10**9):
            assert a * n < b


class TestCanonicalText:
    @given(exact_numbers)
    def test_round_trip(self, a):
        assert parse(render(a)) == a

    @given(exact_numbers)
    def test_round_trip_with_truncation(self, a):
        bounded = LCNumber(a.terms, trunc=a.leading_exponent + 5)
        assert parse(render(bounded)) == bounded

    def test_zero(self):
        assert render(ZERO) == "0"
        assert parse("0") == ZERO

    def test_examples(self):
        assert render(num("3+2*eps-eps^2")) == "3 + 2*eps - eps^(2)"
        assert render(num("-1/2 * eps^(-3/2)")) == "-1/2*eps^(-3/2)"
