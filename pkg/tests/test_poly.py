import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from determina.poly import Poly, PolyParseError, poly_parse

from conftest import XY, parse, random_poly


class TestParse:
    def test_single_power(self):
        assert parse("x^5") == Poly(2, {(5, 0): Fraction(1)})

    def test_zero(self):
        p = parse("0")
        assert p.is_zero()
        assert p.order() == math.inf

    def test_two_terms_with_sign(self):
        assert parse("x^3*y - 2*y^4") == Poly(2, {(3, 1): Fraction(1), (0, 4): Fraction(-2)})

    def test_rational_coefficient(self):
        assert parse("1/2*x + 3") == Poly(2, {(1, 0): Fraction(1, 2), (0, 0): Fraction(3)})

    def test_leading_minus(self):
        assert parse("-x + y") == Poly(2, {(1, 0): Fraction(-1), (0, 1): Fraction(1)})

    def test_juxtaposed_variables(self):
        assert parse("x*y^2") == parse("y^2*x") == Poly(2, {(1, 2): Fraction(1)})

    def test_repeated_variable_multiplies(self):
        assert parse("x*x") == parse("x^2")

    def test_whitespace_insignificant(self):
        assert parse(" x ^ 2 + 1 ") == parse("x^2+1")

    def test_unknown_variable(self):
        with pytest.raises(PolyParseError) as err:
            parse("x + q^2")
        assert "q" in str(err.value)
        assert err.value.position == 4

    def test_syntax_error_position(self):
        with pytest.raises(PolyParseError) as err:
            parse("x + + ")
        assert err.value.position >= 4

    def test_dangling_star(self):
        with pytest.raises(PolyParseError):
            parse("2*")

    def test_round_trip_printing(self, rng):
        for _ in range(50):
            p = random_poly(rng, 2, 4, 4)
            assert poly_parse(p.to_string(XY), XY) == p


class TestArithmetic:
    def test_difference_of_squares(self):
        x, y = parse("x"), parse("y")
        assert (x + y) * (x - y) == parse("x^2 - y^2")

    def test_multiplication_by_zero(self):
        assert (parse("x+y") * Poly.zero(2)).is_zero()

    def test_monomial_product_exponent_addition(self):
        assert parse("x^5") * parse("x^3") == parse("x^8")

    def test_mul_matches_evaluation(self, rng):
        # independent oracle: evaluation at random rational points is a ring map
        for _ in range(30):
            a = random_poly(rng, 2, 3, 4)
            b = random_poly(rng, 2, 3, 4)
            point = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(2)]
            assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
            assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)

    def test_order_additive_on_products(self, rng):
        for _ in range(30):
            a = random_poly(rng, 2, 3, 3)
            b = random_poly(rng, 2, 3, 3)
            product = a * b
            if a.is_zero() or b.is_zero():
                assert product.is_zero()
            else:
                # k[[x, y]] is a domain, so orders add
                assert product.order() == a.order() + b.order()

    def test_variable_count_mismatch(self):
        with pytest.raises(ValueError):
            parse("x") * poly_parse("t", ("t",))


_coeffs = st.integers(min_value=-4, max_value=4)
_monos = st.tuples(st.integers(0, 3), st.integers(0, 3))
_polys = st.dictionaries(_monos, _coeffs, max_size=4).map(
    lambda d: Poly(2, {m: Fraction(c) for m, c in d.items()})
)


class TestRingLaws:
    @settings(max_examples=60, deadline=None)
    @given(_polys, _polys, _polys)
    def test_add_associative(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @settings(max_examples=60, deadline=None)
    @given(_polys, _polys, _polys)
    def test_mul_distributes(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @settings(max_examples=60, deadline=None)
    @given(_polys, _polys)
    def test_mul_commutative(self, a, b):
        assert a * b == b * a


class TestTruncate:
    def test_high_power_drops(self):
        assert parse("x^8").truncate(5).is_zero()

    def test_partial(self):
        assert parse("x^2 + x^7").truncate(5) == parse("x^2")

    def test_idempotent(self, rng):
        for _ in range(20):
            a = random_poly(rng, 2, 6, 5)
            assert a.truncate(4).truncate(4) == a.truncate(4)

    def test_ring_map(self, rng):
        # truncation commutes with multiplication up to re-truncation
        for _ in range(30):
            a = random_poly(rng, 2, 4, 4)
            b = random_poly(rng, 2, 4, 4)
            lhs = (a * b).truncate(5)
            rhs = (a.truncate(5) * b.truncate(5)).truncate(5)
            assert lhs == rhs
