from fractions import Fraction

import pytest

from determina.closure import closure_colon, in_closure, integral_closure, newton_polyhedron
from determina.ideals import (
    Ideal,
    ideal_power,
    ideal_sum,
    maximal_power,
    monomial_height,
    monomial_member,
)

from conftest import parse, random_monomial

I1 = Ideal(2, [parse("x^3"), parse("y^3")])
I2 = Ideal(2, [parse("y^7"), parse("x^5*y^4"), parse("x^8")])


def random_monomial_ideal(rng, nvars, max_degree, count):
    monos = [random_monomial(rng, nvars, max_degree) for _ in range(rng.randint(1, count))]
    ideal = Ideal.from_monomials(nvars, monos)
    return ideal if not ideal.is_zero() else Ideal.from_monomials(nvars, [(1,) * nvars])


def power_membership_certificate(mono, ideal, budget):
    """Independent oracle: u is integral over I iff u^k lies in I^k for some k."""
    for k in range(1, budget + 1):
        scaled = tuple(k * e for e in mono)
        if monomial_member(scaled, ideal_power(ideal, k)):
            return k
    return None


class TestNewtonPolyhedron:
    def test_two_point_hull(self):
        poly = newton_polyhedron(Ideal(2, [parse("x^5"), parse("y^3")]))
        facets = {(tuple(map(str, w)), str(c)) for w, c in poly.facets}
        assert facets == {
            (("0", "1"), "0"),
            (("1", "0"), "0"),
            (("3", "5"), "15"),
        }

    def test_single_generator_single_variable(self):
        poly = newton_polyhedron(Ideal(1, [parse("x", ("x",))]))
        assert [(tuple(map(str, w)), str(c)) for w, c in poly.facets] == [(("1",), "1")]

    def test_running_example_generators(self):
        poly = newton_polyhedron(I2)
        # (5, 4) generates the ideal but is not a vertex of the polyhedron:
        # it sits above the segment from (0, 7) to (8, 0), as the power
        # oracle confirms (x^5*y^4 is not a minimal closure generator)
        assert poly.contains((5, 4))
        tight = [f for f in poly.facets if sum(w * e for w, e in zip(f[0], (5, 4))) == f[1]]
        assert tight == []
        normals = {tuple(map(str, w)) for w, _ in poly.facets}
        assert ("7", "8") in normals  # the (0,7) to (8,0) bounding line
        assert poly.contains((0, 7)) and poly.contains((8, 0))

    def test_generators_satisfy_all_facets(self, rng):
        for _ in range(10):
            ideal = random_monomial_ideal(rng, 2, 6, 4)
            poly = newton_polyhedron(ideal)
            for e in ideal.monomial_exponents():
                assert poly.contains(e)
            # at least one generator is a vertex where some facet is tight
            assert any(
                any(sum(w * v for w, v in zip(f[0], e)) == f[1] for f in poly.facets)
                for e in ideal.monomial_exponents()
            )

    def test_three_variables(self):
        names = ("x", "y", "z")
        ideal = Ideal(3, [parse("x^2", names), parse("y^2", names), parse("z^2", names)])
        poly = newton_polyhedron(ideal)
        assert poly.contains((1, 1, 0))
        assert not poly.contains((1, 0, 0))

    def test_json_round_trip_fields(self):
        payload = newton_polyhedron(I1).to_json_dict()
        assert set(payload) == {"exponents", "facets"}
        assert all(set(f) == {"normal", "offset"} for f in payload["facets"])


class TestInClosure:
    def test_generator_is_inside(self):
        assert in_closure((0, 7), I2)

    def test_outside_facet(self):
        assert not in_closure((1, 6), I2)

    def test_every_degree_eight_monomial(self):
        for a in range(9):
            assert in_closure((a, 8 - a), I2)


class TestIntegralClosure:
    def test_integrally_closed_power(self):
        cube = maximal_power(2, 3)
        assert integral_closure(cube) == cube

    def test_running_example(self):
        assert integral_closure(I2) == ideal_sum(maximal_power(2, 8), Ideal(2, [parse("y^7")]))

    def test_diagonal_pair(self):
        assert integral_closure(I1) == maximal_power(2, 3)

    def test_closure_operator_laws(self, rng):
        for _ in range(8):
            ideal = random_monomial_ideal(rng, 2, 6, 4)
            closed = integral_closure(ideal)
            # extensive
            for e in ideal.monomial_exponents():
                assert monomial_member(e, closed)
            # idempotent
            assert integral_closure(closed) == closed
            # monotone
            bigger = ideal_sum(ideal, random_monomial_ideal(rng, 2, 6, 2))
            closed_bigger = integral_closure(bigger)
            for e in closed.monomial_exponents():
                assert monomial_member(e, closed_bigger)

    def test_three_variable_laws(self, rng):
        for _ in range(4):
            ideal = random_monomial_ideal(rng, 3, 6, 4)
            closed = integral_closure(ideal)
            assert integral_closure(closed) == closed

    def test_height_preserved(self, rng):
        for _ in range(8):
            ideal = random_monomial_ideal(rng, 2, 5, 3)
            if ideal.is_unit():
                continue
            assert monomial_height(ideal) == monomial_height(integral_closure(ideal))

    def test_power_oracle(self, rng):
        # membership in the closure matches the power certificate; a missing
        # certificate within the budget for a true member is a budget failure
        # and must be confirmed by an extended search, never silently passed
        budget, extended = 8, 64
        budget_failures = 0
        samples = 0
        for _ in range(12):
            ideal = random_monomial_ideal(rng, 2, 6, 4)
            for _ in range(10):
                mono = random_monomial(rng, 2, 8)
                samples += 1
                inside = in_closure(mono, ideal)
                k = power_membership_certificate(mono, ideal, budget)
                if inside and k is None:
                    budget_failures += 1
                    assert power_membership_certificate(mono, ideal, extended) is not None
                elif not inside:
                    assert k is None
                else:
                    assert k is not None
        assert samples >= 100
        assert budget_failures <= samples // 10

    def test_rejects_zero_and_non_monomial(self):
        with pytest.raises(ValueError):
            integral_closure(Ideal.zero(2))
        with pytest.raises(ValueError):
            integral_closure(Ideal(2, [parse("x + y")]))


class TestClosureColon:
    def test_running_example(self):
        assert closure_colon(I2, I1) == maximal_power(2, 5)

    def test_self_colon_is_unit(self):
        assert closure_colon(I1, I1).is_unit()

    def test_univariate_valuations(self):
        t = ("t",)
        a = Ideal(1, [parse("t^2", t)])
        b = Ideal(1, [parse("t", t)])
        assert closure_colon(a, b) == Ideal(1, [parse("t", t)])
