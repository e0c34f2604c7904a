from math import comb

from determina.jets import JetContext, expected_basis_size, member, span
from determina.poly import Poly

from conftest import parse, random_poly


def _ctx(nvars, trunc):
    return JetContext(nvars, trunc)


class TestJetContext:
    def test_basis_size_formula(self):
        for p in (1, 2, 3):
            for d in (1, 2, 4, 6):
                ctx = _ctx(p, d)
                assert ctx.dimension == expected_basis_size(p, d) == comb(p + d - 1, p)

    def test_basis_graded_then_lex(self):
        ctx = _ctx(2, 3)
        assert list(ctx.basis) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]

    def test_truncate(self):
        ctx = _ctx(2, 3)
        assert ctx.truncate(parse("x^2 + x^3")) == parse("x^2")


class TestSpan:
    def test_shifted_generators_dimension(self):
        # generators (x, 0) and (0, x) in rank 2 over one variable at D = 3:
        # each slot carries x and x^2, dimension 4
        x = Poly.variable(1, 0)
        zero = Poly.zero(1)
        ctx = _ctx(1, 3)
        basis = span([(x, zero), (zero, x)], ctx, 2)
        assert basis.dimension == 4
        assert member((x * x, zero), basis)
        assert not member((Poly.constant(1, 1), zero), basis)

    def test_empty_span(self):
        ctx = _ctx(2, 3)
        basis = span([], ctx, 1)
        assert basis.dimension == 0
        assert not member((parse("x"),), basis)
        assert member((parse("0"),), basis)

    def test_unit_generators_fill_module(self):
        ctx = _ctx(2, 3)
        one = Poly.constant(2, 1)
        zero = Poly.zero(2)
        basis = span([(one, zero), (zero, one)], ctx, 2)
        assert basis.dimension == 2 * ctx.dimension

    def test_high_degree_truncates_to_zero(self):
        ctx = _ctx(2, 3)
        basis = span([(parse("x"),)], ctx, 1)
        assert member((parse("x^5 + y^4"),), basis)

    def test_membership_of_generators(self, rng):
        ctx = _ctx(2, 4)
        vectors = [
            (random_poly(rng), random_poly(rng)) for _ in range(3)
        ]
        basis = span(vectors, ctx, 2)
        for v in vectors:
            assert member(v, basis)

    def test_cross_membership(self):
        ctx = _ctx(2, 3)
        basis = span([(parse("x"), parse("0"))], ctx, 2)
        assert not member((parse("y"), parse("0")), basis)

    def test_monotone_and_idempotent(self, rng):
        ctx = _ctx(2, 4)
        vectors = [(random_poly(rng),) for _ in range(3)]
        small = span(vectors[:2], ctx, 1)
        big = span(vectors, ctx, 1)
        assert big.dimension >= small.dimension
        # adding an element already in the span changes nothing
        again = span(vectors + [vectors[0]], ctx, 1)
        assert again.dimension == big.dimension
        assert again == big

    def test_deterministic_and_order_independent_rows(self, rng):
        # reduced echelon form is canonical for the row space
        ctx = _ctx(2, 4)
        vectors = [(random_poly(rng),) for _ in range(4)]
        forward = span(vectors, ctx, 1)
        backward = span(list(reversed(vectors)), ctx, 1)
        assert forward.echelon_rows() == backward.echelon_rows()

    def test_shape_mismatch(self):
        ctx = _ctx(2, 3)
        basis = span([(parse("x"), parse("y"))], ctx, 2)
        try:
            member((parse("x"),), basis)
        except ValueError as err:
            assert "rank" in str(err)
        else:
            raise AssertionError("expected a shape error")
