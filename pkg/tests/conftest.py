import random
from fractions import Fraction

import pytest

from determina.poly import Poly, poly_parse

XY = ("x", "y")


def parse(text: str, names=XY) -> Poly:
    return poly_parse(text, names)


def random_poly(rng: random.Random, nvars: int = 2, max_degree: int = 2, terms: int = 3) -> Poly:
    """Sparse random polynomial with small integer coefficients."""
    data = {}
    for _ in range(rng.randint(1, terms)):
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(nvars)] += 1
        coeff = rng.randint(-3, 3)
        if coeff:
            data[tuple(exps)] = Fraction(coeff)
    return Poly(nvars, data)


def random_monomial(rng: random.Random, nvars: int, max_degree: int) -> tuple[int, ...]:
    exps = [0] * nvars
    for _ in range(rng.randint(0, max_degree)):
        exps[rng.randrange(nvars)] += 1
    return tuple(exps)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240801)
