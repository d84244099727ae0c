import random

import pytest

from liaison import FamilyParams, Ideal, PolynomialRing, QQ, build_linked_points


@pytest.fixture(scope="session")
def ring_qq3():
    return PolynomialRing(["x", "y", "z"], QQ)


EX22_GENS = ["z^3", "x*y*z", "x^3*y", "x^4", "y^6", "y^5*z", "x*y^5"]
EX23_GENS = ["z^3", "x*y*z", "x^3*y", "x^4", "y^6", "y^5*z + x^2*y^4", "x*y^5"]
THM24_GENS = ["x^2*y + y^3 - y*z^2 - z^3", "x*y^2 - x*z^2", "x^3*z - x*y*z^2",
              "y^2*z^2 - z^4", "x^6", "z^6", "x*z^5"]

EX23_STEPS = [
    ["z^3", "x^4", "y^6"],
    ["z^3", "x^4", "y^5"],
    ["x*z", "x^3 + z^3", "y^5"],
    ["y*z", "x*y + z^2", "y^5 + x^5"],
    ["x*y + z^2", "y^2", "x^4"],
    ["y", "z^2", "x^4"],
]
EX23_TARGETS = [
    ["z^3", "x^3*y", "x^4", "x^3*z - x*y*z^2", "y^5"],
    ["x*z", "x^3", "z^3", "x*y^4", "y^5", "x^2*y^3 + y^4*z"],
    ["x*z", "y*z", "x*y + z^2", "x^3", "y^5"],
    ["y*z", "x*y + z^2", "y^2", "x^4", "x^2*z^2"],
    ["y", "x*z", "z^2", "x^4"],
    ["y", "z", "x^3"],
]

THM24_STEPS = [
    ["x^2*y + y^3 - y*z^2 - z^3", "y^2*z^2 - z^4", "x^6"],
    ["x^2*y + y^3 - y*z^2 - z^3", "z^4", "x^5"],
    ["z^2", "x^2*y + y^3", "x^5"],
    ["y^2", "z^2", "x^5"],
    ["y^2", "z^2", "x^4"],
    ["z", "y^2", "x^4"],
]
THM24_TARGETS = [
    ["x^2*y + y^3 - y*z^2 - z^3", "z^4", "y^2*z^2", "x*z^3", "x^5"],
    ["z^2", "x^2*y + y^3", "x^2*z + y^2*z", "y^5", "x*y^3*z", "x^5"],
    ["x*z", "y^2", "z^2", "x^2*y", "x^5"],
    ["y^2", "y*z", "z^2", "x^4", "x^3*z"],
    ["z", "x*y", "y^2", "x^4"],
    ["z", "y", "x^3"],
]

EX22_BETTI = {(0, 3): 2, (0, 4): 2, (0, 6): 3, (1, 5): 3, (1, 7): 5,
              (1, 8): 2, (2, 8): 2, (2, 9): 2}
EX23_BETTI = {(0, 3): 2, (0, 4): 2, (0, 6): 3, (1, 5): 3, (1, 7): 5,
              (1, 8): 1, (2, 8): 1, (2, 9): 2}
HVECTOR = (1, 3, 6, 8, 7, 6, 2)


def parse_ideal(ring, strings):
    return Ideal([ring.parse(s) for s in strings], ring)


@pytest.fixture(scope="session")
def ideal_ex22(ring_qq3):
    return parse_ideal(ring_qq3, EX22_GENS)


@pytest.fixture(scope="session")
def ideal_ex23(ring_qq3):
    return parse_ideal(ring_qq3, EX23_GENS)


@pytest.fixture(scope="session")
def ideal_thm24(ring_qq3):
    return parse_ideal(ring_qq3, THM24_GENS)


@pytest.fixture(scope="session")
def family_148():
    """The degree-28 instance, shared by construction and acceptance tests."""
    return build_linked_points(FamilyParams(1, 4, 5, 8), seed=20240801)


def random_mprimary_monomial(ring, rng, max_degree=6, extras=4):
    """Random m-primary monomial ideal with generator degrees <= max_degree."""
    n = ring.nvars
    pack = ring.order.pack
    one = ring.field.one()
    gens = []
    for i in range(n):
        e = [0] * n
        e[i] = rng.randint(1, max_degree)
        gens.append(e)
    for _ in range(rng.randint(0, extras)):
        total = rng.randint(2, max_degree)
        e = [0] * n
        for _ in range(total):
            e[rng.randrange(n)] += 1
        gens.append(e)
    from liaison import Polynomial
    polys = [Polynomial(ring, {pack(e): one}) for e in gens]
    return Ideal(polys, ring)


def seeded_rng(tag):
    return random.Random(f"liaison-tests|{tag}")
