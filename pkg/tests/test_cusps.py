from itertools import product
from math import gcd

import pytest

from modunits.arith import divisors, euler_phi, exact_order_count
from modunits.cusps import UsageError, all_orbits, orbit


def brute_orbit_size(N, c):
    # order-N points (x, y) of (Z/N)^2 whose first coordinate is +-c, modulo +-1
    pts = {(x, y) for x, y in product(range(N), repeat=2)
           if gcd(gcd(x, y), N) == 1 and x in (c % N, -c % N)}
    classes = {min(p, ((-p[0]) % N, (-p[1]) % N)) for p in pts}
    return len(classes)


@pytest.mark.parametrize("N", range(3, 41))
def test_orbit_sizes_match_brute_force(N):
    for o in all_orbits(N):
        assert o.n == brute_orbit_size(N, o.c), o


@pytest.mark.parametrize("N", range(3, 200))
def test_sizes_sum_to_degree_of_j(N):
    assert sum(o.n for o in all_orbits(N)) * 2 == exact_order_count(N)


@pytest.mark.parametrize("N", range(5, 200))
def test_cusp_count(N):
    want = sum(euler_phi(d) * euler_phi(N // d) for d in divisors(N))
    assert 2 * sum(o.f for o in all_orbits(N)) == want


def test_width_and_ramification():
    o = orbit(12, 4)
    assert (o.width, o.e, o.n, o.f) == (3, 3, 6, 2)
    assert all(o.e == o.width and not o.irregular for N in range(3, 60)
               for o in all_orbits(N) if (N, o.c) != (4, 2))


def test_irregular_cusp():
    o = orbit(4, 2)
    assert o.irregular and o.width == 2 and o.e == 1
    assert sum(p.irregular for N in range(2, 80) for p in all_orbits(N)) == 1


def test_level_two():
    assert [(o.c, o.n) for o in all_orbits(2)] == [(0, 1), (1, 2)]


@pytest.mark.parametrize("N, c", [(1, 0), (7, 4), (7, -1)])
def test_bad_labels(N, c):
    with pytest.raises(UsageError):
        orbit(N, c)
