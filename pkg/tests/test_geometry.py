from itertools import combinations

import pytest

from setpairs.geometry import (
    MAX_ORDER,
    affine_plane,
    field_make,
    is_prime,
    odd_primes_upto,
    prime_below,
    prime_power,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]


def test_primes():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert odd_primes_upto(20) == [3, 5, 7, 11, 13, 17, 19]
    assert prime_below(20) == 19 and prime_below(19) == 19
    assert prime_below(20, odd_only=True) == 19
    assert [prime_power(q) for q in (8, 9, 12, 1, 49)] == [(2, 3), (3, 2), None, None, (7, 2)]


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms(q):
    F = field_make(q)
    E = range(q)
    add, mul = F.add, F.mul
    for x in E:
        assert add[x][0] == x and mul[x][1] == x and mul[x][0] == 0
        assert add[x][F.neg(x)] == 0
        if x:
            assert mul[x][F.inv(x)] == 1
        for y in E:
            assert add[x][y] == add[y][x] and mul[x][y] == mul[y][x]
            for z in E:
                assert add[add[x][y]][z] == add[x][add[y][z]]
                assert mul[mul[x][y]][z] == mul[x][mul[y][z]]
                assert mul[x][add[y][z]] == add[mul[x][y]][mul[x][z]]
    # characteristic p: adding 1 p times gives 0
    acc = 0
    for _ in range(F.p):
        acc = add[acc][1]
    assert acc == 0


def test_small_field_modulus():
    assert field_make(4).modulus == (1, 1, 1)
    assert field_make(8).modulus == (1, 1, 0, 1)
    assert field_make(9).modulus == (1, 0, 1)


def test_field_errors():
    with pytest.raises(ValueError):
        field_make(6)
    with pytest.raises(ValueError):
        field_make(MAX_ORDER + 17)
    with pytest.raises(ZeroDivisionError):
        field_make(5).inv(0)


@pytest.mark.parametrize("q", ORDERS)
def test_affine_plane_axioms(q):
    plane = affine_plane(q)
    assert len(plane.parallel_classes) == q + 1
    lines = plane.lines()
    assert len(lines) == q * q + q
    for cls in plane.parallel_classes:
        assert len(cls) == q
        assert frozenset().union(*cls) == frozenset(plane.points)
        assert all(len(line) == q for line in cls)
    through = {}
    for k, line in enumerate(lines):
        for u, v in combinations(sorted(line), 2):
            assert (u, v) not in through
            through[(u, v)] = k
    assert len(through) == q * q * (q * q - 1) // 2
    for l1, l2 in combinations(lines, 2):
        assert len(l1 & l2) <= 1


def test_plane_labels():
    plane = affine_plane(3)
    assert plane.coordinates(5) == (1, 2)
    # class s holds y = s·x + c ordered by c; class q is vertical
    assert plane.parallel_classes[1][0] == frozenset({0, 4, 8})
    assert plane.parallel_classes[3][2] == frozenset({6, 7, 8})
