"""Small finite fields, affine planes AG(2,q) and prime selection."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

MAX_ORDER = 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int):
    """``(p, k)`` with ``q = p**k``, or ``None``."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


def prime_below(n: int, odd_only: bool = False) -> int:
    """Largest prime (odd if requested) not exceeding ``n``."""
    lowest = 3 if odd_only else 2
    for c in range(n, lowest - 1, -1):
        if is_prime(c) and (c % 2 or not odd_only):
            return c
    raise ValueError(f"no {'odd ' if odd_only else ''}prime <= {n}")


def odd_primes_upto(n: int) -> list:
    return [c for c in range(3, n + 1, 2) if is_prime(c)]


def _poly_mod(num: list, den: list, p: int) -> list:
    """Remainder of ``num / den`` over GF(p); coefficient lists are low-degree first, ``den`` monic."""
    num = num[:]
    d = len(den) - 1
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            for j in range(d + 1):
                num[i - d + j] = (num[i - d + j] - c * den[j]) % p
    return num[:d]


def _irreducible(p: int, k: int) -> list:
    """Smallest monic irreducible polynomial of degree ``k`` over GF(p).

    Candidates are ordered by their coefficient tuple read as a base-``p``
    number, so GF(4) gets ``x² + x + 1``.
    """
    for tail in product(range(p), repeat=k):
        poly = list(reversed(tail)) + [1]
        if poly[0] == 0:
            continue
        if all(_has_no_factor(poly, p, deg) for deg in range(1, k // 2 + 1)):
            return poly
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


def _has_no_factor(poly: list, p: int, deg: int) -> bool:
    for tail in product(range(p), repeat=deg):
        f = list(reversed(tail)) + [1]
        if not any(_poly_mod(poly, f, p)):
            return False
    return True


@dataclass(frozen=True)
class FiniteField:
    """GF(q) with elements ``0..q-1``; prime powers encode polynomials in base ``p``."""

    q: int
    p: int
    k: int
    add: tuple
    mul: tuple
    modulus: tuple  # defining polynomial, low-degree first; (0, 1) for prime q

    def neg(self, x: int) -> int:
        return self.add[x].index(0)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.mul[x].index(1)

    @property
    def elements(self) -> range:
        return range(self.q)


@lru_cache(maxsize=None)
def field_make(q: int) -> FiniteField:
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    if q > MAX_ORDER:
        raise ValueError(f"field order {q} exceeds supported maximum {MAX_ORDER}")
    p, k = pk
    if k == 1:
        add = tuple(tuple((x + y) % p for y in range(p)) for x in range(p))
        mul = tuple(tuple((x * y) % p for y in range(p)) for x in range(p))
        return FiniteField(q, p, 1, add, mul, (0, 1))

    modulus = _irreducible(p, k)

    def digits(x):
        return [(x // p**i) % p for i in range(k)]

    def number(ds):
        return sum(d * p**i for i, d in enumerate(ds))

    add = tuple(
        tuple(number([(u + v) % p for u, v in zip(digits(x), digits(y))]) for y in range(q)) for x in range(q)
    )

    def poly_mul(x, y):
        dx, dy = digits(x), digits(y)
        prod = [0] * (2 * k - 1)
        for i, u in enumerate(dx):
            if u:
                for j, v in enumerate(dy):
                    prod[i + j] = (prod[i + j] + u * v) % p
        return number(_poly_mod(prod, modulus, p))

    mul = tuple(tuple(poly_mul(x, y) for y in range(q)) for x in range(q))
    return FiniteField(q, p, k, add, mul, tuple(modulus))


@dataclass(frozen=True)
class AffinePlane:
    """AG(2,q). Point ``x*q + y`` is ``(x, y)``.

    ``parallel_classes[s]`` for ``s < q`` holds the lines ``y = s·x + c`` ordered by
    intercept ``c``; ``parallel_classes[q]`` holds the verticals ``x = c``.
    """

    q: int
    field: FiniteField
    parallel_classes: tuple

    @property
    def points(self) -> range:
        return range(self.q * self.q)

    def coordinates(self, point: int) -> tuple:
        return divmod(point, self.q)

    def lines(self) -> list:
        return [line for cls in self.parallel_classes for line in cls]


@lru_cache(maxsize=None)
def affine_plane(q: int) -> AffinePlane:
    F = field_make(q)
    classes = []
    for s in range(q):
        cls = []
        for c in range(q):
            cls.append(frozenset(x * q + F.add[F.mul[s][x]][c] for x in range(q)))
        classes.append(tuple(cls))
    classes.append(tuple(frozenset(c * q + y for y in range(q)) for c in range(q)))
    return AffinePlane(q, F, tuple(classes))
