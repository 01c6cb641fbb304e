"""Generators for cross intersecting set pair systems.

Every public generator returning a :class:`ConstructionRecord` verifies the
system against its declared profile before handing it out.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Iterable

from .core import (
    CROSS,
    INT,
    LIN,
    ONE,
    ONE_CROSS,
    ConstraintProfile,
    SetPairSystem,
    describe_failures,
    verify,
)
from .geometry import AffinePlane, affine_plane, odd_primes_upto, prime_power

DEFAULT_SIZE_BUDGET = 1_000_000


class ConstructionError(ValueError):
    pass


class BudgetExceeded(ConstructionError):
    pass


class VerificationFailed(ConstructionError):
    """A generator produced a system that fails its own declared profile."""


@dataclass(frozen=True)
class ConstructionRecord:
    system: SetPairSystem
    declared_profile: ConstraintProfile
    declared_size: int
    citation: str
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.system.m != self.declared_size:
            raise ConstructionError(f"size {self.system.m} does not match declared {self.declared_size}")
        report = verify(self.system, self.declared_profile)
        if not report.passed:
            raise VerificationFailed(
                f"{self.citation}: fails {self.declared_profile}: {describe_failures(report)}"
            )

    @property
    def m(self) -> int:
        return self.system.m


class ExtensionMode(Enum):
    I = "I"
    II = "II"
    III = "III"

    def pairs_per_direction(self, q: int) -> int:
        if self is ExtensionMode.I:
            return q
        if self is ExtensionMode.II:
            return q - 1
        return (q - 1) // 2


def standard_example(a: int, b: int, size_budget: int = DEFAULT_SIZE_BUDGET) -> ConstructionRecord:
    """All ``a``-subsets of ``{0..a+b-1}`` in lexicographic order, each with its complement."""
    if a < 1 or b < 1:
        raise ConstructionError("a and b must be positive")
    size = comb(a + b, a)
    if size > size_budget:
        raise BudgetExceeded(f"standard example ({a},{b}) has {size} pairs, budget {size_budget}")
    ground = frozenset(range(a + b))
    pairs = tuple((frozenset(s), ground - frozenset(s)) for s in combinations(range(a + b), a))
    return ConstructionRecord(
        SetPairSystem(a + b, pairs),
        ConstraintProfile(a, b),
        size,
        "standard example",
        {"a": a, "b": b},
    )


def cyclic_family(base_a: Iterable[int], base_b: Iterable[int], modulus: int, count: int,
                  stride: int = 1) -> SetPairSystem:
    """Pairs ``(base_a + stride·i, base_b + stride·i) mod modulus`` for ``i < count``."""
    base_a = frozenset(x % modulus for x in base_a)
    base_b = frozenset(x % modulus for x in base_b)
    if base_a & base_b:
        raise ConstructionError(f"base sets overlap in {sorted(base_a & base_b)}")
    if count > modulus:
        raise ConstructionError("count may not exceed the modulus")
    pairs = []
    for i in range(count):
        t = stride * i
        pairs.append((frozenset((x + t) % modulus for x in base_a), frozenset((x + t) % modulus for x in base_b)))
    return SetPairSystem(modulus, tuple(pairs))


def product(s1: SetPairSystem, s2: SetPairSystem, one_cross: bool = True) -> SetPairSystem:
    """Glue a fresh copy of ``s1`` onto every pair of ``s2``.

    Copy ``i`` of ``s1`` occupies vertices ``[i·n1, (i+1)·n1)`` and ``s2`` sits
    after all copies. Output pair ``i·|s1| + j`` is ``(A_{i,j} ∪ A_i, B_{i,j} ∪ B_i)``.
    """
    claimed = ONE_CROSS if one_cross else CROSS
    for name, s in (("left", s1), ("right", s2)):
        report = verify(s, claimed)
        if not report.passed:
            raise ConstructionError(f"{name} factor fails {claimed}: {describe_failures(report)}")
    n1, t = s1.ground_set_size, s2.m
    offset = t * n1
    pairs = []
    for i, (a2, b2) in enumerate(s2.pairs):
        a2 = frozenset(v + offset for v in a2)
        b2 = frozenset(v + offset for v in b2)
        base = i * n1
        for a1, b1 in s1.pairs:
            pairs.append((frozenset(v + base for v in a1) | a2, frozenset(v + base for v in b1) | b2))
    return SetPairSystem(offset + s2.ground_set_size, tuple(pairs))


# catalog ------------------------------------------------------------------


def _w22() -> SetPairSystem:
    return cyclic_family({0, 1}, {2, 4}, 5, 5)


def _w23() -> SetPairSystem:
    return cyclic_family({0, 1}, {2, 4, 6}, 7, 7)


def _catalog_entries():
    return {
        "w22": (_w22, ConstraintProfile(2, 2, None, None, ONE), "W(2,2): ({i,i+1},{i+2,i+4}) mod 5"),
        "w23": (_w23, ConstraintProfile(2, 3, None, None, ONE), "W(2,3): ({i,i+1},{i+2,i+4,i+6}) mod 7"),
        "mod10_33": (
            lambda: cyclic_family({0, 1, 2}, {3, 6, 9}, 10, 10),
            ConstraintProfile(3, 3, None, None, ONE),
            "({i,i+1,i+2},{i+3,i+6,i+9}) mod 10",
        ),
        "mod8_n3": (
            lambda: cyclic_family({0, 1, 3}, {4, 5, 7}, 8, 4),
            ConstraintProfile(3, 3, INT, INT, ONE),
            "({i,i+1,i+3},{i+4,i+5,i+7}) mod 8, four shifts",
        ),
        "pg23_diff_n4": (
            lambda: cyclic_family({1, 2, 5, 7}, {8, 9, 12, 14}, 14, 7),
            ConstraintProfile(4, 4, INT, INT, ONE),
            "difference set {1,2,5,7} read mod 14, B_i = A_i + 7",
        ),
        # B-side intersections reach 2 for this system, so only A is linear.
        "mod14_lin3": (
            lambda: cyclic_family({0, 1, 2}, {4, 8, 12}, 14, 7, stride=2),
            ConstraintProfile(3, 3, LIN, None, ONE),
            "({2i,2i+1,2i+2},{2i+4,2i+8,2i+12}) mod 14",
        ),
    }


CATALOG_NAMES = ("w22", "w23", "mod10_33", "mod8_n3", "pg23_diff_n4", "mod14_lin3", "ag24_plus10")


def catalog(name: str) -> ConstructionRecord:
    if name == "ag24_plus10":
        return ag24_plus10()
    entries = _catalog_entries()
    if name not in entries:
        raise ConstructionError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG_NAMES)}")
    build, profile, citation = entries[name]
    system = build()
    return ConstructionRecord(system, profile, system.m, citation, {"name": name})


# iterated products ----------------------------------------------------------


def w22_power(n: int, size_budget: int = DEFAULT_SIZE_BUDGET) -> ConstructionRecord:
    """Product of ``n // 2`` copies of W(2,2), times the (1,1) standard example for odd ``n``."""
    if n < 1:
        raise ConstructionError("n must be positive")
    size = 5 ** (n // 2) * (2 if n % 2 else 1)
    if size > size_budget:
        raise BudgetExceeded(f"W(2,2) power for n={n} has {size} pairs, budget {size_budget}")
    system = None
    for _ in range(n // 2):
        system = _w22() if system is None else product(system, _w22())
    if n % 2:
        unit = standard_example(1, 1).system
        system = unit if system is None else product(system, unit)
    return ConstructionRecord(system, ConstraintProfile(n, n, None, None, ONE), size,
                              "iterated product of W(2,2)", {"n": n})


def star_extremal_2n(n: int) -> ConstructionRecord:
    """Product of the standard examples ``(1, ceil(n/2))`` and ``(1, floor(n/2))``."""
    if n < 4:
        raise ConstructionError("n must be at least 4; use catalog entries w22 / w23 below that")
    hi, lo = (n + 1) // 2, n // 2
    system = product(standard_example(1, hi).system, standard_example(1, lo).system)
    return ConstructionRecord(system, ConstraintProfile(2, n, None, None, ONE), (hi + 1) * (lo + 1),
                              "product of stars", {"n": n})


def double_star(s: int) -> ConstructionRecord:
    """Hubs ``w_a``, ``w_b`` plus private vertices ``v_{i,j}`` (``i != j``).

    ``v_{i,j}`` is vertex ``i·(s−1) + (j if j < i else j−1)``; ``w_a = s(s−1)``,
    ``w_b = s(s−1)+1``. ``A_i = {w_a} ∪ {v_{i,j}}``, ``B_i = {w_b} ∪ {v_{j,i}}``.
    """
    if s < 2:
        raise ConstructionError("double star needs s >= 2")

    def v(i, j):
        return i * (s - 1) + (j if j < i else j - 1)

    wa, wb = s * (s - 1), s * (s - 1) + 1
    pairs = tuple(
        (
            frozenset([wa] + [v(i, j) for j in range(s) if j != i]),
            frozenset([wb] + [v(j, i) for j in range(s) if j != i]),
        )
        for i in range(s)
    )
    return ConstructionRecord(SetPairSystem(s * (s - 1) + 2, pairs), ConstraintProfile(s, s, INT, INT, ONE), s,
                              "double star", {"s": s})


# affine plane extensions -----------------------------------------------------


def _line_pairs(cls: tuple, mode: ExtensionMode) -> list:
    q = len(cls)
    if mode is ExtensionMode.I:
        return [(cls[i], cls[(i - 1) % q]) for i in range(q)]
    if mode is ExtensionMode.II:
        return [(cls[i], cls[q - 1]) for i in range(q - 1)]
    h = (q - 1) // 2
    return [(cls[i], cls[i + h]) for i in range(h)]


def extend_plane(plane: AffinePlane, mode: ExtensionMode,
                 inner_supplier: Callable[[int], SetPairSystem]) -> SetPairSystem:
    """Parallel line pairs of every direction, each glued to an inner system.

    ``inner_supplier(direction)`` returns a system in its own labels; it is
    truncated to the pairs needed and relocated onto vertices after the plane
    and all earlier inner copies, so the copies are pairwise disjoint.
    Mode I pairs ``A'_i`` with ``A'_{i-1}`` cyclically, mode II pairs the first
    ``q−1`` lines with the last, mode III pairs line ``i`` with ``i+h`` for
    ``i < h = (q−1)/2``.
    """
    q = plane.q
    if mode is ExtensionMode.III and q % 2 == 0:
        raise ConstructionError("Extension III needs odd q")
    need = mode.pairs_per_direction(q)
    offset = q * q
    copies = []
    for delta, cls in enumerate(plane.parallel_classes):
        inner = inner_supplier(delta)
        if isinstance(inner, ConstructionRecord):
            inner = inner.system
        if inner.m < need:
            raise ConstructionError(f"inner system for direction {delta} has {inner.m} pairs, need {need}")
        copies.append((cls, inner.truncated(need), offset))
        offset += inner.ground_set_size
    pairs = []
    for cls, inner, base in copies:
        for (la, lb), (ia, ib) in zip(_line_pairs(cls, mode), inner.pairs):
            pairs.append((la | frozenset(v + base for v in ia), lb | frozenset(v + base for v in ib)))
    return SetPairSystem(offset, tuple(pairs))


def _c_family_shape(kind: int, q: int):
    """``(mode, inner size, pair count, set size, profile)`` for the extension families."""
    if kind == 1:
        return ExtensionMode.I, q, q * q + q, 2 * q, ConstraintProfile(2 * q, 2 * q, INT, INT, None)
    if kind == 2:
        return ExtensionMode.II, q - 1, q * q - 1, 2 * q - 1, ConstraintProfile(2 * q - 1, 2 * q - 1, INT, None, ONE)
    if kind == 3:
        r = 3 * q // 2
        return ExtensionMode.III, (q - 1) // 2, (q * q - 1) // 2, r, ConstraintProfile(r, r, INT, INT, ONE)
    raise ConstructionError(f"kind must be 1, 2 or 3, got {kind}")


def c_family(kind: int, q: int) -> ConstructionRecord:
    """AG(2,q) extended by double stars (Extension I, II or III by ``kind``)."""
    if prime_power(q) is None:
        raise ConstructionError(f"{q} is not a prime power")
    mode, inner_size, size, _, profile = _c_family_shape(kind, q)
    if kind == 3 and q % 2 == 0:
        raise ConstructionError("kind 3 needs odd q")
    if inner_size < 2:
        raise ConstructionError(f"kind {kind} needs a larger q (inner double star of size {inner_size})")
    inner = double_star(inner_size).system
    system = extend_plane(affine_plane(q), mode, lambda _delta: inner)
    return ConstructionRecord(system, profile, size, f"extension {mode.value} of AG(2,{q}) by double stars",
                              {"kind": kind, "q": q})


def _final_feasible(kind: int, q: int, p: int, n: int) -> bool:
    if kind == 1:
        return p * p + p >= q and q + 2 * p <= n
    if kind == 2:
        return p * p - 1 >= q and q + 2 * p - 1 <= n
    return p >= 5 and (p * p - 1) // 2 >= (q - 1) // 2 and q + 3 * p // 2 <= n


def choose_final_primes(kind: int, n: int):
    """Largest odd prime ``q``, then smallest odd prime ``p``, meeting the feasibility system."""
    if kind not in (1, 2, 3):
        raise ConstructionError(f"kind must be 1, 2 or 3, got {kind}")
    primes = odd_primes_upto(n)
    for q in reversed(primes):
        for p in primes:
            if _final_feasible(kind, q, p, n):
                return q, p
            if (kind == 1 and q + 2 * p > n) or (kind == 2 and q + 2 * p - 1 > n) or (
                    kind == 3 and q + 3 * p // 2 > n):
                break
    raise ConstructionError(f"no feasible prime pair for kind {kind} at n={n}")


@lru_cache(maxsize=32)
def _final_system(kind: int, q: int, p: int) -> SetPairSystem:
    # depends on n only through (q, p), so sweeps over n reuse it
    mode = _c_family_shape(kind, q)[0]
    inner = c_family(kind, p).system
    return extend_plane(affine_plane(q), mode, lambda _delta: inner)


def final_construction(kind: int, n: int) -> ConstructionRecord:
    """AG(2,q) extended by truncated copies of ``c_family(kind, p)``.

    Sizes: ``q(q+1)``, ``q²−1`` and ``(q²−1)/2`` for kinds 1, 2, 3.
    """
    q, p = choose_final_primes(kind, n)
    mode = _c_family_shape(kind, q)[0]
    system = _final_system(kind, q, p)
    size = (q + 1) * mode.pairs_per_direction(q)
    profile = {
        1: ConstraintProfile(n, n, INT, INT, None),
        2: ConstraintProfile(n, n, INT, None, ONE),
        3: ConstraintProfile(n, n, INT, INT, ONE),
    }[kind]
    return ConstructionRecord(system, profile, size, f"extension {mode.value} of AG(2,{q}) by C{kind}({p})",
                              {"kind": kind, "n": n, "q": q, "p": p})


def ag24_plus10_system() -> SetPairSystem:
    """AG(2,4) with ten new points ``w_0..w_9`` (vertices 16..25).

    In class ``k`` lines 0/1 and 2/3 form the pairs ``2k`` and ``2k+1``;
    ``w_{2k}`` joins ``A_{2k}`` and ``B_{2k+1}``, ``w_{2k+1}`` joins ``A_{2k+1}`` and ``B_{2k}``.
    """
    plane = affine_plane(4)
    pairs = []
    for k, cls in enumerate(plane.parallel_classes):
        w0, w1 = 16 + 2 * k, 17 + 2 * k
        pairs.append((cls[0] | {w0}, cls[1] | {w1}))
        pairs.append((cls[2] | {w1}, cls[3] | {w0}))
    return SetPairSystem(26, tuple(pairs))


def ag24_plus10() -> ConstructionRecord:
    # The two A-sets drawn from one parallel class are disjoint, so A is
    # linear but not 1-intersecting.
    return ConstructionRecord(ag24_plus10_system(), ConstraintProfile(5, 5, LIN, LIN, ONE), 10,
                              "AG(2,4) plus ten points", {"name": "ag24_plus10"})


__all__ = [
    "BudgetExceeded",
    "CATALOG_NAMES",
    "ConstructionError",
    "ConstructionRecord",
    "ExtensionMode",
    "VerificationFailed",
    "ag24_plus10",
    "ag24_plus10_system",
    "c_family",
    "catalog",
    "choose_final_primes",
    "cyclic_family",
    "double_star",
    "extend_plane",
    "final_construction",
    "product",
    "standard_example",
    "star_extremal_2n",
    "w22_power",
]
