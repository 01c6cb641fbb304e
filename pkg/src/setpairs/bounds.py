"""Upper bounds and exactly known values of ``m(a, b, I_A, I_B, I_cross)``."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .core import INT, ConstraintProfile

EXACT = "exact"
UPPER = "upper_bound"

BOLLOBAS = "bollobas"
GRAPH_SIDE = "graph-side star bound"
LINEAR_SIDE = "linear-side degree bound"
LINEAR_BOTH = "linear-both-sides bound (proof yields m <= n^2/2+n+3/2, strict)"
INTERSECTING_BOTH = "intersecting-both-sides bound"


@dataclass(frozen=True)
class BoundResult:
    value: Optional[int]  # None means unknown
    kind: str
    source: str


def bollobas_bound(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    return comb(a + b, a)


def star_product_size(n: int) -> int:
    return (n // 2 + 1) * ((n + 1) // 2 + 1)


_GRAPH_SIDE_SMALL = {2: 5, 3: 7}
_INTERSECTING_SMALL = {2: 3, 3: 4, 4: 7, 5: 10}


def known_values() -> list:
    """Static table ``(shape, n, value, source)``.

    ``(2,n,*,*,1)`` rows are listed for ``n <= 12``; the closed form continues
    beyond. ``(a,b,*,*,*)`` is the Bollobás value for every ``a, b`` and is
    listed here for ``a, b <= 4``.
    """
    rows = []
    for n, v in _GRAPH_SIDE_SMALL.items():
        rows.append(("2,n,*,*,1", n, v, GRAPH_SIDE))
    for n in range(4, 13):
        rows.append(("2,n,*,*,1", n, star_product_size(n), GRAPH_SIDE))
    for n, v in _INTERSECTING_SMALL.items():
        rows.append(("n,n,int,int,1", n, v, INTERSECTING_BOTH))
    for a in range(1, 5):
        for b in range(1, 5):
            rows.append((f"{a},{b},*,*,*", None, comb(a + b, a), BOLLOBAS))
    return rows


def _subset(s, target) -> bool:
    """``s`` is at least as restrictive as ``target`` (``None`` is the wildcard)."""
    if target is None:
        return True
    return s is not None and s <= target


def _exact(p: ConstraintProfile) -> Optional[BoundResult]:
    a, b = p.a, p.b
    free = p.inter_a is None and p.inter_b is None
    if free and p.inter_cross is None:
        return BoundResult(comb(a + b, a), EXACT, BOLLOBAS)
    if free and p.inter_cross == INT and a == 2:
        if b in _GRAPH_SIDE_SMALL:
            return BoundResult(_GRAPH_SIDE_SMALL[b], EXACT, GRAPH_SIDE)
        if b >= 4:
            return BoundResult(star_product_size(b), EXACT, GRAPH_SIDE)
    if a == b and p.inter_a == INT and p.inter_b == INT and p.inter_cross == INT and a in _INTERSECTING_SMALL:
        return BoundResult(_INTERSECTING_SMALL[a], EXACT, INTERSECTING_BOTH)
    return None


def _shape_bounds(p: ConstraintProfile) -> list:
    a, b = p.a, p.b
    n = max(a, b)
    out = []
    one = _subset(p.inter_cross, INT)
    if one and a == 2 and b >= 2:
        out.append(BoundResult(max(2 * b + 1, star_product_size(b)), UPPER, GRAPH_SIDE))
    if _subset(p.inter_a, frozenset({0, 1})):
        out.append(BoundResult(b * b + b + 1, UPPER, LINEAR_SIDE))
    if _subset(p.inter_b, frozenset({0, 1})):
        out.append(BoundResult(a * a + a + 1, UPPER, LINEAR_SIDE))
    if one and _subset(p.inter_a, frozenset({0, 1})) and _subset(p.inter_b, frozenset({0, 1})):
        # floor(n²/2 + n + 1)
        out.append(BoundResult(n * n // 2 + n + 1, UPPER, LINEAR_BOTH))
    if one and _subset(p.inter_a, INT) and _subset(p.inter_b, INT) and n > 2:
        out.append(BoundResult(comb(n, 2) + 1, UPPER, INTERSECTING_BOTH))
    return out


def upper_bound(profile: ConstraintProfile, n: Optional[int] = None) -> BoundResult:
    """Tightest applicable bound on the profile's maximum size.

    Unbounded ``a``/``b`` in ``profile`` take the value ``n``. Exact table values
    win; otherwise the minimum over shape-specific bounds and the Bollobás
    bound, ties going to the shape-specific source.
    """
    a = profile.a if profile.a is not None else n
    b = profile.b if profile.b is not None else n
    if a is None or b is None:
        return BoundResult(None, UPPER, "unknown")
    if a < 1 or b < 1:
        raise ValueError("set size bounds must be positive")
    p = profile.with_sizes(a, b).effective()
    if p.a > p.b:
        p = p.swapped()
    exact = _exact(p)
    if exact is not None:
        return exact
    best = BoundResult(comb(p.a + p.b, p.a), UPPER, BOLLOBAS)
    for r in _shape_bounds(p):
        if r.value <= best.value:
            best = r
    # an (a, b) system is also a (b, b) system
    square = _exact(p.with_sizes(p.b, p.b).effective()) if p.a < p.b else None
    if square is not None and square.value < best.value:
        best = BoundResult(square.value, UPPER, square.source)
    return best
