"""Set pair systems as clique / biclique edge partitions of T_2m / B_2m.

Dual vertices are integers: ``x_i`` is ``i`` and ``y_i`` is ``m + i``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .core import INT, ONE, ConstraintProfile, SetPairSystem, describe_failures, verify

BICLIQUE = "biclique_of_B2m"
CLIQUE = "clique_of_T2m"
KINDS = (BICLIQUE, CLIQUE)


def label(m: int, v: int) -> str:
    return f"x{v}" if v < m else f"y{v - m}"


def parse_label(m: int, token: str) -> int:
    side, idx = token[0], int(token[1:])
    if side not in "xy" or not 0 <= idx < m:
        raise ValueError(f"bad dual vertex {token!r} for m={m}")
    return idx if side == "x" else m + idx


@dataclass(frozen=True)
class EdgePartition:
    m: int
    kind: str
    parts: tuple
    width: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown partition kind {self.kind!r}")
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in self.parts))


def partition_width(m: int, parts) -> int:
    counts = Counter(v for p in parts for v in p)
    return max(counts.values(), default=0)


def dualize(sps: SetPairSystem, kind: str = BICLIQUE) -> EdgePartition:
    """One part per vertex of the system: ``{x_i : v ∈ A_i} ∪ {y_j : v ∈ B_j}``."""
    if kind not in KINDS:
        raise ValueError(f"unknown partition kind {kind!r}")
    n = max(sps.max_set_sizes()) if sps.m else 1
    inter = INT if kind == CLIQUE else None
    profile = ConstraintProfile(max(n, 1), max(n, 1), inter, inter, ONE)
    report = verify(sps, profile)
    if sps.m and not report.passed:
        raise ValueError(f"system fails {profile}: {describe_failures(report)}")
    m = sps.m
    member = {}
    for i, (a, b) in enumerate(sps.pairs):
        for v in a:
            member.setdefault(v, set()).add(i)
        for v in b:
            member.setdefault(v, set()).add(m + i)
    parts = tuple(frozenset(member[v]) for v in sorted(member))
    return EdgePartition(m, kind, parts, partition_width(m, parts))


def verify_partition(p: EdgePartition):
    """``(valid, violations)``; each violation is a ``(reason, detail)`` tuple."""
    m = p.m
    violations = []
    cover = Counter()
    for k, part in enumerate(p.parts):
        for v in part:
            if not 0 <= v < 2 * m:
                violations.append(("out_of_range", (k, v)))
        xs = {v for v in part if v < m}
        ys = {v - m for v in part if v >= m}
        for i in sorted(xs & ys):
            violations.append(("matching_edge", (k, i)))
        for u, v in combinations(sorted(part), 2):
            cover[(u, v)] += 1
    for i in range(m):
        for j in range(m):
            if i != j:
                e = (i, m + j) if i < m + j else (m + j, i)
                if cover[e] != 1:
                    violations.append(("cross_cover", (label(m, i), label(m, m + j), cover[e])))
    if p.kind == CLIQUE:
        for i, j in combinations(range(m), 2):
            for e in ((i, j), (m + i, m + j)):
                if cover[e] != 1:
                    violations.append(("same_side_cover", (label(m, e[0]), label(m, e[1]), cover[e])))
    width = partition_width(m, p.parts)
    if width != p.width:
        violations.append(("width", (p.width, width)))
    return not violations, violations


def undualize(p: EdgePartition) -> SetPairSystem:
    """Invert :func:`dualize`: part ``k`` becomes vertex ``k``."""
    valid, violations = verify_partition(p)
    if not valid:
        raise ValueError(f"invalid partition: {violations[:3]}")
    m = p.m
    a = [set() for _ in range(m)]
    b = [set() for _ in range(m)]
    for k, part in enumerate(p.parts):
        for v in part:
            (a[v] if v < m else b[v - m]).add(k)
    return SetPairSystem(len(p.parts), tuple(zip(a, b)))
