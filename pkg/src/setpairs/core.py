"""Set pair systems, constraint profiles and the verification primitives.

Vertices are integers ``0 .. ground_set_size - 1``. Pair indices are 0-based
throughout the API; the text report renders them 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

import numpy as np
from scipy import sparse

Intersections = Optional[frozenset]  # None is the wildcard '*'

LIN = frozenset({0, 1})
INT = frozenset({1})
ONE = INT


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Hypergraph:
    ground_set_size: int
    edges: tuple

    def __post_init__(self):
        edges = tuple(frozenset(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        for e in edges:
            for v in e:
                if not 0 <= v < self.ground_set_size:
                    raise ValueError(f"vertex {v} outside ground set of size {self.ground_set_size}")

    def __len__(self):
        return len(self.edges)

    @cached_property
    def masks(self) -> tuple:
        return tuple(_mask(e) for e in self.edges)

    def incidence(self) -> sparse.csr_matrix:
        return _incidence(self.edges, self.ground_set_size)


def _incidence(sets, ground_set_size: int) -> sparse.csr_matrix:
    rows, cols = [], []
    for i, s in enumerate(sets):
        rows.extend([i] * len(s))
        cols.extend(s)
    data = np.ones(len(rows), dtype=np.int64)
    return sparse.csr_matrix((data, (rows, cols)), shape=(len(sets), ground_set_size))


@dataclass(frozen=True)
class SetPairSystem:
    """Ordered pairs ``(A_i, B_i)`` over the ground set ``range(ground_set_size)``."""

    ground_set_size: int
    pairs: tuple

    def __post_init__(self):
        pairs = tuple((frozenset(a), frozenset(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if self.ground_set_size < 0:
            raise ValueError("ground_set_size must be non-negative")
        for a, b in pairs:
            for v in a | b:
                if not 0 <= v < self.ground_set_size:
                    raise ValueError(f"vertex {v} outside ground set of size {self.ground_set_size}")

    def __len__(self):
        return len(self.pairs)

    @property
    def m(self) -> int:
        return len(self.pairs)

    @property
    def A(self) -> tuple:
        return tuple(a for a, _ in self.pairs)

    @property
    def B(self) -> tuple:
        return tuple(b for _, b in self.pairs)

    @cached_property
    def masks(self) -> tuple:
        """Pairs as ``(int bitset, int bitset)``; intersections are ``(x & y).bit_count()``."""
        return tuple((_mask(a), _mask(b)) for a, b in self.pairs)

    def a_family(self) -> Hypergraph:
        return Hypergraph(self.ground_set_size, self.A)

    def b_family(self) -> Hypergraph:
        return Hypergraph(self.ground_set_size, self.B)

    def union_family(self) -> Hypergraph:
        return Hypergraph(self.ground_set_size, self.A + self.B)

    def max_set_sizes(self) -> tuple:
        return (max((len(a) for a in self.A), default=0), max((len(b) for b in self.B), default=0))

    def used_vertices(self) -> list:
        used = set()
        for a, b in self.pairs:
            used |= a
            used |= b
        return sorted(used)

    def permuted(self, order: Iterable[int]) -> "SetPairSystem":
        return SetPairSystem(self.ground_set_size, tuple(self.pairs[i] for i in order))

    def relabeled(self, mapping: dict, ground_set_size: int) -> "SetPairSystem":
        return SetPairSystem(
            ground_set_size,
            tuple((frozenset(mapping[v] for v in a), frozenset(mapping[v] for v in b)) for a, b in self.pairs),
        )

    def shifted(self, offset: int, ground_set_size: int) -> "SetPairSystem":
        return SetPairSystem(
            ground_set_size,
            tuple((frozenset(v + offset for v in a), frozenset(v + offset for v in b)) for a, b in self.pairs),
        )

    def compact(self) -> "SetPairSystem":
        """Drop vertices lying in no set, relabeling the rest in increasing order."""
        used = self.used_vertices()
        return self.relabeled({v: i for i, v in enumerate(used)}, len(used))

    def truncated(self, count: int) -> "SetPairSystem":
        return SetPairSystem(self.ground_set_size, self.pairs[:count])

    @cached_property
    def _incidences(self):
        return _incidence(self.A, self.ground_set_size), _incidence(self.B, self.ground_set_size)

    def intersection_matrices(self):
        """Dense ``(|A_i∩A_j|, |B_i∩B_j|, |A_i∩B_j|)`` matrices, computed in one pass."""
        ia, ib = self._incidences
        aa = (ia @ ia.T).toarray()
        bb = (ib @ ib.T).toarray()
        ab = (ia @ ib.T).toarray()
        return aa, bb, ab


def _parse_intersections(token) -> Intersections:
    if token is None:
        return None
    if isinstance(token, (set, frozenset, list, tuple)):
        return frozenset(int(x) for x in token)
    if isinstance(token, int):
        return frozenset({token})
    t = str(token).strip()
    if t == "*":
        return None
    if t == "lin":
        return LIN
    if t == "int":
        return INT
    if t.startswith("{") and t.endswith("}"):
        body = t[1:-1].strip()
        return frozenset(int(x) for x in body.split(",") if x.strip()) if body else frozenset()
    return frozenset({int(t)})


def _format_intersections(s: Intersections) -> str:
    if s is None:
        return "*"
    if s == LIN:
        return "lin"
    if s == INT:
        return "1"
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def _vacuous(s: Intersections, values: range) -> bool:
    return s is None or all(v in s for v in values)


@dataclass(frozen=True)
class ConstraintProfile:
    """The conditions of ``m(a, b, I_A, I_B, I_cross)``.

    ``a``/``b`` of ``None`` mean unbounded; an intersection set of ``None`` is the
    wildcard. Non-wildcard sets are frozensets of admissible sizes.
    """

    a: Optional[int] = None
    b: Optional[int] = None
    inter_a: Intersections = None
    inter_b: Intersections = None
    inter_cross: Intersections = None

    def __post_init__(self):
        for name in ("inter_a", "inter_b", "inter_cross"):
            object.__setattr__(self, name, _parse_intersections(getattr(self, name)))
        for name in ("a", "b"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be positive or unbounded")
        if self.inter_cross is not None and 0 in self.inter_cross:
            raise ValueError("0 may not be an admissible cross intersection size")

    @classmethod
    def parse(cls, text: str) -> "ConstraintProfile":
        """Parse ``a,b,I_A,I_B,I_cross`` or the three-token form ``I_A,I_B,I_cross``.

        Tokens: integers, ``*``, ``lin``, ``int`` or a set literal such as ``{0,1}``.
        A bare integer ``k`` in an intersection slot means ``{k}``.
        """
        tokens, depth, cur = [], 0, ""
        for ch in text.strip():
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
            if ch == "," and depth == 0:
                tokens.append(cur)
                cur = ""
            else:
                cur += ch
        tokens.append(cur)
        tokens = [t.strip() for t in tokens]
        if len(tokens) == 3:
            return cls(None, None, *tokens)
        if len(tokens) != 5:
            raise ValueError(f"profile needs 3 or 5 comma-separated tokens, got {len(tokens)}: {text!r}")
        a = None if tokens[0] == "*" else int(tokens[0])
        b = None if tokens[1] == "*" else int(tokens[1])
        return cls(a, b, *tokens[2:])

    def __str__(self):
        a = "*" if self.a is None else str(self.a)
        b = "*" if self.b is None else str(self.b)
        rest = ",".join(_format_intersections(s) for s in (self.inter_a, self.inter_b, self.inter_cross))
        return f"{a},{b},{rest}"

    def with_sizes(self, a: int, b: int) -> "ConstraintProfile":
        return ConstraintProfile(a, b, self.inter_a, self.inter_b, self.inter_cross)

    def effective(self) -> "ConstraintProfile":
        """Replace constraints that are vacuous under the size bounds by the wildcard."""
        ia, ib, ic = self.inter_a, self.inter_b, self.inter_cross
        if self.a is not None and _vacuous(ia, range(self.a + 1)):
            ia = None
        if self.b is not None and _vacuous(ib, range(self.b + 1)):
            ib = None
        if self.a is not None and self.b is not None and _vacuous(ic, range(1, min(self.a, self.b) + 1)):
            ic = None
        return ConstraintProfile(self.a, self.b, ia, ib, ic)

    def swapped(self) -> "ConstraintProfile":
        return ConstraintProfile(self.b, self.a, self.inter_b, self.inter_a, self.inter_cross)

    @property
    def one_cross(self) -> bool:
        return self.inter_cross == ONE


ONE_CROSS = ConstraintProfile(None, None, None, None, ONE)
CROSS = ConstraintProfile()

CONDITIONS = (
    ("disjoint", "A_i ∩ B_i = ∅"),
    ("size_a", "|A_i| ≤ a"),
    ("size_b", "|B_i| ≤ b"),
    ("inter_a", "|A_i ∩ A_j| ∈ I_A"),
    ("inter_b", "|B_i ∩ B_j| ∈ I_B"),
    ("inter_cross", "0 < |A_i ∩ B_j| ∈ I_cross"),
)


@dataclass(frozen=True)
class ConditionResult:
    name: str
    passed: bool
    violations: int = 0
    # (i, j, size) for pairwise conditions, (i, i, size) for per-pair ones
    witness: Optional[tuple] = None


class DegreeProfile(NamedTuple):
    d_a: list
    d_b: list
    d_h: list


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    m: int
    degenerate: bool
    conditions: dict
    degrees: DegreeProfile
    a_sizes: tuple
    b_sizes: tuple
    profile: ConstraintProfile = field(default_factory=ConstraintProfile)

    def failures(self) -> list:
        return [c for c in self.conditions.values() if not c.passed]


def _offdiag_check(mat: np.ndarray, allowed: Intersections, positive: bool = False):
    m = mat.shape[0]
    bad = np.zeros_like(mat, dtype=bool)
    if allowed is not None:
        bad |= ~np.isin(mat, np.fromiter(allowed, dtype=mat.dtype, count=len(allowed)))
    if positive:
        bad |= mat <= 0
    if m:
        np.fill_diagonal(bad, False)
    hits = np.argwhere(bad)
    if len(hits) == 0:
        return 0, None
    i, j = (int(x) for x in hits[0])
    return len(hits), (i, j, int(mat[i, j]))


def _size_check(sizes, bound):
    if bound is None:
        return 0, None
    bad = [i for i, s in enumerate(sizes) if s > bound]
    if not bad:
        return 0, None
    return len(bad), (bad[0], bad[0], sizes[bad[0]])


def verify(sps: SetPairSystem, profile: ConstraintProfile) -> VerificationReport:
    """Check all six profile conditions and report every failing one with a witness."""
    m = sps.m
    a_sizes = tuple(len(a) for a in sps.A)
    b_sizes = tuple(len(b) for b in sps.B)
    if m:
        aa, bb, ab = sps.intersection_matrices()
        diag = np.diagonal(ab)
    else:
        aa = bb = ab = np.zeros((0, 0), dtype=np.int64)
        diag = np.zeros(0, dtype=np.int64)
    results = {}

    bad_diag = np.flatnonzero(diag)
    results["disjoint"] = ConditionResult(
        "disjoint",
        len(bad_diag) == 0,
        len(bad_diag),
        None if len(bad_diag) == 0 else (int(bad_diag[0]), int(bad_diag[0]), int(diag[bad_diag[0]])),
    )
    for name, sizes, bound in (("size_a", a_sizes, profile.a), ("size_b", b_sizes, profile.b)):
        n, w = _size_check(sizes, bound)
        results[name] = ConditionResult(name, n == 0, n, w)
    for name, mat, allowed, positive in (
        ("inter_a", aa, profile.inter_a, False),
        ("inter_b", bb, profile.inter_b, False),
        ("inter_cross", ab, profile.inter_cross, True),
    ):
        n, w = _offdiag_check(mat, allowed, positive)
        results[name] = ConditionResult(name, n == 0, n, w)

    degenerate = m < 2
    passed = not degenerate and all(r.passed for r in results.values())
    return VerificationReport(
        passed=passed,
        m=m,
        degenerate=degenerate,
        conditions=results,
        degrees=degree_profile(sps),
        a_sizes=a_sizes,
        b_sizes=b_sizes,
        profile=profile,
    )


def degree_profile(sps: SetPairSystem) -> DegreeProfile:
    d_a = [0] * sps.ground_set_size
    d_b = [0] * sps.ground_set_size
    for a, b in sps.pairs:
        for v in a:
            d_a[v] += 1
        for v in b:
            d_b[v] += 1
    return DegreeProfile(d_a, d_b, [x + y for x, y in zip(d_a, d_b)])


class IdentityCheck(NamedTuple):
    lhs: int
    rhs: int
    holds: bool


def cross_degree_identity(sps: SetPairSystem) -> IdentityCheck:
    """``Σ_v d_A(v)·d_B(v)`` against ``m² − m``; only defined for 1-cross systems."""
    report = verify(sps, ONE_CROSS)
    if not report.passed:
        raise ValueError("system is not 1-cross intersecting: " + describe_failures(report))
    d = degree_profile(sps)
    lhs = sum(x * y for x, y in zip(d.d_a, d.d_b))
    rhs = sps.m * sps.m - sps.m
    return IdentityCheck(lhs, rhs, lhs == rhs)


def b_side_degree_sums(sps: SetPairSystem) -> list:
    """``Σ_{v∈B_i} d_A(v)`` for every ``i`` (equals ``m − 1`` for 1-cross systems)."""
    d_a = degree_profile(sps).d_a
    return [sum(d_a[v] for v in b) for b in sps.B]


def adjacency_counts(family: Hypergraph) -> list:
    """For each edge, how many other edges meet it."""
    masks = family.masks
    return [sum(1 for j, y in enumerate(masks) if j != i and x & y) for i, x in enumerate(masks)]


def adjacency_inequality_violations(sps: SetPairSystem, n: int) -> list:
    """Pairs ``(i, j)`` breaking the adjacency-count inequalities of linear 1-cross systems.

    Disjoint ``A_i, A_j``: ``adj_i + adj_j ≤ n²``. ``A_i ∩ A_j = {v}``:
    ``adj_i + adj_j ≤ (n−1)² + d_A(v) + d_B(v)``.
    """
    adj = adjacency_counts(sps.a_family())
    deg = degree_profile(sps)
    out = []
    A = sps.A
    for i in range(sps.m):
        for j in range(i + 1, sps.m):
            common = A[i] & A[j]
            s = adj[i] + adj[j]
            if not common:
                limit = n * n
            elif len(common) == 1:
                (v,) = common
                limit = (n - 1) ** 2 + deg.d_h[v]
            else:
                continue
            if s > limit:
                out.append((i, j, s, limit))
    return out


_RANK_PRIME = 2_147_483_647


def _rank_mod_p(mat: np.ndarray, p: int = _RANK_PRIME) -> int:
    a = (mat % p).astype(np.int64)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if len(below):
            factors = a[below, c].copy()
            a[below] = (a[below] - factors[:, None] * a[r]) % p
        r += 1
    return r


def _rank_exact(rows: list) -> int:
    """Fraction-free (Bareiss) elimination over the integers."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    n_rows, n_cols = len(mat), len(mat[0])
    rank, prev = 0, 1
    for c in range(n_cols):
        piv = next((i for i in range(rank, n_rows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][c]
        for i in range(rank + 1, n_rows):
            f = mat[i][c]
            row_i, row_r = mat[i], mat[rank]
            for k in range(c, n_cols):
                row_i[k] = (row_i[k] * pv - f * row_r[k]) // prev
        prev = pv
        rank += 1
        if rank == n_rows:
            break
    return rank


def incidence_rank(family: Hypergraph) -> int:
    """Rank over the rationals of the 0/1 incidence vectors of the edges.

    A rank computed modulo a prime never exceeds the rational rank, so full
    row rank modulo the prime certifies full rational rank. Anything else is
    settled by exact integer elimination.
    """
    if not family.edges:
        return 0
    mat = family.incidence().toarray()
    mat = mat[:, mat.any(axis=0)]
    if mat.shape[1] == 0:
        return 0
    mat = np.unique(mat, axis=1)
    if mat.shape[0] > mat.shape[1]:
        mat = mat.T
    if _rank_mod_p(mat) == mat.shape[0]:
        return mat.shape[0]
    return _rank_exact(mat.tolist())


def transversal_number(family: Hypergraph, node_budget: Optional[int] = None) -> Optional[int]:
    """Minimum number of vertices meeting every edge, by exact branch and bound.

    Exponential time. Returns ``None`` when ``node_budget`` search nodes are
    exhausted before optimality is proven.
    """
    masks = list(dict.fromkeys(family.masks))
    if any(x == 0 for x in masks):
        raise ValueError("an empty edge has no transversal")
    if not masks:
        return 0

    def greedy(edges):
        count = 0
        while edges:
            counts = {}
            for e in edges:
                x = e
                while x:
                    low = x & -x
                    counts[low] = counts.get(low, 0) + 1
                    x ^= low
            best = max(counts, key=lambda b: (counts[b], -b))
            edges = [e for e in edges if not e & best]
            count += 1
        return count

    def packing_bound(edges):
        used, count = 0, 0
        for e in sorted(edges, key=lambda e: e.bit_count()):
            if not e & used:
                used |= e
                count += 1
        return count

    best = greedy(masks)
    nodes = 0
    exhausted = False

    def search(chosen, edges):
        nonlocal best, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            exhausted = True
            return
        if not edges:
            best = min(best, chosen)
            return
        if chosen + packing_bound(edges) >= best:
            return
        pivot = min(edges, key=lambda e: e.bit_count())
        degree = {}
        x = pivot
        while x:
            low = x & -x
            degree[low] = sum(1 for e in edges if e & low)
            x ^= low
        for bit in sorted(degree, key=lambda b: (-degree[b], b)):
            search(chosen + 1, [e for e in edges if not e & bit])

    search(0, masks)
    return None if exhausted else best


def pad_to_uniform(sps: SetPairSystem, a: int, b: int) -> SetPairSystem:
    """Grow every ``A_i`` to ``a`` and every ``B_i`` to ``b`` vertices with private fresh vertices."""
    nxt = sps.ground_set_size
    pairs = []
    for i, (x, y) in enumerate(sps.pairs):
        if len(x) > a or len(y) > b:
            raise ValueError(f"pair {i} already exceeds the target sizes ({len(x)}, {len(y)}) vs ({a}, {b})")
        ext_a = range(nxt, nxt + a - len(x))
        nxt += a - len(x)
        ext_b = range(nxt, nxt + b - len(y))
        nxt += b - len(y)
        pairs.append((x | frozenset(ext_a), y | frozenset(ext_b)))
    return SetPairSystem(nxt, tuple(pairs))


def describe_failures(report: VerificationReport) -> str:
    parts = []
    if report.degenerate:
        parts.append(f"degenerate size m={report.m}")
    for c in report.failures():
        parts.append(f"{c.name} ({c.violations} violations, first {c.witness})")
    return "; ".join(parts) or "ok"
