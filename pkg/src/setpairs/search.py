"""Exact search for set pair systems of a given size under a constraint profile.

The system is a 0/1/2 matrix: one row per pair, one column per vertex, entry
1 for ``v ∈ A_i`` and 2 for ``v ∈ B_i``. Rows are placed top to bottom and both
rows and columns are kept lexicographically non-increasing. Any matrix can be
brought into that form by permuting rows and columns, so the restriction loses
no solutions. Columns that agree on every placed row form a block, and a new
row is fully described by how many 2s and 1s it puts in each block.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .bounds import bollobas_bound, upper_bound
from .core import ConstraintProfile, SetPairSystem, verify

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"

PRUNES = frozenset({"degree", "bollobas", "cover"})


@dataclass(frozen=True)
class SearchLimits:
    max_vertices: Optional[int] = None  # None: the sound cap for the query
    node_budget: int = 2_000_000
    time_budget: float = 120.0

    def __post_init__(self):
        if self.max_vertices is not None and self.max_vertices < 1:
            raise ValueError("max_vertices must be positive")
        if self.node_budget < 1 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")


@dataclass(frozen=True)
class SearchOutcome:
    status: str
    witness: Optional[SetPairSystem]
    nodes_explored: int
    elapsed: float
    reason: str = ""


@dataclass(frozen=True)
class MaximizeResult:
    best_m: int
    witness: Optional[SetPairSystem]
    proven_optimal: bool
    outcomes: list = field(default_factory=list)


class _Exhausted(Exception):
    pass


def vertex_cap(profile: ConstraintProfile, m: int) -> int:
    """Vertices that always suffice for a size-``m`` system, if one exists.

    With ``I_B`` a wildcard every ``B_i`` can be cut down to ``∪A``, so ``a·m``
    vertices suffice; symmetrically ``b·m`` when ``I_A`` is a wildcard.
    """
    p = profile.effective()
    caps = [(p.a + p.b) * m]
    if p.inter_b is None:
        caps.append(p.a * m)
    if p.inter_a is None:
        caps.append(p.b * m)
    return min(caps)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Search:
    def __init__(self, profile: ConstraintProfile, m: int, columns: int, limits: SearchLimits, prunes):
        p = profile.effective()
        self.a, self.b, self.m, self.V = p.a, p.b, m, columns
        self.ia, self.ib, self.ic = p.inter_a, p.inter_b, p.inter_cross
        self.max_aa = None if self.ia is None else max(self.ia, default=-1)
        self.max_bb = None if self.ib is None else max(self.ib, default=-1)
        self.max_ab = None if self.ic is None else max(self.ic, default=-1)
        self.deg_a = self.b + 1 if "degree" in prunes and self.ia is not None and self.ia <= {0, 1} else None
        self.deg_b = self.a + 1 if "degree" in prunes and self.ib is not None and self.ib <= {0, 1} else None
        self.need_a = "cover" in prunes and self.ib is None
        self.need_b = "cover" in prunes and self.ia is None
        self.limits = limits
        self.nodes = 0
        self.steps = 0
        self.deadline = time.monotonic() + limits.time_budget
        self.rows = []

    # blocks are (size, amask, bmask): amask/bmask are the rows whose A/B contain the columns
    def run(self) -> Optional[list]:
        blocks = [(self.V, 0, 0)]
        return self._place(blocks)

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.limits.node_budget or (self.nodes & 1023 == 0 and time.monotonic() > self.deadline):
            raise _Exhausted

    def _step(self):
        # row enumeration inside one node can be long, so the clock is checked here too
        self.steps += 1
        if self.steps & 4095 == 0 and time.monotonic() > self.deadline:
            raise _Exhausted

    def _place(self, blocks):
        k = len(self.rows)
        if k == self.m:
            return list(self.rows)
        self._tick()
        for choice in self._rows(blocks, k):
            new_blocks = []
            for (size, am, bm), (n2, n1) in zip(blocks, choice):
                if n2:
                    new_blocks.append((n2, am, bm | 1 << k))
                if n1:
                    new_blocks.append((n1, am | 1 << k, bm))
                if size - n2 - n1:
                    new_blocks.append((size - n2 - n1, am, bm))
            if not self._cover_ok(new_blocks, k):
                continue
            self.rows.append(choice)
            found = self._place(new_blocks)
            if found is not None:
                return found
            self.rows.pop()
        return None

    def _cover_ok(self, blocks, k) -> bool:
        remaining = self.m - k - 1
        if self.need_a:
            missing = sum(s for s, am, bm in blocks if bm and not am)
            if missing > remaining * self.a:
                return False
        if self.need_b:
            missing = sum(s for s, am, bm in blocks if am and not bm)
            if missing > remaining * self.b:
                return False
        return True

    def _rows(self, blocks, k):
        """Candidate rows as per-block ``(n2, n1)`` tuples, lexicographically largest first."""
        nb = len(blocks)
        # entry of the previous row in each block (blocks split after every row, so it is constant)
        prev_entry = None
        if k:
            prev_entry = [2 if bm >> (k - 1) & 1 else 1 if am >> (k - 1) & 1 else 0 for _, am, bm in blocks]
        aa = [0] * k
        bb = [0] * k
        ab = [0] * k  # |A_new ∩ B_j|
        ba = [0] * k  # |B_new ∩ A_j|
        choice = []
        a, b = self.a, self.b
        max_aa, max_bb, max_ab = self.max_aa, self.max_bb, self.max_ab
        deg_a, deg_b = self.deg_a, self.deg_b

        # rows j still needing a cross hit, per side, given what remains
        def feasible_tail(i, used_a, used_b):
            # every earlier B_j must still be hit by A_new and every A_j by B_new
            for j in range(k):
                if ab[j] == 0 and used_a >= a:
                    return False
                if ba[j] == 0 and used_b >= b:
                    return False
            return True

        def rec(i, used_a, used_b, tight):
            self._step()
            if i == nb:
                if tight or used_a == 0:
                    return
                for j in range(k):
                    if ab[j] == 0 or ba[j] == 0:
                        return
                    if self.ic is not None and (ab[j] not in self.ic or ba[j] not in self.ic):
                        return
                    if self.ia is not None and aa[j] not in self.ia:
                        return
                    if self.ib is not None and bb[j] not in self.ib:
                        return
                yield tuple(choice)
                return
            if not feasible_tail(i, used_a, used_b):
                return
            size, am, bm = blocks[i]
            arows = list(_bits(am))
            brows = list(_bits(bm))
            max2 = min(size, b - used_b)
            if deg_b is not None and len(brows) >= deg_b:
                max2 = 0
            e = prev_entry[i] if tight else None
            for n2 in range(max2, -1, -1):
                max1 = min(size - n2, a - used_a)
                if deg_a is not None and len(arows) >= deg_a:
                    max1 = 0
                for n1 in range(max1, -1, -1):
                    new_tight = False
                    if e is not None:
                        first = 2 if n2 else 1 if n1 else 0
                        if size and first > e:
                            continue
                        if first == e:
                            new_tight = (e == 2 and n2 == size) or (e == 1 and n1 == size) or (
                                e == 0 and n2 == 0 and n1 == 0)
                        # first < e: strictly smaller from here on
                    ok = True
                    for j in arows:
                        aa[j] += n1
                        ba[j] += n2
                        if (max_aa is not None and aa[j] > max_aa) or (max_ab is not None and ba[j] > max_ab):
                            ok = False
                    for j in brows:
                        ab[j] += n1
                        bb[j] += n2
                        if (max_bb is not None and bb[j] > max_bb) or (max_ab is not None and ab[j] > max_ab):
                            ok = False
                    if ok:
                        choice.append((n2, n1))
                        yield from rec(i + 1, used_a + n1, used_b + n2, new_tight if e is not None else False)
                        choice.pop()
                    for j in arows:
                        aa[j] -= n1
                        ba[j] -= n2
                    for j in brows:
                        ab[j] -= n1
                        bb[j] -= n2

        yield from rec(0, 0, 0, k > 0)

    def witness(self, rows) -> SetPairSystem:
        # replay the block splitting to recover column indices
        blocks = [(0, self.V)]  # (start, size)
        sets = []
        for choice in rows:
            A, B, nxt = set(), set(), []
            for (start, size), (n2, n1) in zip(blocks, choice):
                B.update(range(start, start + n2))
                A.update(range(start + n2, start + n2 + n1))
                for s0, s in ((start, n2), (start + n2, n1), (start + n2 + n1, size - n2 - n1)):
                    if s:
                        nxt.append((s0, s))
            blocks = nxt
            sets.append((A, B))
        return SetPairSystem(self.V, tuple(sets)).compact()


def decide_size(profile: ConstraintProfile, m: int, limits: SearchLimits = SearchLimits(),
                prunes=PRUNES) -> SearchOutcome:
    """Is there a system of exactly ``m`` pairs satisfying ``profile``?

    ``UNSAT`` is only reported after an exhaustive search over at least
    :func:`vertex_cap` vertices; budget exhaustion or a smaller vertex limit
    gives ``UNKNOWN``.
    """
    if profile.a is None or profile.b is None:
        raise ValueError("search needs finite a and b")
    if m < 2:
        raise ValueError("m must be at least 2")
    prunes = frozenset(prunes)
    start = time.monotonic()
    if "bollobas" in prunes and m > bollobas_bound(profile.a, profile.b):
        return SearchOutcome(UNSAT, None, 0, time.monotonic() - start, "exceeds the Bollobás bound")
    cap = vertex_cap(profile, m)
    columns = cap if limits.max_vertices is None else min(limits.max_vertices, cap)
    s = _Search(profile, m, columns, limits, prunes)
    try:
        rows = s.run()
    except _Exhausted:
        return SearchOutcome(UNKNOWN, None, s.nodes, time.monotonic() - start, "budget exhausted")
    elapsed = time.monotonic() - start
    if rows is not None:
        witness = s.witness(rows)
        if not verify(witness, profile).passed:
            raise AssertionError("search produced a witness that fails verification")
        return SearchOutcome(SAT, witness, s.nodes, elapsed)
    if columns < cap:
        return SearchOutcome(UNKNOWN, None, s.nodes, elapsed, f"only {columns} of {cap} vertices searched")
    return SearchOutcome(UNSAT, None, s.nodes, elapsed)


def maximize(profile: ConstraintProfile, limits: SearchLimits = SearchLimits(), prunes=PRUNES) -> MaximizeResult:
    """Largest ``m`` found by increasing the target from 2 up to the best known upper bound."""
    if profile.a is None or profile.b is None:
        raise ValueError("search needs finite a and b")
    cap = upper_bound(profile).value
    best, witness, outcomes = 1, None, []
    m = 2
    while True:
        if cap is not None and m > cap:
            return MaximizeResult(best, witness, True, outcomes)
        out = decide_size(profile, m, limits, prunes)
        outcomes.append((m, out))
        if out.status == SAT:
            best, witness = m, out.witness
            m += 1
        elif out.status == UNSAT:
            return MaximizeResult(best, witness, True, outcomes)
        else:
            return MaximizeResult(best, witness, False, outcomes)
