import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from setpairs.core import SetPairSystem

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def raw_systems(draw, max_vertices=8, max_pairs=6):
    """Arbitrary pairs of disjoint sets; not necessarily cross intersecting."""
    n = draw(st.integers(0, max_vertices))
    m = draw(st.integers(0, max_pairs))
    rows = draw(st.lists(st.lists(st.sampled_from((0, 1, 2)), min_size=n, max_size=n), min_size=m, max_size=m))
    pairs = tuple(
        (frozenset(v for v, e in enumerate(r) if e == 1), frozenset(v for v, e in enumerate(r) if e == 2))
        for r in rows
    )
    return SetPairSystem(n, pairs)


def brute_intersections(sps):
    m = sps.m
    A, B = sps.A, sps.B
    aa = [[len(A[i] & A[j]) for j in range(m)] for i in range(m)]
    bb = [[len(B[i] & B[j]) for j in range(m)] for i in range(m)]
    ab = [[len(A[i] & B[j]) for j in range(m)] for i in range(m)]
    return aa, bb, ab


def brute_passes(sps, profile):
    """Straight loop over all pairs; independent of the matrix-based checker."""
    if sps.m < 2:
        return False
    aa, bb, ab = brute_intersections(sps)
    for i in range(sps.m):
        if ab[i][i]:
            return False
        if profile.a is not None and len(sps.A[i]) > profile.a:
            return False
        if profile.b is not None and len(sps.B[i]) > profile.b:
            return False
        for j in range(sps.m):
            if i == j:
                continue
            if ab[i][j] == 0:
                return False
            if profile.inter_cross is not None and ab[i][j] not in profile.inter_cross:
                return False
            if profile.inter_a is not None and aa[i][j] not in profile.inter_a:
                return False
            if profile.inter_b is not None and bb[i][j] not in profile.inter_b:
                return False
    return True
