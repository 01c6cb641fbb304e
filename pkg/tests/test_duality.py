from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from setpairs.constructions import c_family, catalog, double_star, product, standard_example, w22_power
from setpairs.core import ONE_CROSS, SetPairSystem, verify
from setpairs.duality import BICLIQUE, CLIQUE, EdgePartition, dualize, label, parse_label, undualize, verify_partition


def canonical(sps: SetPairSystem):
    """Pair list with vertices replaced by their membership pattern; invariant under vertex relabeling."""
    compact = sps.compact()
    pattern = {}
    for v in range(compact.ground_set_size):
        pattern[v] = (tuple(i for i, a in enumerate(compact.A) if v in a),
                      tuple(i for i, b in enumerate(compact.B) if v in b))
    return sorted(pattern.values()), [(len(a), len(b)) for a, b in compact.pairs]


BICLIQUE_RECORDS = [catalog("w22"), catalog("w23"), catalog("mod10_33"), w22_power(3), standard_example(1, 3)]
CLIQUE_RECORDS = [catalog("mod8_n3"), catalog("pg23_diff_n4"), double_star(5), c_family(3, 5)]


def test_labels():
    assert [label(3, v) for v in range(6)] == ["x0", "x1", "x2", "y0", "y1", "y2"]
    assert parse_label(3, "y2") == 5
    for bad in ("z1", "x3", "y-1"):
        with pytest.raises(ValueError):
            parse_label(3, bad)


@pytest.mark.parametrize("rec", BICLIQUE_RECORDS + CLIQUE_RECORDS, ids=lambda r: r.citation)
def test_biclique_round_trip(rec):
    p = dualize(rec.system, BICLIQUE)
    assert verify_partition(p) == (True, [])
    assert canonical(undualize(p)) == canonical(rec.system)


@pytest.mark.parametrize("rec", CLIQUE_RECORDS, ids=lambda r: r.citation)
def test_clique_round_trip(rec):
    p = dualize(rec.system, CLIQUE)
    assert verify_partition(p) == (True, [])
    assert canonical(undualize(p)) == canonical(rec.system)


def test_pg23_clique_partition():
    p = dualize(catalog("pg23_diff_n4").system, CLIQUE)
    assert len(p.parts) == 14 and all(len(part) == 4 for part in p.parts)
    edges = [e for part in p.parts for e in combinations(sorted(part), 2)]
    assert len(edges) == 84 == len(set(edges))
    assert p.width == 4


def test_mod8_width():
    assert dualize(catalog("mod8_n3").system, CLIQUE).width == 3


def test_dualize_rejects_profile_mismatch():
    with pytest.raises(ValueError):
        dualize(catalog("w22").system, CLIQUE)
    with pytest.raises(ValueError):
        dualize(standard_example(2, 2).system, BICLIQUE)
    with pytest.raises(ValueError):
        dualize(catalog("w22").system, "triangle")


def test_verify_partition_detects_faults():
    p = dualize(catalog("w22").system, BICLIQUE)
    broken = EdgePartition(p.m, p.kind, p.parts[1:], p.width)
    ok, violations = verify_partition(broken)
    assert not ok and {r for r, _ in violations} == {"cross_cover"}
    bad_width = EdgePartition(p.m, p.kind, p.parts, p.width + 1)
    assert [r for r, _ in verify_partition(bad_width)[1]] == ["width"]
    matching = EdgePartition(2, BICLIQUE, [{0, 2}, {0, 3}, {1, 2}], 2)
    assert "matching_edge" in {r for r, _ in verify_partition(matching)[1]}
    out = EdgePartition(2, BICLIQUE, [{0, 9}], 1)
    assert "out_of_range" in {r for r, _ in verify_partition(out)[1]}
    # a valid biclique partition is not a clique partition
    assert "same_side_cover" in {r for r, _ in verify_partition(EdgePartition(p.m, CLIQUE, p.parts, p.width))[1]}
    with pytest.raises(ValueError):
        undualize(broken)


@given(st.sampled_from([catalog("w22").system, catalog("w23").system, standard_example(1, 2).system]),
       st.sampled_from([catalog("w22").system, standard_example(1, 1).system, double_star(2).system]))
def test_round_trip_products(s1, s2):
    sps = product(s1, s2)
    p = dualize(sps, BICLIQUE)
    assert verify_partition(p)[0]
    back = undualize(p)
    assert verify(back, ONE_CROSS).passed
    assert canonical(back) == canonical(sps)
