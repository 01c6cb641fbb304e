from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from setpairs.bounds import (
    BOLLOBAS,
    EXACT,
    INTERSECTING_BOTH,
    UPPER,
    bollobas_bound,
    known_values,
    star_product_size,
    upper_bound,
)
from setpairs.constructions import c_family, catalog, double_star, star_extremal_2n, w22_power
from setpairs.core import INT, LIN, ConstraintProfile

P = ConstraintProfile.parse

INTER = st.sampled_from([None, LIN, INT, frozenset({0}), frozenset({1, 2}), frozenset({0, 2})])


@st.composite
def profiles(draw):
    return ConstraintProfile(draw(st.integers(1, 7)), draw(st.integers(1, 7)), draw(INTER), draw(INTER),
                             draw(st.sampled_from([None, INT, frozenset({1, 2})])))


def tighter(s):
    """A constraint set at least as restrictive as ``s``."""
    if s is None:
        return st.sampled_from([None, LIN, INT, frozenset({0, 2})])
    return st.sets(st.sampled_from(sorted(s)), max_size=len(s)).map(frozenset) if s else st.just(frozenset())


def test_bollobas():
    assert [bollobas_bound(1, b) for b in range(1, 5)] == [2, 3, 4, 5]
    assert bollobas_bound(3, 3) == 20
    with pytest.raises(ValueError):
        bollobas_bound(0, 2)


@pytest.mark.parametrize("text,n,value,kind", [
    ("1,1,*,*,*", None, 2, EXACT),
    ("2,2,*,*,1", None, 5, EXACT),
    ("2,3,*,*,1", None, 7, EXACT),
    ("2,4,*,*,1", None, 9, EXACT),
    ("2,12,*,*,1", None, 49, EXACT),
    ("int,int,1", 2, 3, EXACT),
    ("int,int,1", 3, 4, EXACT),
    ("int,int,1", 4, 7, EXACT),
    ("int,int,1", 5, 10, EXACT),
    ("int,int,1", 6, 16, UPPER),
    ("int,int,1", 10, 46, UPPER),
    ("3,3,lin,lin,1", None, 8, UPPER),
    ("4,4,lin,lin,1", None, 13, UPPER),
    ("5,5,lin,*,1", None, 31, UPPER),
    ("3,3,*,*,*", None, 20, EXACT),
])
def test_table(text, n, value, kind):
    r = upper_bound(P(text), n)
    assert (r.value, r.kind) == (value, kind)


def test_int_int_source_and_cli_form():
    r = upper_bound(P("int,int,1"), 5)
    assert r.source == INTERSECTING_BOTH
    assert upper_bound(P("3,3,*,*,*")).source == BOLLOBAS


def test_unbounded_without_n():
    assert upper_bound(P("int,int,1")).value is None


def test_linear_both_sides_closed_form():
    # floor(n²/2 + n + 1) computed with exact halves
    for n in range(2, 30):
        expected = (n * n + 2 * n + 2) // 2
        assert upper_bound(ConstraintProfile(n, n, LIN, LIN, INT)).value <= expected


def test_star_product_matches_star_extremal():
    for n in range(4, 13):
        assert star_extremal_2n(n).m == star_product_size(n) == (n // 2 + 1) * ((n + 1) // 2 + 1)


def test_known_values_consistent_with_upper_bound():
    for shape, n, value, _ in known_values():
        if shape.startswith("2,n"):
            r = upper_bound(P(f"2,{n},*,*,1"))
        elif shape.startswith("n,n"):
            r = upper_bound(P("int,int,1"), n)
        else:
            r = upper_bound(P(shape))
        assert (r.value, r.kind) == (value, EXACT)


@given(profiles())
def test_never_exceeds_bollobas(p):
    assert upper_bound(p).value <= comb(p.a + p.b, p.a)


@given(profiles())
def test_symmetric_in_sides(p):
    assert upper_bound(p).value == upper_bound(p.swapped()).value


@given(profiles(), st.data())
def test_monotone_under_tightening(p, data):
    q = ConstraintProfile(
        data.draw(st.integers(1, p.a)),
        data.draw(st.integers(1, p.b)),
        data.draw(tighter(p.inter_a)),
        data.draw(tighter(p.inter_b)),
        data.draw(tighter(p.inter_cross).filter(lambda s: s is None or 0 not in s)),
    )
    assert upper_bound(q).value <= upper_bound(p).value


@pytest.mark.parametrize("rec", [
    catalog("w22"), catalog("w23"), catalog("mod10_33"), catalog("mod8_n3"), catalog("pg23_diff_n4"),
    catalog("mod14_lin3"), catalog("ag24_plus10"), w22_power(4), double_star(7), c_family(3, 7),
    c_family(1, 5), c_family(2, 7), star_extremal_2n(9),
], ids=lambda r: r.citation)
def test_constructions_below_bound(rec):
    assert rec.m <= upper_bound(rec.declared_profile).value
