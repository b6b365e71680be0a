import pytest
from hypothesis import given, strategies as st

from splitcone import (NotCircular, RootTrivial, Split, SplitSystem, canonicalize, complete_system,
                       pairwise_compatible, polygon_diagonals, separates)
from splitcone.splits import SplitError, compatible
from strategies import circular_systems


def test_canonicalize_picks_the_root_free_side():
    assert canonicalize({0, 1}, {2, 3, 4, 5}, 5) == Split(2, 5)
    assert canonicalize({2, 3}, {0, 1, 4, 5}, 5) == Split(2, 3)


def test_canonicalize_rejects_bad_input():
    with pytest.raises(NotCircular):
        canonicalize({1, 3}, {0, 2, 4, 5}, 5)
    with pytest.raises(RootTrivial):
        canonicalize({0}, {1, 2, 3}, 3)
    with pytest.raises(SplitError):
        canonicalize({1, 2}, {2, 3, 0}, 3)
    with pytest.raises(SplitError):
        canonicalize({1}, {0, 2}, 3)


def test_label_and_expand():
    s = Split(2, 3)
    assert s.label(5) == "23|0145"
    inside, outside = s.expand(5)
    assert inside == {2, 3} and outside == {0, 1, 4, 5}
    assert str(s) == "[2,3]"


def test_system_requires_trivials_and_rejects_root_split():
    with pytest.raises(SplitError):
        SplitSystem(3, frozenset({Split(1, 1), Split(2, 2)}))
    with pytest.raises(RootTrivial):
        SplitSystem.of(3, [(1, 3)])


def test_complete_system_size():
    for n in range(2, 9):
        assert len(complete_system(n)) == n * (n + 1) // 2 - 1


def test_from_unrooted_relabels_after_root():
    sys_ = SplitSystem.from_unrooted([1, 2, 3, 4, 5, 6], [({1, 2}, {3, 4, 5, 6}), ({1, 6}, {2, 3, 4, 5})], 6)
    assert sys_.n == 5
    assert sys_.nontrivial() == [Split(1, 2), Split(2, 5)]


def test_incompatible_witness():
    sys_ = SplitSystem.of(5, [(1, 2), (2, 3)])
    res = pairwise_compatible(sys_)
    assert not res.ok and res.witness == (Split(1, 2), Split(2, 3))


def test_polygon_diagonals_of_the_hexagon():
    sys_ = SplitSystem.of(5, [(1, 2), (2, 3), (2, 5), (4, 5)])
    assert sorted(map(sorted, polygon_diagonals(sys_))) == [[0, 2], [0, 4], [1, 3], [2, 4]]


@given(st.integers(2, 8), st.data())
def test_compatible_matches_set_definition(n, data):
    s = Split(*sorted(data.draw(st.tuples(st.integers(1, n), st.integers(1, n)))))
    t = Split(*sorted(data.draw(st.tuples(st.integers(1, n), st.integers(1, n)))))
    a, b = s.expand(n)
    c, d = t.expand(n)
    by_sets = any(not (x & y) for x in (a, b) for y in (c, d))
    assert compatible(s, t) == by_sets


@given(circular_systems())
def test_canonicalize_round_trips_every_split(sys_):
    for s in sys_:
        assert canonicalize(*s.expand(sys_.n), sys_.n) == s
        assert canonicalize(*reversed(s.expand(sys_.n)), sys_.n) == s


@given(circular_systems(), st.data())
def test_separates_agrees_with_sides(sys_, data):
    i = data.draw(st.integers(0, sys_.n))
    j = data.draw(st.integers(0, sys_.n))
    for s in sys_:
        inside, _ = s.expand(sys_.n)
        assert separates(s, i, j) == ((i in inside) != (j in inside))
