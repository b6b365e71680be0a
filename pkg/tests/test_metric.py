from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from splitcone import (DissimilarityMatrix, Split, SplitSystem, WeightVector, check_equidistant,
                       check_four_point, check_kalmanson, check_metric, distance, full_matrix,
                       pairwise_compatible)
from splitcone.metric import quadruple_sums, to_fraction
from strategies import weighted_systems


def test_to_fraction_is_exact():
    assert to_fraction(0.1) == Fraction(1, 10)
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction({"num": 5, "den": 2}) == Fraction(5, 2)
    with pytest.raises((ValueError, TypeError)):
        to_fraction("abc")


def test_matrix_basics():
    d = DissimilarityMatrix.from_rows([[1, 2], [3]])
    assert d[1, 2] == d[2, 1] == 1
    assert d[2, 2] == 0
    full = DissimilarityMatrix.from_rows([[0, 1, 2], [1, 0, 3], [2, 3, 0]])
    assert full == d
    with pytest.raises(ValueError):
        DissimilarityMatrix.from_rows([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        DissimilarityMatrix.from_rows([[-1, 2], [3]])


def test_four_point_failure_witness():
    d = DissimilarityMatrix.from_rows([[1, 1, 1], [1, 1], [5]])
    res = check_four_point(d)
    assert not res.ok
    assert res.witness.quad == (1, 2, 3, 4)
    assert res.witness.sums == (6, 2, 2)


def test_kalmanson_exhaustive_finds_another_order():
    sys_ = SplitSystem.of(4, [(1, 2), (3, 4)])
    d, _ = full_matrix(sys_, WeightVector(sys_, {s: 1 for s in sys_}))
    swapped = d.relabel((1, 3, 2, 4))
    assert not check_kalmanson(swapped).ok
    res = check_kalmanson(swapped, exhaustive=True)
    assert res.ok and _kalmanson_ok(swapped.relabel(res.witness))


def _kalmanson_ok(d):
    for q in combinations(range(1, d.n + 1), 4):
        a, b, c = quadruple_sums(d, *q)
        if a > b or c > b:
            return False
    return True


def test_metric_witness():
    d = DissimilarityMatrix.from_rows([[1, 5], [1]])
    res = check_metric(d)
    assert not res.ok
    x, y, z = res.witness
    assert d[x, z] > d[x, y] + d[y, z]


def test_equidistant_failure_lists_depths():
    sys_ = SplitSystem.of(3)
    w = WeightVector(sys_, {Split(1, 1): 1, Split(2, 2): 2, Split(3, 3): 2})
    res = check_equidistant(sys_, w)
    assert not res.ok and res.witness == (1, 2, 2)


@given(weighted_systems())
def test_split_metrics_are_metrics_and_kalmanson(pair):
    sys_, w = pair
    d, _ = full_matrix(sys_, w)
    assert check_metric(d).ok
    assert check_kalmanson(d).ok


@given(weighted_systems())
def test_distance_is_symmetric(pair):
    sys_, w = pair
    for i in range(0, sys_.n + 1):
        for j in range(0, sys_.n + 1):
            assert distance(sys_, w, i, j) == distance(sys_, w, j, i)


@given(weighted_systems(n_min=4, n_max=7))
def test_compatible_systems_give_tree_metrics(pair):
    sys_, w = pair
    d, _ = full_matrix(sys_, w)
    if pairwise_compatible(sys_).ok:
        assert check_four_point(d).ok
