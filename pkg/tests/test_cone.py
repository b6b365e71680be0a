from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from splitcone import (DissimilarityMatrix, NotInCone, RayTau, Split, SplitSystem, TooSmall, all_rays,
                       complete_system, decompose, facet_incidence, facets, membership, ray_vector,
                       rays_of_face, recover_weights)
from splitcone.cone import INTERIOR, ON_FACE, OUTSIDE, Facet, facet_incidence_direct, nontight_facets, resum
from strategies import circular_systems, cone_points, rays


def test_facets_need_three_leaves():
    with pytest.raises(TooSmall):
        facets(2)


def test_facet_text():
    f = Facet(5, "covering", 2, 3)
    assert f.name() == "Covering(2,3)"
    assert f.split == Split(2, 3)
    assert f.to_json()["paired_split"] == [2, 3]
    assert Facet(5, "left", 2).inequality() == "d(1,2) <= d(1,3)"


def test_ray_parsing():
    t = RayTau.parse("1|23|45")
    assert t.cuts == (1, 3) and str(t) == "1|23|45"
    assert str(RayTau.parse("1,2|3,4,5,6,7,8,9,10")) == "1,2|3,4,5,6,7,8,9,10"
    with pytest.raises(ValueError):
        RayTau.parse("12345")
    with pytest.raises(ValueError):
        RayTau.parse("13|245")


def test_membership_statuses():
    kn = complete_system(4)
    interior = sum((ray_vector(t) for t in all_rays(4)[1:]), ray_vector(all_rays(4)[0]))
    assert membership(interior).status == INTERIOR
    assert membership(ray_vector(RayTau.parse("1|234"))).status == ON_FACE
    outside = DissimilarityMatrix.from_rows([[3, 1, 1], [1, 1], [1]])
    res = membership(outside)
    assert res.status == OUTSIDE and res.violations
    assert not res.inside
    with pytest.raises(NotInCone):
        decompose(outside)


def test_membership_against_a_system():
    sys_ = SplitSystem.of(5, [(1, 2), (2, 3), (2, 5), (4, 5)])
    d = ray_vector(RayTau.parse("1|23|45"))
    assert membership(d, sys_).inside
    assert not membership(ray_vector(RayTau.parse("12|34|5")), sys_).inside


def test_decompose_small_cases():
    d2 = DissimilarityMatrix.from_rows([[3]])
    assert decompose(d2) == [(3, RayTau(2, (1,)))]
    assert decompose(DissimilarityMatrix.zeros(4)) == []


@given(rays())
def test_incidence_rule_matches_evaluation(t):
    if t.n < 3:
        return
    assert facet_incidence(t) == facet_incidence_direct(t)
    assert set(facets(t.n)) - facet_incidence(t) == set(nontight_facets(t))


@given(rays())
def test_rays_lie_in_the_cone(t):
    w = recover_weights(ray_vector(t))
    assert w.is_nonnegative()
    assert set(w.positive()) == {Split(a, b) for a, b in t.blocks()}


@settings(max_examples=60)
@given(cone_points())
def test_weights_round_trip(pair):
    d, w = pair
    assert recover_weights(d).weights == w.weights


@settings(max_examples=60)
@given(cone_points())
def test_decompose_resums_exactly(pair):
    d, _ = pair
    terms = decompose(d)
    assert all(c > 0 for c, _ in terms)
    assert resum(d.n, terms) == d
    assert len(terms) <= d.n * (d.n - 1) // 2 + 2


@given(cone_points())
def test_cone_is_closed_under_addition(pair):
    d, _ = pair
    assert membership(d + d).inside
    assert membership(d.scale(Fraction(1, 3))).inside


@given(circular_systems(n_max=7))
def test_face_rays_use_only_system_splits(sys_):
    for t in rays_of_face(sys_):
        assert all(Split(a, b) in sys_ for a, b in t.blocks())
        assert membership(ray_vector(t), sys_).inside
