import pytest
from hypothesis import given, settings

from splitcone import (DissimilarityMatrix, RayTau, XDiagram, all_rays, check_rules, facets, ray_for_tight_set,
                       ray_vector, render_ascii, tilde, xdiagram_of)
from splitcone.xdiagram import InvalidTightSet, f_domain, g_domain, h_domain, staircase
from strategies import cone_points, rays


def test_domains_for_four_leaves():
    assert len(f_domain(4)) == len(facets(4))
    for k, l in f_domain(4):
        assert (k, l) in g_domain(4) and (k, l + 1) in g_domain(4)
        assert (k, l) in h_domain(4) and (k + 1, l) in h_domain(4)


def test_tilde_border():
    d = DissimilarityMatrix.from_rows([[2, 3], [4]])
    t = tilde(d)
    assert t[0, 1] == 1 and t[2, 4] == 1
    assert t[1, 1] == 0 and t[1, 3] == 3
    rows = t.rows()
    assert rows[3][0] is None


def test_from_ones_rejects_unknown_positions():
    with pytest.raises(ValueError):
        XDiagram.from_ones(4, f=[(0, 4)])


def test_all_tight_means_apex():
    x = XDiagram.from_ones(4, f=f_domain(4), g=g_domain(4), h=h_domain(4))
    assert ray_for_tight_set(x) is None


def test_tight_set_without_a_ray():
    # only Left(2) is slack: block [1,2] is allowed but nothing can follow it
    x = XDiagram.from_ones(4, f=[c for c in f_domain(4) if c != (0, 2)])
    with pytest.raises(InvalidTightSet):
        ray_for_tight_set(x)


def test_rule_report_text():
    x = XDiagram.from_ones(4, f=[(0, 2)], g=[(0, 3)])
    msgs = [str(v) for v in check_rules(x)]
    assert "rule 1: f(0,2)=1, g(0,3)=1 but g(0,2)=0" in msgs


def test_staircase_and_ascii():
    t = RayTau.parse("1|2|3456")
    assert staircase(t)[:3] == [(0, 1), (1, 2), (2, 3)]
    art = render_ascii(xdiagram_of(ray_vector(t)))
    assert "X" in art and "o" in art


@settings(max_examples=80)
@given(cone_points(n_min=3, n_max=7))
def test_diagrams_of_cone_points_obey_the_rules(pair):
    d, _ = pair
    assert check_rules(xdiagram_of(d)) == []


@settings(max_examples=80)
@given(cone_points(n_min=3, n_max=7))
def test_ray_respects_tight_cells(pair):
    d, _ = pair
    x = xdiagram_of(d)
    tau = ray_for_tight_set(x)
    if tau is None:
        assert not any(d.entries)
        return
    r = ray_vector(tau)
    for f in facets(d.n):
        if x.f[f.cell]:
            assert f.evaluate(r) == 0


@given(rays(n_min=3))
def test_ray_of_a_ray_diagram_is_itself(t):
    assert ray_for_tight_set(xdiagram_of(ray_vector(t))) == t
