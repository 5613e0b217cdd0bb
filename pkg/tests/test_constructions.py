import math

import pytest

from bettires.constructions import (
    CATALOG,
    build_catalog_ideal,
    ci_two_quadrics,
    disjoint_linear_spaces,
    linear_space,
    manolache_double,
    scroll,
    veronese_projection,
)
from bettires.groebner import toric_curve_ideal
from bettires.resolve import betti_table, scheme_report
from bettires.ring import PrimeField


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_entry_matches_expectations(name):
    entry = CATALOG[name]
    I = entry.build()
    if entry.expected_betti is not None:
        assert betti_table(I).entries == entry.expected_betti
    report = scheme_report(I)
    for key, want in entry.expected_report.items():
        assert getattr(report, key) == want, key
    assert report.was_saturated  # catalog ideals are saturated


def test_linear_space_koszul():
    I = linear_space([0, 1, 2], 5)
    assert betti_table(I).entries == {(0, 0): 1, (1, 1): 3, (2, 2): 3, (3, 3): 1}
    assert scheme_report(I).degree == 1
    with pytest.raises(ValueError):
        linear_space([], 3)


def test_line_and_point():
    line = linear_space([0, 1], 3)
    assert scheme_report(line).dim == 1
    point = linear_space([0, 1], 2)
    assert scheme_report(point).dim == 0


def test_scroll_cubic_is_twisted_cubic():
    assert scroll([3]) == toric_curve_ideal([3, 2, 1, 0])


def test_scroll_1_1_is_quadric_surface():
    I = scroll([1, 1])
    R = I.ring
    assert len(I.gens) == 1
    want = R.variable(0) * R.variable(3) - R.variable(1) * R.variable(2)
    assert I.gens[0] in (want, -want)


def test_scrolls_in_p5_share_quadric_count():
    for degs in ([1, 3], [2, 2]):
        I = scroll(degs)
        r = scheme_report(I)
        assert (r.dim, r.degree) == (2, 4)
        # oracle: the minors of the 2x4 scroll matrix, C(4,2) of them
        assert betti_table(I).entry(1, 2) == math.comb(4, 2)


def test_scroll_validation():
    with pytest.raises(ValueError):
        scroll([0, 0])


def test_disjoint_spaces_small_case():
    I = disjoint_linear_spaces(3)
    assert sorted(str(g) for g in I.gens) == sorted(
        ["x0*x2", "x0*x3", "x1*x2", "x1*x3"]
    )
    r = scheme_report(I)
    assert (r.degree, r.dim) == (2, 1)
    with pytest.raises(ValueError):
        disjoint_linear_spaces(4)


def test_ci_two_quadrics_deterministic_and_koszul():
    a = ci_two_quadrics(3, seed=1)
    b = ci_two_quadrics(3, seed=1)
    assert a.gens == b.gens
    assert betti_table(a).entries == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
    r = scheme_report(a)
    assert (r.degree, r.codim, r.is_acm) == (4, 2, True)


def test_veronese_projection_has_no_quadrics():
    I = veronese_projection(seed=0)
    t = betti_table(I)
    assert t.entry(1, 2) == 0
    assert t.entry(1, 3) == 7
    r = scheme_report(I)
    assert (r.degree, r.dim, r.codim, r.depth) == (4, 2, 2, 1)


def test_veronese_projection_seed_stability():
    assert betti_table(veronese_projection(seed=0)) == betti_table(veronese_projection(seed=3))


def test_manolache_double_koszul():
    I = manolache_double(2, 4)
    assert betti_table(I).entries == {(0, 0): 1, (1, 1): 1, (1, 2): 1, (2, 3): 1}
    r = scheme_report(I)
    assert (r.degree, r.codim, r.is_acm) == (2, 2, True)
    with pytest.raises(ValueError):
        manolache_double(5, 5)


def test_buchsbaum_surface_is_linear_and_matches_two_planes():
    I = CATALOG["buchsbaum-surface"].build()
    t = betti_table(I)
    assert all(j == i + 1 for (i, j) in t.entries if i >= 1)
    assert t == betti_table(CATALOG["two-planes"].build())
    r = scheme_report(I)
    assert (r.degree, r.dim, r.depth, r.pd) == (2, 2, 1, 5)


def test_build_catalog_ideal_parametric():
    I = build_catalog_ideal("monomial-curve", extra=["3", "2", "1", "0"])
    assert I == toric_curve_ideal([3, 2, 1, 0])
    J = build_catalog_ideal("scroll", extra=["1", "1"], field=PrimeField(101))
    assert J.ring.field.p == 101
    with pytest.raises(KeyError):
        build_catalog_ideal("nonsense")
