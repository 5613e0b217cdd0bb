import math
import random

import pytest

from bettires.errors import HomogeneityError, InternalLimitError
from bettires.groebner import Ideal, toric_curve_ideal
from bettires.modules import GradedFreeModule, RingMatrix
from bettires.resolve import (
    BettiTable,
    betti_table,
    free_resolution,
    hilbert_function,
    hilbert_series,
    krull_dimension,
    minimal_free_resolution,
    minimalize,
    scheme_report,
    schreyer_syzygies,
)
from bettires.ring import PrimeField, Ring, monomials_of_degree


def ring(n):
    return Ring(PrimeField(), [f"x{i}" for i in range(n + 1)])


def test_principal_ideal_resolution():
    R = ring(2)
    I = Ideal(R, [R.variable(0)])
    res = minimal_free_resolution(I)
    assert [m.twists for m in res.modules] == [(0,), (1,)]


def test_twisted_cubic_minimal_ranks():
    # oracle: the closed form i * C(c+1, i+1) at c = 2 gives (3, 2)
    alpha = [i * math.comb(3, i + 1) for i in (1, 2)]
    assert alpha == [3, 2]
    I = toric_curve_ideal([3, 2, 1, 0])
    res = minimal_free_resolution(I)
    assert [m.rank for m in res.modules] == [1, 3, 2]
    assert res.is_complex()
    assert not res.has_constant_entries()


def test_schreyer_resolution_is_exact_complex_and_short_enough():
    I = toric_curve_ideal([4, 3, 1, 0])
    res = free_resolution(I)
    assert res.is_complex()
    assert res.length <= I.ring.num_vars + 1
    for M in res.differentials:
        assert M.is_homogeneous()


def test_free_resolution_requires_homogeneous():
    R = ring(2)
    with pytest.raises(HomogeneityError):
        free_resolution(Ideal(R, [R.variable(0) + R.one()]))


def test_minimalize_idempotent_and_rank_monotone():
    I = toric_curve_ideal([4, 3, 1, 0])
    res = free_resolution(I)
    small = minimalize(res)
    again = minimalize(small)
    assert [m.rank for m in small.modules] == [m.rank for m in again.modules]
    for a, b in zip(small.modules, res.modules):
        assert a.rank <= b.rank
    assert small.is_complex()


def test_syzygies_of_koszul_generators():
    # syzygies of (x0, x1, x2) have the Koszul column space
    R = ring(3)
    F = GradedFreeModule(R, (0,))
    gens = RingMatrix.from_entries(
        GradedFreeModule(R, (1, 1, 1)), F, [[R.variable(0), R.variable(1), R.variable(2)]]
    )
    syz = schreyer_syzygies(gens)
    assert gens.compose(syz).is_zero()
    from bettires.groebner import module_groebner, module_normal_form
    from bettires.ropes import koszul_complex

    kos = koszul_complex(3, ring=R).differentials[1]
    mine = module_groebner(list(syz.columns))
    theirs = module_groebner(list(kos.columns))
    assert all(module_normal_form(c, theirs).is_zero() for c in syz.columns)
    assert all(module_normal_form(c, mine).is_zero() for c in kos.columns)


def test_syzygies_of_principal_ideal_vanish():
    R = ring(2)
    F = GradedFreeModule(R, (0,))
    M = RingMatrix.from_entries(
        GradedFreeModule(R, (2,)), F, [[R.variable(0) * R.variable(1)]]
    )
    assert schreyer_syzygies(M).source.rank == 0


def test_hilbert_series_of_polynomial_ring():
    R = Ring(PrimeField(), ["x0", "x1"])
    series = hilbert_series(Ideal(R, []))
    assert series.numerator == (1,)
    assert [series.value(d) for d in range(4)] == [1, 2, 3, 4]


def test_twisted_cubic_hilbert_data():
    I = toric_curve_ideal([3, 2, 1, 0])
    series = hilbert_series(I)
    assert series.h_polynomial(2) == (1, 2)
    assert series.value(3) == 10  # 3*3 + 1


def test_hilbert_agrees_with_standard_monomial_count():
    # degrees 0..10 by direct enumeration against the lead-term ideal
    I = toric_curve_ideal([4, 3, 1, 0])
    leads = I.groebner().lead_exponents()
    nv = I.ring.num_vars
    for d in range(11):
        count = 0
        for m in monomials_of_degree(nv, d):
            if not any(all(a <= b for a, b in zip(le, m)) for le in leads):
                count += 1
        assert hilbert_function(I, d) == count


def test_scheme_report_twisted_cubic():
    I = toric_curve_ideal([3, 2, 1, 0])
    r = scheme_report(I)
    assert (r.dim, r.codim, r.degree, r.pd, r.depth) == (1, 2, 3, 2, 2)
    assert r.is_acm and r.regularity == 1 and r.was_saturated


def test_scheme_report_deg6():
    I = toric_curve_ideal([6, 5, 3, 2, 1, 0])
    r = scheme_report(I)
    assert (r.dim, r.codim, r.degree, r.pd, r.depth, r.is_acm) == (1, 4, 6, 5, 1, False)


def test_scheme_report_scroll_surface():
    from bettires.constructions import scroll

    I = scroll([1, 2])
    r = scheme_report(I)
    assert (r.dim, r.codim, r.degree, r.is_acm) == (2, 2, 3, True)


def test_scheme_report_flags_unsaturated_input():
    R = Ring(PrimeField(), ["x0", "x1"])
    x0, x1 = R.variable(0), R.variable(1)
    I = Ideal(R, [x0 * x0, x0 * x1])
    r = scheme_report(I)
    assert not r.was_saturated
    assert r.degree == 1  # reports on the saturation (x0)


def test_scheme_report_rejects_degenerate_ideals():
    R = ring(2)
    with pytest.raises(ValueError):
        scheme_report(Ideal(R, []))
    with pytest.raises(ValueError):
        scheme_report(Ideal(R, [R.one()]))


def test_euler_characteristic_identity():
    for exps in ([3, 2, 1, 0], [4, 3, 1, 0], [5, 4, 3, 2, 0]):
        I = toric_curve_ideal(exps)
        assert betti_table(I).euler_numerator() == hilbert_series(I).numerator


def test_depth_plus_pd_and_no_overlong_resolution():
    for exps in ([4, 3, 1, 0], [5, 4, 3, 1, 0]):
        I = toric_curve_ideal(exps)
        r = scheme_report(I)
        nv = I.ring.num_vars
        assert r.depth + r.pd == nv
        assert r.depth >= 1
        assert betti_table(I).projective_dimension <= nv


def test_krull_dimension_monomial_cases():
    R = ring(3)
    x = [R.variable(i) for i in range(4)]
    assert krull_dimension(Ideal(R, [x[0], x[1]])) == 2
    assert krull_dimension(Ideal(R, [x[0] * x[1]])) == 3
    assert krull_dimension(Ideal(R, x)) == 0


def test_betti_table_interface():
    t = BettiTable({(0, 0): 1, (1, 2): 3, (2, 3): 2})
    assert t.projective_dimension == 2
    assert t.regularity == 1
    assert t.entry(1, 2) == 3 and t.entry(5, 5) == 0
    assert t.row_total(1) == 3
