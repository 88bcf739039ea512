import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from symred import Ideal
from symred.blowup import (EMPTY, ORIGIN, REGULAR, SINGULAR, FiberSpec, build_y_charts, build_ztilde_charts,
                           divisor_codim_check, fiber_check, fiber_ideal, projective_dimension,
                           pullback_codimension, regular_sample_point, semismall_check, smooth_by_jacobian,
                           swap_automorphism, swap_check, x4_graph_ideal, y_chart_check, ztilde_chart_check)
from symred.ideals import ideal_equality, saturation
from symred.sl2 import h_ideal, h_relations

seeds = st.integers(0, 2 ** 32 - 1)
nonzero = st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(lambda q: q != 0)


def _all_charts():
    return list(build_ztilde_charts()) + list(build_y_charts())


def test_chart_counts():
    assert [c.chart_var for c in build_ztilde_charts()] == ["x4", "x5", "x6", "x7", "x8"]
    assert [c.chart_var for c in build_y_charts()] == ["y4", "y7", "y8"]


@pytest.mark.parametrize("k", range(8))
def test_saturating_again_is_a_fixed_point(k):
    chart = _all_charts()[k]
    S = chart.strict_transform
    assert ideal_equality(saturation(S, chart.exceptional), S)


@pytest.mark.parametrize("k", range(8))
def test_strict_transform_lies_over_z(k):
    chart = _all_charts()[k]
    gb = chart.strict_transform.groebner()
    for h in h_relations():
        assert gb.contains(h.to_ring(chart.ring))


def test_chart_x4_is_the_graph():
    chart = build_ztilde_charts()[0]
    assert ideal_equality(chart.strict_transform, x4_graph_ideal(chart.ring))


@pytest.mark.parametrize("k", range(5))
def test_ztilde_charts_smooth(k):
    ok, used = smooth_by_jacobian(build_ztilde_charts()[k].strict_transform)
    assert ok and used >= 1


def test_chart_report():
    assert ztilde_chart_check().passed


@settings(max_examples=20)
@given(seeds)
def test_regular_points_have_one_point_fibres(seed):
    pt = regular_sample_point(random.Random(seed))
    assert all(h.evaluate(pt) == 0 for h in h_relations()) and pt[3] != 0
    for which in ("pi", "pi2"):
        rep = fiber_check(FiberSpec(pt, REGULAR), which)
        assert rep.passed, rep.summary()


@settings(max_examples=15)
@given(nonzero, nonzero, seeds)
def test_singular_fibres_are_lines(p, q, seed):
    z1, z2, z3 = mpq(p) ** 2, 2 * mpq(p) * mpq(q), mpq(q) ** 2  # z2^2 = 4 z1 z3
    param = lambda a, b: [a * b, z2 / 2 * b * b, -z3 * b * b, -2 * z1 / z2 * a * a, a * a]  # noqa: E731
    rep = fiber_check(FiberSpec((z1, z2, z3, 0, 0, 0, 0, 0), SINGULAR, param), "pi", seed)
    assert rep.passed, rep.summary()
    assert rep.data["dim"] == 1


def test_zero_fibres():
    rep = fiber_check(FiberSpec((0,) * 8, ORIGIN), "pi")
    assert rep.passed and rep.data["dim"] == 2
    F = fiber_ideal((0,) * 8, "pi")
    v = F.ring.var
    E1, E2 = Ideal(F.ring, [v("x5"), v("x6")]), Ideal(F.ring, [v("x7"), v("x8")])
    assert ideal_equality(E1 + E2, Ideal(F.ring, [v("x5"), v("x6"), v("x7"), v("x8")]))
    assert fiber_check(FiberSpec((0,) * 8, ORIGIN), "pi2").passed


def test_fibre_spec_rejects_points_off_z():
    with pytest.raises(ValueError):
        FiberSpec((1, 0, 0, 0, 0, 0, 0, 1), REGULAR)
    with pytest.raises(ValueError):
        FiberSpec((1, 2), REGULAR)


def test_fibre_dimension_monotone_and_semismall():
    dims = [projective_dimension(fiber_ideal(pt)) for pt in
            (regular_sample_point(random.Random(0)), (1, 2, 1, 0, 0, 0, 0, 0), (0,) * 8)]
    assert dims == sorted(dims) == [0, 1, 2]
    rep = semismall_check()
    assert rep.passed and rep.data["table"] == [("regular", 0, 0), ("singular-minus-origin", 1, 2), ("origin", 2, 4)]


def test_divisor_codimension():
    rep = divisor_codim_check()
    assert rep.passed
    chart = build_ztilde_charts()[0]
    assert pullback_codimension(chart, Ideal(h_ideal().ring, [1])) == EMPTY


def test_y_chart_structure():
    assert y_chart_check().passed


def test_swap_as_printed_is_not_an_automorphism():
    # computed: the images of h1 (and five others) leave the ideal, e.g. h1 -> -2 z4 z5
    H = h_ideal()
    gb = H.groebner()
    h1 = h_relations()[0]
    z = H.ring.var
    assert gb.reduce(swap_automorphism(h1)) == -2 * z("z4") * z("z5")
    bad = [i + 1 for i, h in enumerate(h_relations()) if gb.reduce(swap_automorphism(h))]
    assert bad == [1, 2, 3, 4, 6, 7]


def test_swap_with_z4_sign_is_an_automorphism():
    H = h_ideal()
    z = H.ring.var
    img = Ideal(H.ring, [swap_automorphism(h).subs({"z4": -z("z4")}) for h in H.generators])
    assert ideal_equality(H, img)
    assert swap_check().data["signed_swap_ok"]
