import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from symred import Ideal, linalg
from symred.ideals import ideal_equality
from symred.sl2 import (BinaryForm, HILBERT_28, OMITTED, POINCARE_EXPANSION, SL2C2_NAMES, act_on_double,
                        catalecticant, discriminant_cubic, form_action_matrix, h_relations, hilbert_28, m_matrix,
                        minors_vs_h, poincare_check, poincare_series, polarize, quartic_q, random_sl2,
                        random_so3, reynolds, s3_act, s3_elements, s3_invariants, s3_ring, sigma_pairing,
                        sl2c2_act, sl2c2_invariants, sl2c2_moment_ideal, sl2c2_moment_matrix,
                        sl2c2_presentation_check, sl2c2_ring, sl2c2_z, so3_act, so3_invariants,
                        so3_moment_ideal, so3_moment_matrix, so3_quotient_checks, so3_ring,
                        sym3_invariants, sym3_quotient_check, sym4_invariants, sym4_quotient_check,
                        sym_forms, sym_moment_ideal, sym_ring)
from symred.series import series_expand

seeds = st.integers(0, 2 ** 32 - 1)


# -- binary forms --------------------------------------------------------------

def test_pairings():
    A, B = sym_forms(3)
    assert sigma_pairing(3, A, A) == 0
    assert sigma_pairing(3, A, B) == -sigma_pairing(3, B, A)
    A4, _ = sym_forms(4)
    assert sigma_pairing(4, A4, A4) == 2 * quartic_q(A4)
    R = sym_ring(3)
    x3 = BinaryForm(3, (R.one(), R.zero(), R.zero(), R.zero()))
    y3 = BinaryForm(3, (R.zero(), R.zero(), R.zero(), R.one()))
    assert sigma_pairing(3, x3, y3) == 1
    with pytest.raises(ValueError):
        sigma_pairing(5, A, B)


def test_discriminant_printed_and_repeated_roots():
    A, _ = sym_forms(3)
    R = sym_ring(3)
    printed = R.parse("-4*a0*a2^3 - 4*a1^3*a3 - a0^2*a3^2 + 3*a1^2*a2^2 + 6*a0*a1*a2*a3")
    assert discriminant_cubic(A) == printed
    assert printed.evaluate([1, 0, 0, 0, 0, 0, 0, 0]) == 0  # x^3
    assert printed.evaluate([0, mpq(1, 3), 0, 0, 0, 0, 0, 0]) == 0  # x^2 y
    assert printed.evaluate([1, 0, 0, 1, 0, 0, 0, 0]) != 0  # x^3 + y^3


def test_moment_ideals_printed():
    R3 = sym_ring(3)
    printed3 = [R3.parse(s) for s in ("a1*b3 + a3*b1 - 2*a2*b2", "a0*b3 + a3*b0 - a1*b2 - a2*b1",
                                      "2*a1*b1 - a0*b2 - a2*b0")]
    assert list(sym_moment_ideal(3).generators) == printed3
    R4 = sym_ring(4)
    printed4 = [R4.parse(s) for s in ("b4*a1 - 3*b3*a2 - b1*a4 + 3*b2*a3", "a0*b4 - b0*a4 - 2*a1*b3 + 2*b1*a3",
                                      "b0*a3 - b3*a0 - 3*b1*a2 + 3*b2*a1")]
    assert list(sym_moment_ideal(4).generators) == printed4
    for d in (3, 4):
        for g in sym_moment_ideal(d).generators:
            for e in g.terms:
                assert sum(e[:d + 1]) == 1 and sum(e[d + 1:]) == 1


@pytest.mark.parametrize("d", [3, 4])
def test_polarisation_endpoints_and_counts(d):
    A, B = sym_forms(d)
    an = [f"a{k}" for k in range(d + 1)]
    bn = [f"b{k}" for k in range(d + 1)]
    f = discriminant_cubic(A) if d == 3 else catalecticant(A)
    pieces = polarize(f, an, bn, 4 if d == 3 else 3)
    R = sym_ring(d)
    swap = [R.var(n) for n in bn] + [R.var(n) for n in bn]
    assert pieces[0] == f
    assert pieces[-1] == f.compose(swap, R)
    assert len(polarize(quartic_q(sym_forms(4)[0]), *[[f"a{k}" for k in range(5)], [f"b{k}" for k in range(5)]], 2)) == 3


@pytest.mark.parametrize("d", [3, 4])
def test_polarisation_sums_to_f_of_sum(d):
    A, _ = sym_forms(d)
    an = [f"a{k}" for k in range(d + 1)]
    bn = [f"b{k}" for k in range(d + 1)]
    R = sym_ring(d)
    for f, r in ((discriminant_cubic(A), 4),) if d == 3 else ((quartic_q(A), 2), (catalecticant(A), 3)):
        total = sum(polarize(f, an, bn, r), R.zero())
        images = [R.var(a) + R.var(b) for a, b in zip(an, bn)] + [R.var(b) for b in bn]
        assert total == f.compose(images, R)


def test_action_matrix_is_a_representation():
    rng = random.Random(11)
    for d in (3, 4):
        g, h = random_sl2(rng), random_sl2(rng)
        lhs = form_action_matrix(d, linalg.mat_mul(g, h))
        rhs = linalg.mat_mul(form_action_matrix(d, g), form_action_matrix(d, h))
        assert lhs == rhs
        assert form_action_matrix(d, linalg.identity(2)) == linalg.identity(d + 1)


def test_random_sl2_has_determinant_one():
    rng = random.Random(5)
    for _ in range(10):
        g = random_sl2(rng)
        assert g[0][0] * g[1][1] - g[0][1] * g[1][0] == 1


@settings(max_examples=20)
@given(seeds)
def test_sym_invariants_fixed(seed):
    g = random_sl2(random.Random(seed))
    for p in sym3_invariants().values():
        assert act_on_double(3, g, p) == p
    for p in sym4_invariants().values():
        assert act_on_double(4, g, p) == p


@settings(max_examples=20)
@given(seeds)
def test_sym_moment_ideals_equivariant(seed):
    g = random_sl2(random.Random(seed))
    for d in (3, 4):
        I = sym_moment_ideal(d)
        gb = I.groebner()
        for p in I.generators:
            assert gb.reduce(act_on_double(d, g, p)) == 0


# -- S3 side -------------------------------------------------------------------

def test_reynolds_is_a_projection():
    y1, y2, w1, w2 = s3_ring().gens()
    for p in (y1 ** 2 * w2, y1 * y2 * w1 + w2 ** 3, y1 ** 4 - 3 * w1 * y2):
        r = reynolds(p)
        assert reynolds(r) == r
        assert s3_act((1, 0, 2), r) == r and s3_act((1, 2, 0), r) == r
    assert len(s3_elements()) == 6


def test_s3_invariants_fixed():
    for p in s3_invariants().values():
        for g in s3_elements():
            assert s3_act(g, p) == p


# -- SO3 -------------------------------------------------------------------------

def test_so3_moment_ideals_printed():
    R1 = so3_ring(1)
    printed1 = [R1.parse(s) for s in ("x1*y2 - x2*y1", "x1*y3 - x3*y1", "x2*y3 - x3*y2")]
    assert list(so3_moment_ideal(1).generators) == printed1
    R2 = so3_ring(2)
    printed2 = [R2.parse(s) for s in ("x1*z2 + y1*u2 - x2*z1 - y2*u1", "x1*z3 + y1*u3 - x3*z1 - y3*u1",
                                      "x2*z3 + y2*u3 - x3*z2 - y3*u2")]
    assert list(so3_moment_ideal(2).generators) == printed2


def test_so3_moment_matrix_skew_and_entries():
    for n in (1, 2):
        M = so3_moment_matrix(n)
        assert M.is_skew()
        assert ideal_equality(Ideal(M.ring, M.entries()), so3_moment_ideal(n))


@settings(max_examples=20)
@given(seeds)
def test_so3_invariants_and_moment_ideal(seed):
    g = random_so3(random.Random(seed))
    assert linalg.mat_mul(g, linalg.transpose(g)) == linalg.identity(3)
    for n in (1, 2):
        for p in so3_invariants(n).values():
            assert so3_act(n, g, p) == p
        I = so3_moment_ideal(n)
        gb = I.groebner()
        for p in I.generators:
            assert gb.reduce(so3_act(n, g, p)) == 0


# -- sl2 + C^2 ------------------------------------------------------------------

def test_sl2c2_moment_ideal_printed():
    R = sl2c2_ring()
    printed = [R.parse(s) for s in ("2*a11*b12 - 2*a12*b11 + x1*y2", "a12*b21 - a21*b12 + 1/2*(x1*y1 - x2*y2)",
                                    "2*a21*b11 - 2*a11*b21 + x2*y1")]
    I = sl2c2_moment_ideal()
    assert list(I.generators) == printed
    assert all(g.is_homogeneous() and g.total_degree() == 2 for g in I.generators)
    assert all(g.evaluate([0] * 10) == 0 for g in I.generators)


def test_sl2c2_moment_matrix_entries_generate():
    M = sl2c2_moment_matrix()
    assert M.trace() == 0
    assert ideal_equality(Ideal(M.ring, M.entries()), sl2c2_moment_ideal())


def test_sl2c2_invariant_degrees_and_det():
    inv = sl2c2_invariants()
    assert [p.total_degree() for p in inv] == [2, 2, 2, 2, 3, 3, 4, 3, 3, 4, 3, 3, 4]
    R = sl2c2_ring()
    a11, a12, a21 = R.var("a11"), R.var("a12"), R.var("a21")
    trA2 = 2 * a11 ** 2 + 2 * a12 * a21
    assert inv[0] == trA2 * mpq(-1, 2)
    assert [SL2C2_NAMES[k] for k in OMITTED] == ["yAx", "yBx", "yABx", "x|ABx", "y|ABy"]


@settings(max_examples=20)
@given(seeds)
def test_sl2c2_invariants_fixed_with_dual_action_on_y(seed):
    g = random_sl2(random.Random(seed))
    for p in sl2c2_invariants():
        assert sl2c2_act(g, p) == p
    gb = sl2c2_moment_ideal().groebner()
    for p in sl2c2_moment_ideal().generators:
        assert gb.reduce(sl2c2_act(g, p)) == 0


def test_y_transforms_dually():
    # y^t x is invariant only when y moves by g^-t
    g = linalg.qmatrix([[2, 1], [1, 1]])
    yx = sl2c2_invariants()[3]
    assert sl2c2_act(g, yx) == yx


def test_h_relations_printed():
    from symred.sl2 import z8_ring
    R = z8_ring()
    printed = ["(2*z2 - z4)*z7 + 4*z1*z8", "(2*z2 + z4)*z8 + 4*z3*z7", "(2*z2 + z4)*z5 + 4*z1*z6",
               "(2*z2 - z4)*z6 + 4*z3*z5", "(2*z2 + z4)*(2*z2 - z4) - 16*z1*z3", "(2*z2 + z4)*z4^2 - 4*z6*z7",
               "(2*z2 - z4)*z4^2 - 4*z5*z8", "z3*z4^2 + z6*z8", "z1*z4^2 + z5*z7"]
    assert h_relations() == [R.parse(s) for s in printed]
    assert all(h.is_homogeneous() for h in h_relations())


def test_minors_of_m_frozen():
    # computed once from the matrix M; minors in lexicographic (rows, cols) order
    table = [(k, i, c) for k, i, c in minors_vs_h()]
    assert table == [(0, 4, 1), (1, 0, -1), (2, 1, -1), (3, 3, -1), (4, 6, mpq(1, 4)), (5, 7, 1),
                     (6, 2, -1), (7, 8, 1), (8, 5, mpq(1, 4))]
    assert len(m_matrix().minors(2)) == 9


def test_z4_sign_frozen():
    I = sl2c2_moment_ideal()
    gb = I.groebner()
    plus = [i + 1 for i, h in enumerate(h_relations()) if gb.reduce(h.compose(sl2c2_z(1), I.ring))]
    minus = [i + 1 for i, h in enumerate(h_relations()) if gb.reduce(h.compose(sl2c2_z(-1), I.ring))]
    assert plus == [1, 2, 3, 4, 6, 7]
    assert minus == []


# -- reports (frozen values) ----------------------------------------------------------

def test_sym3_report_frozen():
    rep = sym3_quotient_check()
    assert rep.passed
    assert [str(p) for p in rep.data["kernel"].generators] == ["F^4 - 16*d0*d4"]


def test_sym4_report_frozen():
    rep = sym4_quotient_check()
    assert rep.passed
    assert rep.data["h_sl2"] == rep.data["h_s3"] == [1, 0, 3, 4, 6, 10, 17, 18, 31]
    assert rep.data["correspondence"] == {"P20": mpq(3, 2), "P11": mpq(1, 2), "P02": mpq(2, 3), "P30": mpq(27, 4),
                                          "P21": mpq(3, 2), "P12": 1, "P03": 2}
    assert sorted(g.weighted_degree() for g in rep.data["kernel_sl2"].generators)[:2] == [5, 5]


def test_adjoint_report_frozen():
    rep = so3_quotient_checks()
    assert rep.passed
    assert rep.data["dim_zero_fibre_theta2"] == 9 and rep.data["quotient_dim_theta2"] == 6


def test_sl2c2_report_frozen():
    rep = sl2c2_presentation_check()
    assert rep.passed, rep.summary()
    assert rep.data["dim_Z"] == 4 and rep.data["dim_zero_fibre"] == 7
    assert rep.data["literal_sign_failures"] == [1, 2, 3, 4, 6, 7]


# -- Poincare series ------------------------------------------------------------------

def test_poincare_expansion_and_product():
    assert [int(c) for c in series_expand(poincare_series(), 5)] == list(POINCARE_EXPANSION)
    assert len(hilbert_28()) == 29 and hilbert_28()[28] == 1 and sum(HILBERT_28.values()) == 0


def test_poincare_report():
    rep = poincare_check()
    assert rep.passed and rep.data["graded_dims"] == [1, 0, 4, 6, 13, 24]
