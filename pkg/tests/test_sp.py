import random

import pytest
from hypothesis import given, settings, strategies as st

from symred import Ideal, linalg
from symred.ideals import RingMapKernelQuery, ideal_equality, krull_dimension, ring_map_kernel
from symred.sp import (InadmissiblePartition, NotInZ, Partition, SpInstance, fu_resolvable, moment_value,
                       nu_map, orbit_decomposition, orbit_preimage, orbit_representative, pluecker_relations,
                       random_orthogonal, random_symplectic, random_zero_fibre_point, reducedness_witnesses,
                       sp_invariants, sp_moment_ideal, z_membership, z_ring)

seeds = st.integers(0, 2 ** 32 - 1)


def act(g, p, inst: SpInstance):
    """X -> g X on polynomials in the entries of X."""
    R = inst.ring
    images = []
    for name in R.names:
        i, j = _position(name, inst)
        images.append(sum((g[i - 1][k] * inst.x(k + 1, j) for k in range(2 * inst.n)), R.zero()))
    return p.compose(images, R)


def _position(name, inst):
    for i in range(1, 2 * inst.n + 1):
        for j in range(1, 2 * inst.m + 1):
            if inst.x(i, j).variables() == (name,):
                return i, j
    raise KeyError(name)


# -- momentum ideals ----------------------------------------------------------

def test_moment_ideal_m1_printed():
    inst = SpInstance(1, 1)
    R = inst.ring
    printed = [R.parse(s) for s in ("x11*x12", "x11*x22 + x12*x21", "x21*x22")]
    assert ideal_equality(sp_moment_ideal(1, 1), Ideal(R, printed))


def test_moment_ideal_m2_printed():
    R = SpInstance(1, 2).ring
    printed = [R.parse(s) for s in ("x11*x13 + x12*x14", "x11*x23 + x12*x24 + x13*x21 + x14*x22",
                                    "x21*x23 + x22*x24")]
    assert ideal_equality(sp_moment_ideal(1, 2), Ideal(R, printed))


def test_moment_ideal_m3_printed():
    R = SpInstance(1, 3).ring
    printed = [R.parse(s) for s in ("x11*x14 + x12*x15 + x13*x16",
                                    "x11*x24 + x12*x25 + x13*x26 + x14*x21 + x15*x22 + x16*x23",
                                    "x21*x24 + x22*x25 + x23*x26")]
    I = sp_moment_ideal(1, 3)
    assert len(I.generators) == 3 and len(I.ring) == 12
    assert ideal_equality(I, Ideal(R, printed))


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_moment_ideal_size(n, m):
    I = sp_moment_ideal(n, m)
    assert len(I.generators) == (2 * n + 1) * n and len(I.ring) == 4 * n * m


@settings(max_examples=20)
@given(seeds, st.sampled_from([(1, 1), (1, 2), (2, 1)]))
def test_moment_ideal_is_invariant(seed, nm):
    n, m = nm
    inst = SpInstance(n, m)
    g = random_symplectic(n, random.Random(seed))
    gb = sp_moment_ideal(n, m).groebner()
    for p in sp_moment_ideal(n, m).generators:
        assert gb.reduce(act(g, p, inst)) == 0


@pytest.mark.parametrize("n,m", [(1, 2), (1, 3), (1, 4)])
def test_complete_intersection_dimension(n, m):
    assert krull_dimension(sp_moment_ideal(n, m)) == 4 * m * n - 2 * n * n - n


# -- invariants and Pluecker relations ----------------------------------------------

def test_single_copy_invariant_is_det():
    inst = SpInstance(1, 1)
    (d,) = sp_invariants(1, 2)
    assert d == inst.x(1, 1) * inst.x(2, 2) - inst.x(1, 2) * inst.x(2, 1)


def test_four_copy_invariants_are_minors():
    inst = SpInstance(1, 2)
    z = sp_invariants(1, 4)
    assert len(z) == 6
    X = inst.X
    assert z == X.minors(2)


def test_three_invariants_have_no_relations():
    K = ring_map_kernel(RingMapKernelQuery(z_ring(3), tuple(sp_invariants(1, 3, 2))))
    assert not K.generators


@settings(max_examples=20)
@given(seeds)
def test_invariants_fixed_by_symplectic_group(seed):
    rng = random.Random(seed)
    for n, m in ((1, 2), (2, 2)):
        inst = SpInstance(n, m)
        g = random_symplectic(n, rng)
        for p in sp_invariants(n, 2 * m, m):
            assert act(g, p, inst) == p


@pytest.mark.parametrize("s", [4, 6])
def test_pluecker_relations_vanish(s):
    images = sp_invariants(1, s, s // 2)
    rels = pluecker_relations(s)
    assert len(rels) == (1 if s == 4 else 16)
    for r in rels:
        assert r.compose(images, images[0].ring) == 0


def test_pluecker_unsupported():
    with pytest.raises(ValueError):
        pluecker_relations(5)


# -- nu and orbit preimages -----------------------------------------------------------

def test_nu_of_zero():
    assert linalg.is_zero(nu_map(linalg.zeros(2, 4), 1, 2))


@settings(max_examples=25)
@given(seeds, st.sampled_from([(1, 2), (1, 3), (2, 2), (2, 3)]))
def test_nu_lands_in_z_and_is_invariant(seed, nm):
    n, m = nm
    rng = random.Random(seed)
    X = random_zero_fibre_point(n, m, rng)
    assert linalg.is_zero(moment_value(X, n, m))
    A = nu_map(X, n, m)
    assert z_membership(A, n, m)
    g = random_symplectic(n, rng)
    assert nu_map(linalg.mat_mul(g, X), n, m) == A


@settings(max_examples=25)
@given(seeds, st.sampled_from([(1, 2), (1, 3), (2, 2), (2, 4)]))
def test_orbit_preimage_round_trip(seed, nm):
    n, m = nm
    A = nu_map(random_zero_fibre_point(n, m, random.Random(seed)), n, m)
    X = orbit_preimage(A, n, m)
    assert nu_map(X, n, m) == A
    assert linalg.is_zero(moment_value(X, n, m))


def test_orbit_preimage_of_zero():
    assert linalg.is_zero(orbit_preimage(linalg.zeros(4, 4), 1, 2))


def test_orbit_preimage_very_even_representative():
    for label in ("I", "II"):
        A = orbit_representative(2, 1, label)
        assert linalg.rank(A) == 2
        X = orbit_preimage(A, 1, 2)
        assert nu_map(X, 1, 2) == A and linalg.is_zero(moment_value(X, 1, 2))


def test_z_membership_rank_bound():
    assert z_membership(linalg.zeros(4, 4), 1, 2)
    A = orbit_representative(4, 2)  # rank 4 > min(2n, m) = 2 for n = 1
    assert z_membership(A, 2, 4)
    assert not z_membership(A, 1, 4)
    with pytest.raises(NotInZ):
        orbit_preimage(A, 1, 4)


def test_z_membership_rejects_non_square_zero():
    A = linalg.mat_mul(linalg.qmatrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]),
                       linalg.split_form(2))
    assert not z_membership(A, 1, 2)


def test_orthogonal_group_preserves_q():
    rng = random.Random(3)
    Q = linalg.split_form(3)
    for _ in range(5):
        h = random_orthogonal(3, rng)
        assert linalg.mat_mul(linalg.mat_mul(h, Q), linalg.transpose(h)) == Q


# -- partitions and Fu's criterion ------------------------------------------------------

def test_orbit_decomposition_examples():
    d3 = orbit_decomposition(1, 3)
    assert [str(p) for p in d3.closure] == ["[2^2,1^2]"]
    d2 = orbit_decomposition(1, 2)
    assert [str(p) for p in d2.closure] == ["[2^2]^I", "[2^2]^II"] and d2.components == 2
    d1 = orbit_decomposition(1, 1)
    assert [str(p) for p in d1.strata] == ["[1^2]"]


@pytest.mark.parametrize("m", [2, 4, 6])
def test_fu_very_even(m):
    assert fu_resolvable(Partition((2,) * m, "I"))
    assert fu_resolvable(Partition((2,) * m, "II"))


@pytest.mark.parametrize("m", [1, 3, 5])
def test_fu_two_ones(m):
    assert fu_resolvable(Partition((2,) * (m - 1) + (1, 1)))


def test_fu_examples_and_failures():
    assert fu_resolvable(Partition((1, 1)))
    assert fu_resolvable(Partition((3, 1)))  # q = 2 is excluded, but the two odd parts sit at 1, 2
    assert fu_resolvable(Partition((3, 1, 1, 1)))  # q = 4 = N
    assert not fu_resolvable(Partition((3, 2, 2, 1)))  # odd parts at positions 1 and 4
    assert fu_resolvable(Partition((3, 3, 1, 1)))
    assert not fu_resolvable(Partition((2, 2, 1, 1, 1, 1)))
    assert fu_resolvable(Partition((3, 3, 3, 3)))


@given(st.lists(st.sampled_from([1, 2, 3, 4, 5]), min_size=1, max_size=8))
def test_fu_matches_two_clause_definition(parts):
    try:
        p = Partition(tuple(parts), "I" if all(x % 2 == 0 for x in parts) else None)
    except InadmissiblePartition:
        return
    d = p.parts
    clause1 = any(all(x % 2 for x in d[:q]) and all(x % 2 == 0 for x in d[q:])
                  for q in range(0, len(d) + 1, 2) if q != 2)
    odd = [i for i, x in enumerate(d, 1) if x % 2]
    clause2 = len(odd) == 2 and odd[0] % 2 == 1 and odd[1] == odd[0] + 1
    assert fu_resolvable(p) == (clause1 or clause2)


def test_partition_admissibility():
    with pytest.raises(InadmissiblePartition):
        Partition((2, 1, 1))
    with pytest.raises(InadmissiblePartition):
        Partition((2, 2))  # very even needs a label
    with pytest.raises(InadmissiblePartition):
        Partition((3, 1), "I")


# -- reducedness reports ---------------------------------------------------------------

def test_single_copy_not_reduced():
    rep = reducedness_witnesses(1, 1)
    assert rep.passed and rep.data["reduced"] is False


def test_two_copy_quotient_frozen():
    rep = reducedness_witnesses(1, 2)
    assert rep.passed
    assert rep.data["dim_zero_fibre"] == 5
    assert rep.data["kernel_min_gens"] == 11
    assert rep.data["quotient_dim"] == 2


def test_three_copy_quotient_frozen():
    rep = reducedness_witnesses(1, 3)
    assert rep.passed
    assert rep.data["dim_zero_fibre"] == 9 and rep.data["quotient_dim"] == 6
