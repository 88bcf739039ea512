from itertools import combinations, product

from hypothesis import given, strategies as st

from symred import Ideal, ring
from symred.ideals import (RingMapKernelQuery, contains_ideal, elimination_ideal, ideal_equality,
                           krull_dimension, minimal_generator_count, radical_membership, ring_map_kernel,
                           same_variety, saturation, singular_locus_ideal, subalgebra_membership,
                           weighted_hilbert_series)

R = ring("x y z")
x, y, z = R.gens()

monomial_exps = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)).filter(any)


def _brute_dimension(exps):
    """Largest variable set containing no generator's support."""
    best = 0
    for k in range(4):
        for S in combinations(range(3), k):
            if all(any(e[i] and i not in S for i in range(3)) for e in exps):
                best = max(best, k)
    return best


def _brute_hilbert(exps, top):
    counts = [0] * (top + 1)
    for e in product(range(top + 1), repeat=3):
        d = sum(e)
        if d <= top and not any(all(a >= b for a, b in zip(e, g)) for g in exps):
            counts[d] += 1
    return counts


@given(st.lists(monomial_exps, min_size=1, max_size=4))
def test_monomial_dimension_and_hilbert_function(exps):
    I = Ideal(R, [R.monomial(e) for e in exps])
    assert krull_dimension(I) == _brute_dimension(exps)
    assert weighted_hilbert_series(I).coefficients(6) == _brute_hilbert(exps, 6)


def test_twisted_cubic_implicitisation():
    T = ring("t")
    t = T.var("t")
    K = ring_map_kernel(RingMapKernelQuery(R, (t, t ** 2, t ** 3)))
    assert ideal_equality(K, Ideal(R, [y - x ** 2, z - x ** 3]))
    assert krull_dimension(K) == 1


def test_homogeneous_kernel_with_degree_bound():
    S = ring("s t")
    s, t = S.gens()
    W = ring("x y z", weights=(2, 2, 2))
    a, b, c = W.gens()
    K = ring_map_kernel(RingMapKernelQuery(W, (s * s, s * t, t * t)), degree_bound=8)
    assert list(K.generators) == [b ** 2 - a * c] or list(K.generators) == [a * c - b ** 2]


def test_elimination():
    I = Ideal(R, [x - y ** 2, z - y ** 3])
    E = elimination_ideal(I, ["x", "z"])
    assert ideal_equality(E, Ideal(E.ring, [E.ring.var("x") ** 3 - E.ring.var("z") ** 2]))


def test_saturation():
    I = Ideal(R, [x ** 2 * y, x * y ** 2])
    assert ideal_equality(saturation(I, x), Ideal(R, [y]))
    J = saturation(Ideal(R, [x * (y - 1), x * z]), x)
    assert ideal_equality(J, Ideal(R, [y - 1, z]))


def test_radical_and_varieties():
    assert radical_membership(x, Ideal(R, [x ** 3]))
    assert not Ideal(R, [x ** 3]).groebner().contains(x)
    assert not radical_membership(y, Ideal(R, [x ** 3]))
    assert same_variety(Ideal(R, [x ** 2, y ** 3]), Ideal(R, [x, y]))
    assert not ideal_equality(Ideal(R, [x ** 2, y ** 3]), Ideal(R, [x, y]))
    assert contains_ideal(Ideal(R, [x, y]), Ideal(R, [x * y, x ** 2]))


def test_singular_locus_of_cusp_and_cone():
    cusp = Ideal(R, [y ** 2 - x ** 3, z])
    assert same_variety(singular_locus_ideal(cusp, 2), Ideal(R, [x, y, z]))
    cone = Ideal(R, [x * y - z ** 2])
    assert same_variety(singular_locus_ideal(cone, 1), Ideal(R, [x, y, z]))
    plane = Ideal(R, [x + y + z])
    assert singular_locus_ideal(plane, 1).groebner().is_unit()


def test_minimal_generators():
    I = Ideal(R, [x * y, x * y * z, y * z, x * y + y * z, x ** 2])
    assert minimal_generator_count(I) == 3


def test_subalgebra_membership_symmetric():
    e1, e2 = x + y, x * y
    res = subalgebra_membership(x ** 2 + y ** 2, [e1, e2])
    assert res.member
    assert res.expression.compose([e1, e2], R) == x ** 2 + y ** 2
    assert not subalgebra_membership(x, [e1, e2]).member


def test_subalgebra_membership_modulo():
    # odd x separates +1 and -1 on V(x^3 - x); polynomials in x^2 cannot
    assert not subalgebra_membership(x, [x ** 2], modulus=Ideal(R, [x ** 3 - x])).member
    assert subalgebra_membership(x ** 3, [x ** 2], modulus=Ideal(R, [x ** 3 - x ** 2])).member
