"""Sl2 examples: binary cubics and quartics, the adjoint (SO3) cases, and sl2 + C^2."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb
from typing import Sequence

import gmpy2
from gmpy2 import mpq

from . import linalg
from .groebner import Ideal, IncompleteBasis
from .ideals import (RingMapKernelQuery, ideal_equality, krull_dimension,
                     ring_map_kernel, same_variety, singular_locus_ideal, subalgebra_membership)
from .matrices import PolyMatrix
from .poly import Polynomial, VariableRegistry
from .report import VerificationReport
from .series import UniRationalFunction, series_expand, umul, uprod, one_minus_t, upoly


# -- binary forms -----------------------------------------------------------

@dataclass(frozen=True)
class BinaryForm:
    """sum binom(d, k) a_k x^(d-k) y^k with symbolic or rational coefficients."""

    degree: int
    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) != self.degree + 1:
            raise ValueError(f"a degree {self.degree} form has {self.degree + 1} coefficients")

    def __getitem__(self, k):
        return self.coefficients[k]


@lru_cache(maxsize=None)
def sym_ring(d: int) -> VariableRegistry:
    names = [f"a{k}" for k in range(d + 1)] + [f"b{k}" for k in range(d + 1)]
    return VariableRegistry(tuple(names))


def sym_forms(d: int) -> tuple[BinaryForm, BinaryForm]:
    R = sym_ring(d)
    A = BinaryForm(d, tuple(R.var(f"a{k}") for k in range(d + 1)))
    B = BinaryForm(d, tuple(R.var(f"b{k}") for k in range(d + 1)))
    return A, B


def _check_degree(d: int):
    if d not in (3, 4):
        raise ValueError(f"unsupported form degree {d}")


def sigma_pairing(d: int, A: BinaryForm, B: BinaryForm) -> Polynomial:
    """The invariant pairing on S^3 (skew) or S^4 (symmetric)."""
    _check_degree(d)
    if A.degree != d or B.degree != d:
        raise ValueError("form degrees do not match")
    a, b = A.coefficients, B.coefficients
    if d == 3:
        return a[0] * b[3] - a[3] * b[0] - 3 * (a[1] * b[2] - a[2] * b[1])
    return a[0] * b[4] + b[0] * a[4] - 4 * a[1] * b[3] - 4 * b[1] * a[3] + 6 * a[2] * b[2]


def discriminant_cubic(A: BinaryForm) -> Polynomial:
    if A.degree != 3:
        raise ValueError("the discriminant is implemented for cubics")
    a0, a1, a2, a3 = A.coefficients
    return (-4 * a0 * a2 ** 3 - 4 * a1 ** 3 * a3 - a0 ** 2 * a3 ** 2
            + 3 * a1 ** 2 * a2 ** 2 + 6 * a0 * a1 * a2 * a3)


def quartic_q(A: BinaryForm) -> Polynomial:
    a = A.coefficients
    return a[0] * a[4] - 4 * a[1] * a[3] + 3 * a[2] ** 2


def catalecticant(A: BinaryForm) -> Polynomial:
    a = A.coefficients
    R = a[0].ring
    return PolyMatrix(R, [[a[0], a[1], a[2]], [a[1], a[2], a[3]], [a[2], a[3], a[4]]]).det()


def quartic_t(A: BinaryForm, B: BinaryForm) -> Polynomial:
    a, b = A.coefficients, B.coefficients
    R = a[0].ring
    return PolyMatrix(R, [[a[0], 3 * a[1], 3 * a[2], a[3]],
                          [a[1], 3 * a[2], 3 * a[3], a[4]],
                          [b[0], 3 * b[1], 3 * b[2], b[3]],
                          [b[1], 3 * b[2], 3 * b[3], b[4]]]).det()


def polarize(f: Polynomial, a_vars: Sequence[str], b_vars: Sequence[str], order: int) -> list[Polynomial]:
    """Coefficients of lam^0 .. lam^order in f(A + lam B)."""
    R = f.ring
    lam = R.fresh_name("lam")
    S = R.extended([lam], front=False)
    images = list(S.gens()[:len(R)])
    L = S.var(lam)
    for a, b in zip(a_vars, b_vars):
        images[R.index(a)] = S.var(a) + L * S.var(b)
    g = f.compose(images, S)
    pieces: list[dict] = [{} for _ in range(order + 1)]
    for e, c in g.terms.items():
        k = e[-1]
        if k > order:
            raise ValueError(f"f has degree above {order} in the polarised variables")
        pieces[k][e[:-1]] = c
    return [Polynomial(R, p, _trusted=True) for p in pieces]


@lru_cache(maxsize=None)
def _symbolic_action(d: int) -> tuple[tuple[Polynomial, ...], ...]:
    """rho[j][k] in QQ[g11, g12, g21, g22]: a'_j = sum_k rho[j][k] a_k.

    x -> g11 x + g21 y, y -> g12 x + g22 y on the variables of the form; this is
    a left action of Sl2 on forms.
    """
    G = VariableRegistry(("g11", "g12", "g21", "g22", "X", "Y"))
    g11, g12, g21, g22, X, Y = G.gens()
    gx = g11 * X + g21 * Y
    gy = g12 * X + g22 * Y
    rows: list[list] = [[None] * (d + 1) for _ in range(d + 1)]
    small = G.subring(["g11", "g12", "g21", "g22"])
    for k in range(d + 1):
        image = gx ** (d - k) * gy ** k * comb(d, k)
        by_j: dict[int, dict] = {}
        for e, c in image.terms.items():
            j = e[5]
            by_j.setdefault(j, {})[e[:4]] = c / comb(d, j)
        for j in range(d + 1):
            rows[j][k] = Polynomial(small, by_j.get(j, {}), _trusted=True)
    return tuple(tuple(r) for r in rows)


def form_action_matrix(d: int, g) -> list[list]:
    """Rational matrix of g in Sl2 acting on binomial coefficients of degree-d forms."""
    vals = [g[0][0], g[0][1], g[1][0], g[1][1]]
    return [[p.evaluate(vals) for p in row] for row in _symbolic_action(d)]


def act_on_double(d: int, g, p: Polynomial) -> Polynomial:
    """p(g.A, g.B) for p on the double S^d + S^d."""
    R = sym_ring(d)
    rho = form_action_matrix(d, g)
    images = []
    for stem in "ab":
        for j in range(d + 1):
            images.append(sum((R.var(f"{stem}{k}") * rho[j][k] for k in range(d + 1) if rho[j][k]), R.zero()))
    return p.compose(images, R)


def random_sl2(rng: random.Random, factors: int = 4) -> list[list]:
    """Product of rational unipotents and a diagonal torus element."""
    g = linalg.identity(2)
    for _ in range(factors):
        t = mpq(rng.randint(-3, 3), rng.randint(1, 3))
        u = [[1, t], [0, 1]] if rng.random() < 0.5 else [[1, 0], [t, 1]]
        g = linalg.mat_mul(g, linalg.qmatrix(u))
    s = mpq(rng.choice([1, -1, 2, -2, 3]), rng.choice([1, 2, 3]))
    return linalg.mat_mul(g, linalg.qmatrix([[s, 0], [0, 1 / s]]))


def sym_moment_ideal(d: int) -> Ideal:
    _check_degree(d)
    R = sym_ring(d)
    a = [R.var(f"a{k}") for k in range(d + 1)]
    b = [R.var(f"b{k}") for k in range(d + 1)]
    if d == 3:
        gens = [a[1] * b[3] + a[3] * b[1] - 2 * a[2] * b[2],
                a[0] * b[3] + a[3] * b[0] - a[1] * b[2] - a[2] * b[1],
                2 * a[1] * b[1] - a[0] * b[2] - a[2] * b[0]]
    else:
        gens = [b[4] * a[1] - 3 * b[3] * a[2] - b[1] * a[4] + 3 * b[2] * a[3],
                a[0] * b[4] - b[0] * a[4] - 2 * a[1] * b[3] + 2 * b[1] * a[3],
                b[0] * a[3] - b[3] * a[0] - 3 * b[1] * a[2] + 3 * b[2] * a[1]]
    return Ideal(R, gens)


def _ab_names(d: int) -> tuple[list[str], list[str]]:
    return [f"a{k}" for k in range(d + 1)], [f"b{k}" for k in range(d + 1)]


def sym3_invariants() -> dict[str, Polynomial]:
    """F = sigma(A, B) and the polarised discriminants d0..d4."""
    A, B = sym_forms(3)
    an, bn = _ab_names(3)
    out = {"F": sigma_pairing(3, A, B)}
    for i, p in enumerate(polarize(discriminant_cubic(A), an, bn, 4)):
        out[f"d{i}"] = p
    return out


def sym4_invariants() -> dict[str, Polynomial]:
    """Q0..Q2, C0..C3 by polarisation, and the determinant T."""
    A, B = sym_forms(4)
    an, bn = _ab_names(4)
    out = {}
    for i, p in enumerate(polarize(quartic_q(A), an, bn, 2)):
        out[f"Q{i}"] = p
    for i, p in enumerate(polarize(catalecticant(A), an, bn, 3)):
        out[f"C{i}"] = p
    out["T"] = quartic_t(A, B)
    return out


def _tag_ring(names: Sequence[str], polys: Sequence[Polynomial]) -> VariableRegistry:
    return VariableRegistry(tuple(names), tuple(p.weighted_degree() for p in polys))


def sym3_quotient_check() -> VerificationReport:
    rep = VerificationReport("sym3", "S^3 C^2 double: three invariants with one relation (A3 singularity)",
                             "binary cubics, reduction modulo the momentum ideal")
    with rep.timed():
        inv = sym3_invariants()
        I = sym_moment_ideal(3)
        gens = [inv["F"], inv["d0"], inv["d4"]]
        T = _tag_ring(["F", "d0", "d4"], gens)
        K = ring_map_kernel(RingMapKernelQuery(T, tuple(gens), I))
        F, d0, d4 = T.gens()
        rel = 16 * d0 * d4 - F ** 4
        rep.data["kernel"] = K
        rep.check("16 d0 d4 - F^4 in kernel", K.groebner().contains(rel), f"kernel basis {list(map(str, K))}")
        principal = Ideal(T, [rel])
        rep.check("kernel = (16 d0 d4 - F^4) at radical level", same_variety(K, principal))
        rep.check("kernel = (16 d0 d4 - F^4) exactly", ideal_equality(K, principal))
        for name in ("d1", "d2", "d3"):
            res = subalgebra_membership(inv[name], gens, I, tag_stem="s")
            expr = "" if res.expression is None else str(res.expression).replace("s1", "F").replace("s2", "d0").replace("s3", "d4")
            rep.check(f"{name} in QQ[F, d0, d4] mod I_mu", res.member, expr)
    return rep


# -- S3 on (C^3)_0 + (C^3)_0 -----------------------------------------------

@lru_cache(maxsize=None)
def s3_ring() -> VariableRegistry:
    """Coordinates y1, y2 (y3 = -y1 - y2) and w1, w2 (w3 = -w1 - w2)."""
    return VariableRegistry(("y1", "y2", "w1", "w2"))


def _s3_coordinates() -> tuple[list[Polynomial], list[Polynomial]]:
    R = s3_ring()
    y1, y2, w1, w2 = R.gens()
    return [y1, y2, -y1 - y2], [w1, w2, -w1 - w2]


def s3_elements() -> list[tuple[int, int, int]]:
    return list(permutations(range(3)))


def s3_act(perm: Sequence[int], p: Polynomial) -> Polynomial:
    """Permute indices: coordinate i of the image is coordinate perm[i] of the source."""
    ys, ws = _s3_coordinates()
    return p.compose([ys[perm[0]], ys[perm[1]], ws[perm[0]], ws[perm[1]]], s3_ring())


def reynolds(p: Polynomial) -> Polynomial:
    acc = p.ring.zero()
    for g in s3_elements():
        acc = acc + s3_act(g, p)
    return acc * mpq(1, 6)


def s3_invariants() -> dict[str, Polynomial]:
    """Reynolds images of y1^i w1^j, i + j in {2, 3}, named P{i}{j}."""
    R = s3_ring()
    y1, _, w1, _ = R.gens()
    out = {}
    for deg in (2, 3):
        for j in range(deg + 1):
            i = deg - j
            out[f"P{i}{j}"] = reynolds(y1 ** i * w1 ** j)
    return out


def graded_quotient_dims(K: Ideal, top: int) -> list[int]:
    """dim_k of QQ[tags]/K for weighted degrees k = 0..top (needs K exact through top)."""
    gb = K.groebner(degree_bound=K.truncated_at)
    if not gb.complete and (gb.degree_bound is None or gb.degree_bound < top):
        raise IncompleteBasis(f"kernel known only through degree {gb.degree_bound}")
    R = K.ring
    lead = [e for e, p in zip(gb.leading_monomials(), gb.basis) if p.weighted_degree() <= top]
    dims = []
    for k in range(top + 1):
        count = 0
        for e in _monomials_of_weight(R.weights, k):
            if not any(all(a <= b for a, b in zip(m, e)) for m in lead):
                count += 1
        dims.append(count)
    return dims


def _monomials_of_weight(weights: Sequence[int], k: int):
    n = len(weights)

    def rec(i, rest, acc):
        if i == n:
            if rest == 0:
                yield tuple(acc)
            return
        w = weights[i]
        for e in range(rest // w + 1):
            acc.append(e)
            yield from rec(i + 1, rest - e * w, acc)
            acc.pop()

    yield from rec(0, k, [])


def _bidegree(p: Polynomial, first: int) -> tuple[int, int]:
    e = next(iter(p.terms))
    return sum(e[:first]), sum(e[first:])


def _rational_root(r: mpq, k: int) -> list[mpq]:
    """Rational solutions of c^k = r."""
    if r == 0:
        return []
    if k == 1:
        return [r]
    sign = 1 if r > 0 else -1
    if sign < 0 and k % 2 == 0:
        return []
    num, den = gmpy2.iroot(abs(r.numerator), k), gmpy2.iroot(r.denominator, k)
    if not (num[1] and den[1]):
        return []
    c = mpq(num[0], den[0]) * sign
    return [c, -c] if k % 2 == 0 else [c]


def _ratio_equations(K_src: Ideal, K_dst: Ideal) -> list[tuple[tuple[int, ...], mpq]] | None:
    """Equations prod c^e = r forced by requiring phi_c(g) in K_dst for each source generator g.

    phi_c scales tag i by c_i. The normal forms of the monomials of g modulo
    K_dst must admit a one-dimensional family of weights u_m = c^m.
    """
    gb = K_dst.groebner(degree_bound=K_dst.truncated_at)
    S = K_dst.ring
    eqs = []
    for g in K_src.generators:
        mons = sorted(g.terms)
        nfs = [gb.reduce(S.monomial(m, g.terms[m])) for m in mons]
        support = sorted({e for p in nfs for e in p.terms})
        if not support:
            continue
        rows = [[p.coefficient(e) for p in nfs] for e in support]
        null = linalg.nullspace(rows)
        if not null:
            return None  # no scaling puts g into K_dst
        if len(null) > 1:
            continue  # underdetermined here; the final equality check covers it
        u = null[0]
        if any(x == 0 for x in u):
            return None
        m0 = mons[0]
        for m, x in zip(mons[1:], u[1:]):
            eqs.append((tuple(a - b for a, b in zip(m, m0)), x / u[0]))
    return eqs


_SEEDS = sorted({mpq(s * p, q) for s in (1, -1) for p in (1, 2, 3, 4, 6, 12) for q in (1, 2, 3, 4, 6, 12)},
                key=lambda c: (c.numerator * c.numerator + c.denominator, -c))


def _row_reduce_multiplicative(eqs, n: int):
    """Integer echelon form of the exponent rows; right-hand sides combine multiplicatively."""
    rows = [(list(e), mpq(r)) for e, r in eqs]
    pivots = []
    r0 = 0
    for col in range(n):
        while True:
            live = [i for i in range(r0, len(rows)) if rows[i][0][col]]
            if not live:
                break
            best = min(live, key=lambda i: abs(rows[i][0][col]))
            rows[r0], rows[best] = rows[best], rows[r0]
            pe, pr = rows[r0]
            done = True
            for i in range(r0 + 1, len(rows)):
                e, r = rows[i]
                if e[col]:
                    q = e[col] // pe[col]
                    rows[i] = ([a - q * b for a, b in zip(e, pe)], r / pr ** q)
                    if rows[i][0][col]:
                        done = False
            if done:
                break
        if any(rows[i][0][col] for i in range(r0, len(rows))):
            pivots.append(col)
            r0 += 1
    for e, r in rows[r0:]:
        if r != 1:
            return None
    return rows[:r0], pivots


def _solve_monomial_system(eqs, n: int) -> list | None:
    """Rational c (all nonzero) with prod_i c_i^e_i = r for every equation.

    Free columns of the echelon form are the torus directions; they are tried
    over small rationals until back substitution only needs rational roots.
    """
    reduced = _row_reduce_multiplicative(eqs, n)
    if reduced is None:
        return None
    rows, pivots = reduced
    free = [i for i in range(n) if i not in pivots]

    def back(c, k):
        if k < 0:
            return c
        e, r = rows[k]
        p = pivots[k]
        known = mpq(1)
        for i in range(p + 1, n):
            if e[i]:
                known *= c[i] ** e[i]
        target = r / known
        roots = _rational_root(target, e[p]) if e[p] > 0 else _rational_root(1 / target, -e[p])
        for v in roots:
            d = list(c)
            d[p] = v
            out = back(d, k - 1)
            if out is not None:
                return out
        return None

    for values in product(_SEEDS, repeat=len(free)):
        c = [None] * n
        for i, v in zip(free, values):
            c[i] = v
        out = back(c, len(rows) - 1)
        if out is not None:
            return out
    return None


def diagonal_correspondence(K_src: Ideal, K_dst: Ideal) -> list | None:
    """Scalars c with tag_i -> c_i tag_i carrying K_src onto K_dst, or None.

    Both tag rings must list their generators in matching degree order.
    """
    eqs = _ratio_equations(K_src, K_dst)
    if eqs is None:
        return None
    n = len(K_src.ring)
    c = _solve_monomial_system(eqs, n)
    if c is None:
        return None
    c = [mpq(1) if x is None else x for x in c]
    if not ideal_equality(map_tags(K_src, c, K_dst.ring), K_dst):
        return None
    return c


def map_tags(K: Ideal, scalars: Sequence, target: VariableRegistry) -> Ideal:
    images = [target.var(i) * s for i, s in enumerate(scalars)]
    return Ideal(target, [p.compose(images, target) for p in K.generators])


def sym4_quotient_check(top: int = 8) -> VerificationReport:
    rep = VerificationReport("sym4", "S^4 C^2 double: Q0..Q2, C0..C3 generate; quotient matches (C^3)_0^2 / S3",
                             "binary quartics, comparison with the symmetric group quotient")
    with rep.timed():
        inv = sym4_invariants()
        I = sym_moment_ideal(4)
        names = ["Q0", "Q1", "Q2", "C0", "C1", "C2", "C3"]
        gens = [inv[k] for k in names]
        res = subalgebra_membership(inv["T"], gens, I)
        rep.check("T in QQ[Q0..C3] mod I_mu", res.member,
                  "" if res.expression is None else _rename(res.expression, names))
        ys, ws = _s3_coordinates()
        probe = ys[0] ** 2 * ws[1] + ys[1] * ws[0]
        rp = reynolds(probe)
        rep.check("Reynolds operator idempotent", reynolds(rp) == rp)
        rep.check("Reynolds image fixed by (12) and (123)",
                  s3_act((1, 0, 2), rp) == rp and s3_act((1, 2, 0), rp) == rp)
        pinv = s3_invariants()
        pnames = list(pinv)
        pgens = [pinv[k] for k in pnames]
        TS, TP = _tag_ring(names, gens), _tag_ring(pnames, pgens)
        K1 = ring_map_kernel(RingMapKernelQuery(TS, tuple(gens), I))
        K2 = ring_map_kernel(RingMapKernelQuery(TP, tuple(pgens)))
        h1, h2 = graded_quotient_dims(K1, top), graded_quotient_dims(K2, top)
        rep.data.update(h_sl2=h1, h_s3=h2, kernel_sl2=K1, kernel_s3=K2)
        rep.check(f"graded kernel dimensions agree through degree {top}", h1 == h2, f"quotient dims {h1}")
        bd1 = [_bidegree(g, 5) for g in gens]
        bd2 = [_bidegree(g, 2) for g in pgens]
        rep.check("generator bidegrees agree", bd1 == bd2, str(bd1))
        c = diagonal_correspondence(K2, K1) if h1 == h2 and bd1 == bd2 else None
        rep.data["correspondence"] = None if c is None else dict(zip(pnames, c))
        dictionary = "none found" if c is None else ", ".join(f"{p} -> {s}*{q}" for p, s, q in zip(pnames, c, names))
        rep.check("generator correspondence carries the S3 kernel onto the Sl2 kernel", c is not None, dictionary)
        rep.note(f"relation degrees {sorted(p.weighted_degree() for p in K1)}; quotient dimension {krull_dimension(K1)}")
    return rep


def _rename(p: Polynomial, names: Sequence[str]) -> str:
    return str(Polynomial(VariableRegistry(tuple(names), p.ring.weights), p.terms, _trusted=True))


# -- SO3 on copies of C^3 ---------------------------------------------------

_VEC = ("x", "y", "z", "u")


@lru_cache(maxsize=None)
def so3_ring(n: int) -> VariableRegistry:
    """Double of theta_n: 2n vectors in C^3 (x, y for n = 1; x, y, z, u for n = 2)."""
    if n not in (1, 2):
        raise ValueError("theta_n is implemented for n = 1, 2")
    return VariableRegistry(tuple(f"{v}{i}" for v in _VEC[:2 * n] for i in (1, 2, 3)))


def so3_vectors(n: int) -> list[list[Polynomial]]:
    R = so3_ring(n)
    return [[R.var(f"{v}{i}") for i in (1, 2, 3)] for v in _VEC[:2 * n]]


def so3_moment_matrix(n: int) -> PolyMatrix:
    """-1/2 X J X^t Q with X = (X', X''), Q = I_3."""
    R = so3_ring(n)
    vecs = so3_vectors(n)
    X = PolyMatrix(R, [[v[i] for v in vecs] for i in range(3)])
    J = PolyMatrix.from_rational(R, linalg.symplectic_form(n))
    return (X @ J @ X.T).scale(mpq(-1, 2))


def so3_moment_ideal(n: int) -> Ideal:
    R = so3_ring(n)
    vecs = so3_vectors(n)
    half = len(vecs) // 2
    gens = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        gens.append(sum((vecs[k][i] * vecs[k + half][j] - vecs[k][j] * vecs[k + half][i] for k in range(half)),
                        R.zero()))
    return Ideal(R, gens)


def so3_invariants(n: int) -> dict[str, Polynomial]:
    """t_ij = <v_i, v_j> and the determinants T_ijk of triples."""
    R = so3_ring(n)
    vecs = so3_vectors(n)
    out = {}
    for i in range(len(vecs)):
        for j in range(i, len(vecs)):
            out[f"t{i + 1}{j + 1}"] = sum((vecs[i][k] * vecs[j][k] for k in range(3)), R.zero())
    for tri in combinations(range(len(vecs)), 3):
        out["T" + "".join(str(i + 1) for i in tri)] = PolyMatrix(R, [[vecs[i][k] for i in tri] for k in range(3)]).det()
    return out


def random_so3(rng: random.Random, factors: int = 4) -> list[list]:
    """Product of an even number of rational reflections of C^3."""
    g = linalg.identity(3)
    k = 0
    while k < 2 * factors:
        v = [mpq(rng.randint(-2, 2)) for _ in range(3)]
        b = sum((a * a for a in v), mpq(0))
        if not b:
            continue
        s = linalg.mat_add(linalg.identity(3), linalg.mat_scale([[a * c for c in v] for a in v], -2 / b))
        g = linalg.mat_mul(g, s)
        k += 1
    return g


def so3_act(n: int, g, p: Polynomial) -> Polynomial:
    R = so3_ring(n)
    vecs = so3_vectors(n)
    images = []
    for v in vecs:
        for i in range(3):
            images.append(sum((v[k] * g[i][k] for k in range(3) if g[i][k]), R.zero()))
    return p.compose(images, R)


def so3_quotient_checks() -> VerificationReport:
    rep = VerificationReport("adjoint", "sl2 adjoint doubles via SO3: A1 singularity and the orbit closure of [2^2]",
                             "SO3 on copies of C^3")
    with rep.timed():
        rep.check("moment matrix -1/2 X J X^t Q is skew", so3_moment_matrix(1).is_skew() and so3_moment_matrix(2).is_skew())
        # theta_1 double
        I1 = so3_moment_ideal(1)
        inv1 = so3_invariants(1)
        names1 = ["t11", "t12", "t22"]
        g1 = [inv1[k] for k in names1]
        T1 = _tag_ring(names1, g1)
        K1 = ring_map_kernel(RingMapKernelQuery(T1, tuple(g1), I1))
        t11, t12, t22 = T1.gens()
        rep.data["kernel_theta1"] = K1
        rep.check("theta1 kernel = (t12^2 - t11 t22): isolated A1", ideal_equality(K1, Ideal(T1, [t12 ** 2 - t11 * t22])),
                  f"kernel basis {list(map(str, K1))}")
        # theta_2 double
        I2 = so3_moment_ideal(2)
        inv2 = so3_invariants(2)
        tnames = [k for k in inv2 if k.startswith("t")]
        dets = [k for k in inv2 if k.startswith("T")]
        tg = [inv2[k] for k in tnames]
        gb2 = I2.groebner()
        for k in dets:
            res = subalgebra_membership(inv2[k], tg, I2)
            rep.check(f"{k} dispensable mod I_mu", res.member,
                      ("in I_mu" if gb2.contains(inv2[k]) else str(res.expression)) if res.member else "")
        dim_mu = krull_dimension(I2)
        rep.data["dim_zero_fibre_theta2"] = dim_mu
        rep.check("dim mu^-1(0) = 9", dim_mu == 9, f"dim = {dim_mu}")
        T2 = _tag_ring(tnames, tg)
        K2 = ring_map_kernel(RingMapKernelQuery(T2, tuple(tg), I2))
        qdim = krull_dimension(K2)
        rep.data["kernel_theta2"] = K2
        rep.data["quotient_dim_theta2"] = qdim
        rep.check("quotient dimension 6 = dim mu^-1(0) - 3", qdim == 6 == dim_mu - 3, f"dim = {qdim}")
        rep.note(f"ten t_ij: {len(K2)} basis elements in the relation ideal")
    return rep


# -- sl2 + C^2 --------------------------------------------------------------

@lru_cache(maxsize=None)
def sl2c2_ring() -> VariableRegistry:
    return VariableRegistry(("a11", "a12", "a21", "b11", "b12", "b21", "x1", "x2", "y1", "y2"))


@dataclass(frozen=True)
class Sl2DoubleInstance:
    """Symbolic (A, x, y, B) in sl2 + C^2 + C^2 + sl2."""

    @property
    def ring(self) -> VariableRegistry:
        return sl2c2_ring()

    @property
    def A(self) -> PolyMatrix:
        v = self.ring.var
        return PolyMatrix(self.ring, [[v("a11"), v("a12")], [v("a21"), -v("a11")]])

    @property
    def B(self) -> PolyMatrix:
        v = self.ring.var
        return PolyMatrix(self.ring, [[v("b11"), v("b12")], [v("b21"), -v("b11")]])

    @property
    def x(self) -> PolyMatrix:
        return PolyMatrix(self.ring, [[self.ring.var("x1")], [self.ring.var("x2")]])

    @property
    def y(self) -> PolyMatrix:
        return PolyMatrix(self.ring, [[self.ring.var("y1")], [self.ring.var("y2")]])


def sl2c2_moment_ideal() -> Ideal:
    R = sl2c2_ring()
    a11, a12, a21, b11, b12, b21, x1, x2, y1, y2 = R.gens()
    return Ideal(R, [2 * a11 * b12 - 2 * a12 * b11 + x1 * y2,
                     a12 * b21 - a21 * b12 + mpq(1, 2) * (x1 * y1 - x2 * y2),
                     2 * a21 * b11 - 2 * a11 * b21 + x2 * y1])


def sl2c2_moment_matrix() -> PolyMatrix:
    """[A, B] + x y^t - 1/2 (y^t x) I."""
    s = Sl2DoubleInstance()
    A, B, x, y = s.A, s.B, s.x, s.y
    yx = (y.T @ x)[0, 0]
    return A @ B - B @ A + x @ y.T - PolyMatrix.identity(s.ring, 2).scale(yx * mpq(1, 2))


def _det2(u: PolyMatrix, v: PolyMatrix) -> Polynomial:
    return u[0, 0] * v[1, 0] - u[1, 0] * v[0, 0]


SL2C2_NAMES = ("detA", "detB", "trAB", "yx", "yAx", "yBx", "yABx",
               "x|Ax", "x|Bx", "x|ABx", "y|Ay", "y|By", "y|ABy")


def sl2c2_invariants() -> list[Polynomial]:
    """The thirteen generating invariants, in the order of SL2C2_NAMES."""
    s = Sl2DoubleInstance()
    A, B, x, y = s.A, s.B, s.x, s.y
    AB = A @ B
    return [A.det(), B.det(), AB.trace(), (y.T @ x)[0, 0], (y.T @ A @ x)[0, 0], (y.T @ B @ x)[0, 0],
            (y.T @ AB @ x)[0, 0], _det2(x, A @ x), _det2(x, B @ x), _det2(x, AB @ x),
            _det2(y, A.T @ y), _det2(y, B.T @ y), _det2(y, AB.T @ y)]


def sl2c2_act(g, p: Polynomial) -> Polynomial:
    """p(g A g^-1, g x, g^-t y, g B g^-1)."""
    s = Sl2DoubleInstance()
    R = s.ring
    G = PolyMatrix.from_rational(R, g)
    Gi = PolyMatrix.from_rational(R, linalg.inverse(g))
    A2, B2 = G @ s.A @ Gi, G @ s.B @ Gi
    x2 = G @ s.x
    y2 = Gi.T @ s.y
    images = [A2[0, 0], A2[0, 1], A2[1, 0], B2[0, 0], B2[0, 1], B2[1, 0], x2[0, 0], x2[1, 0], y2[0, 0], y2[1, 0]]
    return p.compose(images, R)


# z_i as positions in the list of thirteen
Z_FROM_INVARIANTS = (0, 2, 1, 3, 7, 8, 10, 11)
OMITTED = (4, 5, 6, 9, 12)


@lru_cache(maxsize=None)
def z8_ring() -> VariableRegistry:
    return VariableRegistry(tuple(f"z{i}" for i in range(1, 9)), (2, 2, 2, 2, 3, 3, 3, 3))


def sl2c2_z(z4_sign: int = -1) -> list[Polynomial]:
    """z1..z8 in terms of the coordinates.

    The relations h1..h9 hold modulo the momentum ideal for z4 = -y^t x; with
    z4 = +y^t x six of them pick up a sign error in the terms odd in z4.
    """
    inv = sl2c2_invariants()
    z = [inv[k] for k in Z_FROM_INVARIANTS]
    z[3] = z[3] * z4_sign
    return z


def m_matrix() -> PolyMatrix:
    R = z8_ring()
    z = (None,) + R.gens()
    return PolyMatrix(R, [[2 * z[2] - z[4], 4 * z[3], z[8]],
                          [4 * z[1], 2 * z[2] + z[4], -z[7]],
                          [z[5], -z[6], z[4] ** 2 * mpq(1, 4)]])


def h_relations() -> list[Polynomial]:
    R = z8_ring()
    z = (None,) + R.gens()
    return [(2 * z[2] - z[4]) * z[7] + 4 * z[1] * z[8],
            (2 * z[2] + z[4]) * z[8] + 4 * z[3] * z[7],
            (2 * z[2] + z[4]) * z[5] + 4 * z[1] * z[6],
            (2 * z[2] - z[4]) * z[6] + 4 * z[3] * z[5],
            (2 * z[2] + z[4]) * (2 * z[2] - z[4]) - 16 * z[1] * z[3],
            (2 * z[2] + z[4]) * z[4] ** 2 - 4 * z[6] * z[7],
            (2 * z[2] - z[4]) * z[4] ** 2 - 4 * z[5] * z[8],
            z[3] * z[4] ** 2 + z[6] * z[8],
            z[1] * z[4] ** 2 + z[5] * z[7]]


def h_ideal() -> Ideal:
    return Ideal(z8_ring(), h_relations())


def z_sing_ideal() -> Ideal:
    R = z8_ring()
    z = (None,) + R.gens()
    return Ideal(R, [z[4], z[5], z[6], z[7], z[8], z[2] ** 2 - 4 * z[1] * z[3]])


def minors_vs_h() -> list[tuple[int, int, mpq]]:
    """For each 2x2 minor of M (lexicographic order): (minor index, h index, scalar c) with minor = c h."""
    hs = h_relations()
    out = []
    for k, m in enumerate(m_matrix().minors(2)):
        hit = None
        for i, h in enumerate(hs):
            lm = h.leading_monomial()
            c = m.coefficient(lm) / h.coefficient(lm) if m.coefficient(lm) else None
            if c and m == h * c:
                hit = (k, i, c)
                break
        out.append(hit)
    return out


def sl2c2_presentation_check(subalgebra_degree_bound: bool = True) -> VerificationReport:
    rep = VerificationReport("sl2c2", "sl2 + C^2 double: presentation by z1..z8 and h1..h9, singular locus, dimension",
                             "sl2 + C^2: generating invariants, relations, singular locus")
    with rep.timed():
        I = sl2c2_moment_ideal()
        gb = I.groebner()
        z = sl2c2_z()
        hs = h_relations()
        # (i)
        bad = [i + 1 for i, h in enumerate(hs) if gb.reduce(h.compose(z, I.ring))]
        rep.check("(i) h1..h9 vanish mod I_mu (z4 = -y^t x)", not bad, f"failing: {bad}" if bad else "all nine reduce to 0")
        literal = sl2c2_z(z4_sign=1)
        bad_lit = [i + 1 for i, h in enumerate(hs) if gb.reduce(h.compose(literal, I.ring))]
        rep.data["literal_sign_failures"] = bad_lit
        rep.note("with z4 = +y^t x the relations " + ", ".join(f"h{i}" for i in bad_lit)
                 + " do not vanish; z4 -> -z4 fixes all nine")
        # (ii)
        table = minors_vs_h()
        nonzero = [t for t, m in zip(table, m_matrix().minors(2)) if m]
        matched = all(t is not None for t in nonzero)
        hit = sorted({t[1] for t in nonzero if t})
        rep.data["minor_table"] = table
        desc = ", ".join(f"m{k + 1} = {c} h{i + 1}" for k, i, c in (t for t in nonzero if t))
        rep.check("(ii) 2x2 minors of M are nonzero multiples of h1..h9", matched and hit == list(range(9)), desc)
        # (iii)
        inv = sl2c2_invariants()
        for k in OMITTED:
            res = subalgebra_membership(inv[k], z, I, tag_stem="z")
            rep.check(f"(iii) {SL2C2_NAMES[k]} in QQ[z1..z8] mod I_mu", res.member,
                      "" if res.expression is None else str(res.expression))
        # (iv)
        H = h_ideal()
        dh = krull_dimension(H)
        rep.data["dim_Z"] = dh
        rep.check("(iv) dim Z = 4", dh == 4, f"dim = {dh}")
        # (v)
        S = z_sing_ideal()
        sing = singular_locus_ideal(H, 8 - dh)
        rep.data["sing_generators"] = len(sing)
        rep.check("(v) Z_sing = V(z4..z8, z2^2 - 4 z1 z3)", same_variety(sing, S),
                  f"{len(sing) - len(H)} distinct reduced 4x4 Jacobian minors")
        # (vi)
        dmu = krull_dimension(I)
        rep.data["dim_zero_fibre"] = dmu
        rep.check("(vi) I_mu complete intersection: dim 10 - 3 = 7", dmu == 7, f"dim = {dmu}")
    return rep


# -- Poincare series --------------------------------------------------------

POINCARE_NUMERATOR = (1, -1, 1, 2, 1, -1, 1)  # t^6 - t^5 + t^4 + 2t^3 + t^2 - t + 1, ascending
POINCARE_EXPANSION = (1, 0, 4, 6, 13, 24)
HILBERT_28 = {0: 1, 6: -6, 7: -8, 8: -6, 9: 8, 10: 24, 11: 24, 12: 5, 13: -24, 14: -36, 15: -24, 16: 5,
              17: 24, 18: 24, 19: 8, 20: -6, 21: -8, 22: -6, 28: 1}


def poincare_series() -> UniRationalFunction:
    """-(numerator) / ((t+1)^3 (t^2+t+1)^3 (t-1)^7)."""
    den = uprod([upow_list([1, 1], 3), upow_list([1, 1, 1], 3), upow_list([-1, 1], 7)])
    return UniRationalFunction.make([-c for c in POINCARE_NUMERATOR], den)


def upow_list(a: Sequence, k: int) -> list:
    return uprod([list(a)] * k)


def hilbert_28() -> list:
    return [HILBERT_28.get(i, 0) for i in range(29)]


def poincare_check(top: int = 5) -> VerificationReport:
    rep = VerificationReport("poincare", "Poincare series of the sl2 + C^2 double: expansion and generator degrees",
                             "sl2 + C^2: Poincare series in the proof of the generating set")
    with rep.timed():
        P = poincare_series()
        coeffs = [int(c) for c in series_expand(P, top)]
        rep.check(f"expansion through t^{top}", tuple(coeffs) == POINCARE_EXPANSION, str(coeffs))
        # numerator times (1+t)(1-t^3)^3(1-t^4)^3
        num = umul(POINCARE_NUMERATOR, uprod([[1, 1]] + [one_minus_t(3)] * 3 + [one_minus_t(4)] * 3))
        rep.check("numerator * (1+t)(1-t^3)^3(1-t^4)^3 = degree-28 polynomial", upoly(num) == upoly(hilbert_28()))
        # same statement as a Hilbert numerator over the 13 generator degrees
        degs = [p.total_degree() for p in sl2c2_invariants()]
        series_times = P * UniRationalFunction.make(uprod([one_minus_t(d) for d in degs]))
        rep.check("P(t) * prod(1 - t^deg) over the 13 generators = degree-28 polynomial",
                  series_times == UniRationalFunction.make(hilbert_28()), f"generator degrees {sorted(degs)}")
        # graded dimensions of the algebra generated by the 13 invariants
        inv = sl2c2_invariants()
        names = [f"g{i + 1}" for i in range(13)]
        T = _tag_ring(names, inv)
        K = ring_map_kernel(RingMapKernelQuery(T, tuple(inv)), degree_bound=top)
        dims = graded_quotient_dims(K, top)
        rep.data["graded_dims"] = dims
        rep.check(f"graded dimensions of QQ[13 invariants] through degree {top} match the expansion",
                  tuple(dims) == POINCARE_EXPANSION[:top + 1], str(dims))
    return rep
