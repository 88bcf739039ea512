"""Sp(2n) acting on 2m copies of C^2n: momentum ideals, invariants, quotients, orbits."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from gmpy2 import mpq

from . import linalg
from .groebner import Ideal
from .ideals import (RingMapKernelQuery, krull_dimension, minimal_generator_counts,
                     radical_membership, ring_map_kernel)
from .matrices import PolyMatrix, pfaffian, skew_normal_form
from .poly import Polynomial, VariableRegistry
from .report import VerificationReport


def _xname(i: int, j: int, wide: bool) -> str:
    return f"x{i}_{j}" if wide else f"x{i}{j}"


@dataclass(frozen=True)
class SpInstance:
    """Symbolic point X = (X', X'') of (C^2n)^(+2m), variables x_ij row by row."""

    n: int
    m: int

    @property
    def ring(self) -> VariableRegistry:
        return _sp_ring(self.n, self.m)

    def x(self, i: int, j: int) -> Polynomial:
        """Entry in row i, column j (1-based)."""
        return self.ring.var(_xname(i, j, self._wide))

    @property
    def _wide(self) -> bool:
        return max(2 * self.n, 2 * self.m) > 9

    @property
    def X(self) -> PolyMatrix:
        return PolyMatrix(self.ring, [[self.x(i, j) for j in range(1, 2 * self.m + 1)]
                                      for i in range(1, 2 * self.n + 1)])

    @property
    def X1(self) -> PolyMatrix:
        return self.X.submatrix(range(2 * self.n), range(self.m))

    @property
    def X2(self) -> PolyMatrix:
        return self.X.submatrix(range(2 * self.n), range(self.m, 2 * self.m))

    @property
    def J(self) -> PolyMatrix:
        return PolyMatrix.from_rational(self.ring, linalg.symplectic_form(self.n))

    @property
    def Q(self) -> PolyMatrix:
        return PolyMatrix.from_rational(self.ring, linalg.split_form(self.m))


@lru_cache(maxsize=None)
def _sp_ring(n: int, m: int) -> VariableRegistry:
    wide = max(2 * n, 2 * m) > 9
    return VariableRegistry(tuple(_xname(i, j, wide) for i in range(1, 2 * n + 1)
                                  for j in range(1, 2 * m + 1)))


def sp_moment_ideal(n: int, m: int) -> Ideal:
    """Upper triangle (with diagonal, halved there) of X Q X^t."""
    inst = SpInstance(n, m)
    X = inst.X
    M = X @ inst.Q @ X.T
    gens = []
    for i in range(2 * n):
        for j in range(i, 2 * n):
            gens.append(M[i, j] * mpq(1, 2) if i == j else M[i, j])
    return Ideal(inst.ring, gens)


def _zname(i: int, j: int, s: int) -> str:
    return f"z{i}_{j}" if s > 9 else f"z{i}{j}"


@lru_cache(maxsize=None)
def z_ring(s: int) -> VariableRegistry:
    """Coordinates z_ij (i < j <= s) of weight 2, in lexicographic pair order."""
    names = tuple(_zname(i, j, s) for i, j in combinations(range(1, s + 1), 2))
    return VariableRegistry(names, (2,) * len(names))


def z_var(i: int, j: int, s: int) -> Polynomial:
    if i < j:
        return z_ring(s).var(_zname(i, j, s))
    if i > j:
        return -z_ring(s).var(_zname(j, i, s))
    return z_ring(s).zero()


def z_matrix(s: int) -> PolyMatrix:
    """The skew matrix X^t J X written in z-coordinates."""
    R = z_ring(s)
    return PolyMatrix(R, [[z_var(i, j, s) for j in range(1, s + 1)] for i in range(1, s + 1)])


def sp_invariants(n: int, s: int, m: int | None = None) -> list[Polynomial]:
    """z_ij = x^(i)^t J x^(j) for i < j <= s, in the ring of SpInstance(n, m)."""
    if m is None:
        m = (s + 1) // 2
    if s > 2 * m:
        raise ValueError("s exceeds the number of columns")
    inst = SpInstance(n, m)
    X, J = inst.X, inst.J
    cols = [X.submatrix(range(2 * n), [j]) for j in range(2 * m)]
    out = []
    for i, j in combinations(range(s), 2):
        out.append((cols[i].T @ J @ cols[j])[0, 0])
    return out


def pluecker_relations(s: int) -> list[Polynomial]:
    """s = 4: [J1]; s = 6: the fifteen three-term relations followed by J2."""
    if s not in (4, 6):
        raise ValueError("Pluecker relations are provided for s = 4 and s = 6 only")
    z = lambda i, j: z_var(i, j, s)  # noqa: E731
    out = [z(i, j) * z(k, l) - z(i, k) * z(j, l) + z(i, l) * z(j, k)
           for i, j, k, l in combinations(range(1, s + 1), 4)]
    if s == 6:
        out.append(z(1, 4) * z(2, 5) * z(3, 6) + z(2, 4) * z(3, 5) * z(1, 6) + z(3, 4) * z(1, 5) * z(2, 6)
                   - z(1, 4) * z(3, 5) * z(2, 6) - z(2, 4) * z(1, 5) * z(3, 6) - z(3, 4) * z(2, 5) * z(1, 6))
    return out


def nu_map(X: Sequence[Sequence], n: int, m: int):
    """nu(X) = X^t J X Q."""
    X = linalg.qmatrix(X)
    if len(X) != 2 * n or any(len(r) != 2 * m for r in X):
        raise ValueError(f"expected a {2 * n}x{2 * m} matrix")
    return linalg.mat_mul(linalg.mat_mul(linalg.mat_mul(linalg.transpose(X), linalg.symplectic_form(n)), X),
                          linalg.split_form(m))


def moment_value(X, n: int, m: int):
    """X Q X^t J (zero exactly on the zero fibre)."""
    X = linalg.qmatrix(X)
    return linalg.mat_mul(linalg.mat_mul(linalg.mat_mul(X, linalg.split_form(m)), linalg.transpose(X)),
                          linalg.symplectic_form(n))


def in_so(A, m: int) -> bool:
    """-Q A^t Q = A."""
    Q = linalg.split_form(m)
    lhs = linalg.mat_scale(linalg.mat_mul(linalg.mat_mul(Q, linalg.transpose(A)), Q), -1)
    return lhs == linalg.qmatrix(A)


def z_membership(A, n: int, m: int) -> bool:
    A = linalg.qmatrix(A)
    if len(A) != 2 * m or any(len(r) != 2 * m for r in A):
        return False
    return in_so(A, m) and linalg.is_zero(linalg.mat_mul(A, A)) and linalg.rank(A) <= min(2 * n, m)


class NotInZ(ValueError):
    pass


def symplectic_embedding(n: int, k: int):
    """Rational 2n x 2k matrix U with U^t J_2n U = J_2k (standard pairs to the first k pairs)."""
    U = linalg.zeros(2 * n, 2 * k)
    for i in range(k):
        U[i][i] = mpq(1)
        U[n + i][k + i] = mpq(1)
    return U


def orbit_preimage(A, n: int, m: int):
    """X with X^t J X Q = A and X Q X^t J = 0, via the skew normal form of A Q."""
    A = linalg.qmatrix(A)
    if not z_membership(A, n, m):
        raise NotInZ("matrix is not in Z")
    AQ = linalg.mat_mul(A, linalg.split_form(m))
    snf = skew_normal_form(AQ)
    k = snf.k
    if k == 0:
        return linalg.zeros(2 * n, 2 * m)
    S = [list(r) for r in snf.S]
    R = [list(r) for r in snf.R]
    Rt = [r + [mpq(0)] * (2 * m - 2 * k) for r in R]  # (R, 0)
    T = linalg.mat_mul(Rt, S)
    U = symplectic_embedding(n, k)
    return linalg.mat_mul(U, T)


# -- random group elements and sample points -------------------------------

def _small_rational(rng: random.Random, lo: int = -3, hi: int = 3, den: int = 2):
    while True:
        q = mpq(rng.randint(lo, hi), rng.randint(1, den))
        if q:
            return q


def random_symplectic(n: int, rng: random.Random, factors: int = 6):
    """Product of up to ``factors`` transvections x -> x + c (v^t J x) v."""
    J = linalg.symplectic_form(n)
    g = linalg.identity(2 * n)
    for _ in range(rng.randint(1, factors)):
        v = [mpq(rng.randint(-2, 2)) for _ in range(2 * n)]
        if not any(v):
            continue
        c = _small_rational(rng)
        vvJ = linalg.mat_mul([[c * a] for a in v], [[b for b in linalg.mat_mul([v], J)[0]]])
        g = linalg.mat_mul(linalg.mat_add(linalg.identity(2 * n), vvJ), g)
    return g


def random_orthogonal(m: int, rng: random.Random, factors: int = 6):
    """h with h Q h^t = Q: product of transposed Q-reflections."""
    Q = linalg.split_form(m)
    h = linalg.identity(2 * m)
    for _ in range(rng.randint(1, factors)):
        v = [mpq(rng.randint(-2, 2)) for _ in range(2 * m)]
        qv = linalg.mat_mul([v], Q)[0]
        b = sum((a * c for a, c in zip(v, qv)), mpq(0))
        if not b:
            continue
        s = linalg.mat_add(linalg.identity(2 * m), linalg.mat_scale(linalg.mat_mul([[a] for a in v], [qv]), -2 / b))
        h = linalg.mat_mul(h, linalg.transpose(s))
    return h


def random_zero_fibre_point(n: int, m: int, rng: random.Random, rank: int | None = None):
    """X = C [I_m | 0] h: rows in a random isotropic subspace (so X Q X^t = 0)."""
    if rank is None:
        rank = rng.randint(0, min(2 * n, m))
    basis = [[mpq(rng.randint(-2, 2)) for _ in range(m)] for _ in range(rank)]
    C = [[sum((mpq(rng.randint(-2, 2)) * b[j] for b in basis), mpq(0)) for j in range(m)]
         for _ in range(2 * n)] if rank else linalg.zeros(2 * n, m)
    L = [row + [mpq(0)] * m for row in C]
    return linalg.mat_mul(L, random_orthogonal(m, rng))


# -- nilpotent orbits -------------------------------------------------------

class InadmissiblePartition(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]
    label: str | None = None

    def __post_init__(self):
        parts = tuple(sorted(self.parts, reverse=True))
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise InadmissiblePartition("parts must be positive")
        for p in set(parts):
            if p % 2 == 0 and parts.count(p) % 2:
                raise InadmissiblePartition(f"even part {p} has odd multiplicity in {parts}")
        if self.very_even:
            if self.label not in ("I", "II"):
                raise InadmissiblePartition("very even partitions carry a label I or II")
        elif self.label is not None:
            raise InadmissiblePartition("only very even partitions carry a label")

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def very_even(self) -> bool:
        return bool(self.parts) and all(p % 2 == 0 for p in self.parts)

    @property
    def rank(self) -> int:
        """Rank of a nilpotent matrix with these Jordan blocks."""
        return sum(p - 1 for p in self.parts)

    def __str__(self):
        body = ",".join(_power_notation(self.parts))
        return f"[{body}]" + (f"^{self.label}" if self.label else "")


def _power_notation(parts):
    out = []
    for p in sorted(set(parts), reverse=True):
        c = parts.count(p)
        out.append(f"{p}^{c}" if c > 1 else str(p))
    return out


def square_zero_partition(m: int, k: int, label: str | None = None) -> Partition:
    """[2^(2k), 1^(2(m-2k))] in so_2m."""
    return Partition((2,) * (2 * k) + (1,) * (2 * (m - 2 * k)), label)


@dataclass(frozen=True)
class OrbitDecomposition:
    n: int
    m: int
    strata: tuple[Partition, ...]  # every orbit in Z, by increasing rank
    closure: tuple[Partition, ...]  # the orbits whose closures make up Z

    @property
    def components(self) -> int:
        return len(self.closure)


def orbit_decomposition(n: int, m: int) -> OrbitDecomposition:
    """Square-zero orbits of rank at most min(2n, m); very even top orbits split into I and II."""
    bound = min(2 * n, m)
    strata = []
    for k in range(0, m // 2 + 1):
        if 2 * k > bound:
            break
        if 4 * k == 2 * m:
            strata += [square_zero_partition(m, k, "I"), square_zero_partition(m, k, "II")]
        else:
            strata.append(square_zero_partition(m, k))
    top = max(p.rank for p in strata)
    return OrbitDecomposition(n, m, tuple(strata), tuple(p for p in strata if p.rank == top))


def fu_resolvable(p: Partition) -> bool:
    """Either d_1..d_q odd and the rest even for an even q != 2, or exactly two odd
    parts sitting at positions 2k-1, 2k."""
    d = p.parts
    odd = [i + 1 for i, x in enumerate(d) if x % 2]
    N = len(d)
    for q in range(0, N + 1, 2):
        if q == 2:
            continue
        if all(x % 2 for x in d[:q]) and all(x % 2 == 0 for x in d[q:]):
            return True
    return len(odd) == 2 and odd[1] == odd[0] + 1 and odd[0] % 2 == 1


def orbit_representative(m: int, k: int, label: str | None = None):
    """Block sum of k rank-2 templates (e_a e_b^t - e_b e_a^t) Q on isotropic pairs.

    Label II swaps e_m and e_2m, an improper isometry moving the maximal
    isotropic span to the other family.
    """
    idx = list(range(m))
    if label == "II":
        idx[m - 1] = 2 * m - 1
    S = linalg.zeros(2 * m, 2 * m)
    for b in range(k):
        a, c = idx[2 * b], idx[2 * b + 1]
        S[a][c] += 1
        S[c][a] -= 1
    return linalg.mat_mul(S, linalg.split_form(m))


# -- quotient identifications for n = 1 ---------------------------------

def quotient_matrix(s: int) -> PolyMatrix:
    """A = X^t J X Q in z-coordinates (s = 2m columns)."""
    Z = z_matrix(s)
    Q = PolyMatrix.from_rational(Z.ring, linalg.split_form(s // 2))
    return Z @ Q


def quotient_relations(m: int) -> dict[str, list[Polynomial]]:
    """Equations of Z (reduced structure) in z-coordinates for n = 1."""
    s = 2 * m
    A = quotient_matrix(s)
    Q = PolyMatrix.from_rational(A.ring, linalg.split_form(m))
    QA = Q @ A
    out = {"A^2": [e for e in (A @ A).entries() if e]}
    if m == 2:
        out["Pf(QA)"] = [pfaffian(QA)]
    if m >= 3:
        out["rank<=2"] = [d for d in A.minors(3) if d]
        out["Pf4(QA)"] = [pfaffian(QA.submatrix(c, c)) for c in combinations(range(s), 4)]
    return out


def doubled_kernel(m: int, n: int = 1) -> Ideal:
    """Relations among the z_ij of the doubled action modulo the momentum ideal."""
    s = 2 * m
    return ring_map_kernel(RingMapKernelQuery(z_ring(s), tuple(sp_invariants(n, s, m)),
                                              sp_moment_ideal(n, m)))


def reducedness_witnesses(n: int, m: int) -> VerificationReport:
    rep = VerificationReport(f"sp:{n}:{m}", f"momentum ideal and quotient for Sp({2 * n}) on {2 * m} copies",
                             "Sp section, examples and theorem on reducedness")
    with rep.timed():
        I = sp_moment_ideal(n, m)
        dim = krull_dimension(I)
        expected = 4 * m * n - 2 * n * n - n
        rep.data["dim_zero_fibre"] = dim
        if m >= 2 * n:
            rep.check("complete intersection dimension 4mn-2n^2-n", dim == expected, f"dim = {dim}")
        else:
            rep.note(f"dim of zero fibre = {dim} (expected dimension {expected})")
        if n == 1 and m == 1:
            inst = SpInstance(1, 1)
            det = inst.x(1, 1) * inst.x(2, 2) - inst.x(1, 2) * inst.x(2, 1)
            gb = I.groebner()
            rep.check("det X not in I_mu", not gb.contains(det), f"NF(det X) = {gb.reduce(det)}")
            rep.check("(det X)^2 in I_mu", gb.contains(det * det), "NF = 0")
            rep.check("I_mu not radical: non-reduced zero fibre", not gb.contains(det) and gb.contains(det * det))
            rep.data["reduced"] = False
        if n == 1 and m in (2, 3):
            K = doubled_kernel(m, n)
            counts = minimal_generator_counts(K)
            total = sum(counts.values())
            rep.data["kernel_min_gens"] = total
            rep.data["kernel"] = K
            if m == 2:
                rep.check("eleven minimal relations", total == 11, f"minimal generators by degree {counts}")
            else:
                rep.note(f"kernel minimal generators by weighted degree: {counts}")
            gbK = K.groebner()
            for name, polys in quotient_relations(m).items():
                ok = all(gbK.contains(p) for p in polys)
                rep.check(f"{name} in kernel", ok, f"{len(polys)} polynomials")
            qdim = krull_dimension(K)
            rep.data["quotient_dim"] = qdim
            rep.check("quotient dimension = dim zero fibre - 3", qdim == dim - 3, f"dim = {qdim}")
            if m == 2:
                Pf = quotient_relations(2)["Pf(QA)"][0]
                sq = [e for e in (quotient_matrix(4) @ quotient_matrix(4)).entries() if e]
                rel = Ideal(K.ring, sq)
                rep.check("Pf(QA) vanishes on {A^2 = 0}", radical_membership(Pf, rel), str(Pf))
                rep.check("Pf(QA) not in (A^2 entries): needed for the reduced structure",
                          not rel.groebner().contains(Pf))
            if m == 3:
                rep.check("quotient dimension 6", qdim == 6, f"dim = {qdim}")
    return rep


ORBIT_CASES = ((1, 2), (1, 3), (2, 2))


def orbit_checks(seed: int = 0, points_per_case: int = 8) -> VerificationReport:
    """Round trips nu(orbit_preimage(A)) = A on sampled Z-points, orbit data and Fu's criterion."""
    rep = VerificationReport("orbits", "Z is the image of nu, with explicit preimages; orbit closures and resolvability",
                             "Sp section, surjectivity of nu and the nilpotent orbit propositions")
    rng = random.Random(seed)
    with rep.timed():
        tested = 0
        bad = []
        for n, m in ORBIT_CASES:
            for _ in range(points_per_case):
                X0 = random_zero_fibre_point(n, m, rng)
                A = nu_map(X0, n, m)
                if not z_membership(A, n, m):
                    bad.append(f"nu(X0) not in Z for {(n, m)}")
                    continue
                X = orbit_preimage(A, n, m)
                if nu_map(X, n, m) != A or not linalg.is_zero(moment_value(X, n, m)):
                    bad.append(f"round trip failed for {(n, m)}")
                tested += 1
            for p in orbit_decomposition(n, m).strata:
                k = p.rank // 2
                A = orbit_representative(m, k, p.label)
                ok = z_membership(A, n, m) and linalg.rank(A) == p.rank
                ok = ok and nu_map(orbit_preimage(A, n, m), n, m) == A
                if not ok:
                    bad.append(f"representative of {p} for {(n, m)}")
                tested += 1
        rep.data["round_trips"] = tested
        rep.check("nu(orbit_preimage(A)) = A on sampled Z-points", not bad and tested >= 20,
                  f"{tested} points" + ("; " + "; ".join(bad) if bad else ""))
        d3 = orbit_decomposition(1, 3)
        rep.check("m = 3: Z is the closure of [2^2,1^2]", [str(p) for p in d3.closure] == ["[2^2,1^2]"])
        d2 = orbit_decomposition(1, 2)
        rep.check("m = 2: two components [2^2]^I and [2^2]^II", [str(p) for p in d2.closure] == ["[2^2]^I", "[2^2]^II"])
        fu = []
        for m in range(1, 7):
            # the top orbit of Z: [2^m] for m even, [2^(m-1),1^2] for m odd
            p = Partition((2,) * m, "I") if m % 2 == 0 else Partition((2,) * (m - 1) + (1, 1))
            fu.append((str(p), fu_resolvable(p)))
        rep.check("Fu's criterion holds for [2^m] (m even) and [2^(m-1),1^2] (m odd), m <= 6", all(ok for _, ok in fu),
                  ", ".join(s for s, ok in fu if not ok) or f"{len(fu)} partitions")
    return rep
