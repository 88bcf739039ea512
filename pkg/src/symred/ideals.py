"""Ideal-level queries built on the Groebner engine."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from . import linalg
from .groebner import GroebnerBasis, Ideal, IncompleteBasis, buchberger
from .orders import GREVLEX, block
from .poly import Polynomial, RingMismatch, VariableRegistry
from .series import UniRationalFunction, one_minus_t, series_expand, umul, uprod

log = logging.getLogger(__name__)

EMPTY = -1  # dimension of the empty variety


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")


def contains_ideal(big: Ideal, small: Ideal) -> bool:
    """Every generator of ``small`` lies in ``big``."""
    _same_ring(big, small)
    gb = big.groebner()
    return all(gb.contains(g) for g in small.generators)


def ideal_equality(I: Ideal, J: Ideal) -> bool:
    return contains_ideal(I, J) and contains_ideal(J, I)


def radical_membership(p: Polynomial, I: Ideal) -> bool:
    """``p^k in I`` for some k: is 1 in I + (1 - w p) over one extra variable?"""
    if p.ring != I.ring:
        raise RingMismatch(f"{p.ring} vs {I.ring}")
    if not p:
        return True
    R = I.ring
    w = R.fresh_name("w")
    S = R.extended([w])
    gens = [g.to_ring(S) for g in I.generators]
    gens.append(S.one() - S.var(w) * p.to_ring(S))
    return buchberger(Ideal(S, gens), block(1)).is_unit()


def radical_contains(big: Ideal, small: Ideal) -> bool:
    """``small`` lies in the radical of ``big`` (so V(big) is inside V(small))."""
    _same_ring(big, small)
    return all(radical_membership(g, big) for g in small.generators)


def same_variety(I: Ideal, J: Ideal) -> bool:
    """Radical-level equality: each generator of one lies in the radical of the other."""
    return radical_contains(I, J) and radical_contains(J, I)


def elimination_ideal(I: Ideal, keep: Sequence[str], degree_bound: int | None = None) -> Ideal:
    """``I`` intersected with the subring on ``keep``; the result carries its grevlex basis.

    With a ``degree_bound`` (weighted-homogeneous ``I`` only) the result is
    correct in degrees up to the bound and flagged via ``truncated_at``.
    """
    R = I.ring
    keep_set = set(keep)
    elim = [n for n in R.names if n not in keep_set]
    kept = [n for n in R.names if n in keep_set]
    if len(kept) != len(keep_set):
        raise KeyError("keep contains names outside the ring")
    S = VariableRegistry(tuple(elim + kept), tuple(R.weights[R.index(n)] for n in elim + kept))
    J = Ideal(S, [g.to_ring(S) for g in I.generators])
    gb = buchberger(J, block(len(elim)), degree_bound=degree_bound)
    T = R.subring(kept)
    k = len(elim)
    polys = [p.to_ring(T) for p in gb.basis if all(not any(e[:k]) for e in p.terms)]
    out = Ideal(T, polys, truncated_at=None if gb.complete else gb.degree_bound)
    GroebnerBasis.from_reduced(out, GREVLEX, out.generators, gb.complete, gb.degree_bound)
    return out


@dataclass(frozen=True)
class RingMapKernelQuery:
    """Map ``source`` variable i to ``images[i]`` in ``target / modulus``."""

    source: VariableRegistry
    images: tuple
    modulus: Ideal | None = None

    @property
    def target(self) -> VariableRegistry:
        return self.images[0].ring


def ring_map_kernel(q: RingMapKernelQuery, degree_bound: int | None = None) -> Ideal:
    """Kernel of ``QQ[source] -> target / modulus`` by elimination in the joined ring.

    If every image is homogeneous of the weight of its source variable and the
    modulus is homogeneous, the joined ideal is homogeneous and
    ``degree_bound`` may be used.
    """
    src, tgt = q.source, q.target
    if len(q.images) != len(src):
        raise ValueError("need one image per source variable")
    clash = set(src.names) & set(tgt.names)
    if clash:
        raise ValueError(f"source and target share variable names: {sorted(clash)}")
    J = VariableRegistry(tgt.names + src.names, tgt.weights + src.weights)
    gens = []
    if q.modulus is not None:
        if q.modulus.ring != tgt:
            raise RingMismatch("modulus must live in the target ring")
        gens.extend(g.to_ring(J) for g in q.modulus.generators)
    for name, img in zip(src.names, q.images):
        gens.append(J.var(name) - img.to_ring(J))
    return elimination_ideal(Ideal(J, gens), src.names, degree_bound)


def saturation(I: Ideal, f: Polynomial) -> Ideal:
    """``I : f^oo`` as ``(I + (1 - w f))`` intersected with the original ring."""
    if not f:
        raise ValueError("cannot saturate by zero")
    R = I.ring
    w = R.fresh_name("w")
    S = R.extended([w])
    gens = [g.to_ring(S) for g in I.generators] + [S.one() - S.var(w) * f.to_ring(S)]
    gb = buchberger(Ideal(S, gens), block(1))
    polys = list(_drop_first(gb.basis, R))
    out = Ideal(R, polys)
    GroebnerBasis.from_reduced(out, GREVLEX, polys)
    return out


def _drop_first(basis, R: VariableRegistry):
    for p in basis:
        if all(e[0] == 0 for e in p.terms):
            yield Polynomial(R, {e[1:]: c for e, c in p.terms.items()}, _trusted=True)


def _require_complete(gb: GroebnerBasis):
    if not gb.complete:
        raise IncompleteBasis("a complete Groebner basis is required")


def _min_supports(exps_list) -> list[int]:
    sups = sorted({sum(1 << i for i, e in enumerate(ex) if e) for ex in exps_list}, key=lambda s: bin(s).count("1"))
    out = []
    for s in sups:
        if not any(t & s == t for t in out):
            out.append(s)
    return out


def _max_independent(sups: list[int], free: int, memo: dict) -> int:
    """Largest set of variables (bits of ``free``) containing no support."""
    key = (tuple(sups), free)
    if key in memo:
        return memo[key]
    if not sups:
        res = bin(free).count("1")
    else:
        s = min(sups, key=lambda t: bin(t).count("1"))
        res = -1
        rem = s
        while rem:
            bit = rem & -rem
            rem ^= bit
            nf = free & ~bit
            ns = [t for t in sups if not t & bit]
            r = _max_independent(ns, nf, memo)
            if r > res:
                res = r
    memo[key] = res
    return res


def krull_dimension(I: Ideal) -> int:
    """Maximal size of a variable set independent modulo the grevlex leading-term ideal."""
    gb = I.groebner(GREVLEX)
    _require_complete(gb)
    if gb.is_unit():
        return EMPTY
    n = len(I.ring)
    return _max_independent(_min_supports(gb.leading_monomials()), (1 << n) - 1, {})


def codimension(I: Ideal) -> int:
    d = krull_dimension(I)
    return EMPTY if d == EMPTY else len(I.ring) - d


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / prod(1 - t^w)`` over the variable weights."""

    numerator: tuple[int, ...]
    weights: tuple[int, ...]

    def as_rational(self) -> UniRationalFunction:
        return UniRationalFunction.make(list(self.numerator), uprod(one_minus_t(w) for w in self.weights))

    def coefficients(self, order: int) -> list[int]:
        den = uprod(one_minus_t(w) for w in self.weights)
        f = UniRationalFunction(tuple(mpq(c) for c in self.numerator), tuple(den))
        return [int(c) for c in series_expand(f, order)]


def _hilbert_numerator(gens: list[tuple[int, ...]], weights: tuple[int, ...]) -> list:
    """Numerator of the Hilbert series of QQ[x]/(monomials) by pivoting (Bigatti style)."""
    # minimalize
    gens = sorted(set(gens), key=sum)
    mins: list[tuple] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in mins):
            mins.append(g)
    if not mins:
        return [mpq(1)]
    if any(not any(g) for g in mins):
        return []  # unit ideal
    union = 0
    coprime = True
    for g in mins:
        s = sum(1 << i for i, e in enumerate(g) if e)
        if union & s:
            coprime = False
            break
        union |= s
    if coprime:
        return uprod(one_minus_t(sum(e * w for e, w in zip(g, weights))) for g in mins)
    # pivot variable: occurring in the most generators
    n = len(weights)
    counts = [sum(1 for g in mins if g[i]) for i in range(n)]
    v = max(range(n), key=lambda i: (counts[i], -i))
    exps = sorted(g[v] for g in mins if g[v])
    e = exps[(len(exps) - 1) // 2]
    piv = tuple(e if i == v else 0 for i in range(n))
    plus = [g for g in mins if g[v] < e] + [piv]
    colon = [tuple(max(a - b, 0) for a, b in zip(g, piv)) for g in mins]
    shift = [mpq(0)] * (e * weights[v]) + [mpq(1)]
    a = _hilbert_numerator(plus, weights)
    b = umul(shift, _hilbert_numerator(colon, weights))
    out = [mpq(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    while out and not out[-1]:
        out.pop()
    return out


def weighted_hilbert_series(I: Ideal, weights: Sequence[int] | None = None) -> HilbertSeries:
    """Hilbert series of ``R/I`` graded by ``weights`` (default: ring weights).

    For a degree-truncated basis the series is correct up to the truncation degree.
    """
    R = I.ring
    if weights is not None and tuple(weights) != R.weights:
        S = VariableRegistry(R.names, tuple(weights))
        I = I.to_ring(S)
        R = S
    if not I.is_homogeneous():
        raise ValueError("Hilbert series needs a weighted-homogeneous ideal")
    gb = I.groebner(GREVLEX)
    num = _hilbert_numerator(list(gb.leading_monomials()), R.weights)
    return HilbertSeries(tuple(int(c) for c in num), R.weights)


def singular_locus_ideal(I: Ideal, codim: int, reduce: bool = True) -> Ideal:
    """``I`` plus all ``codim x codim`` minors of the Jacobian of its generators.

    With ``reduce`` the minors are replaced by their normal forms modulo ``I``
    (same ideal) and zero or repeated ones are dropped.
    """
    from .matrices import jacobian

    R = I.ring
    jac = jacobian(I.generators, R)
    minors = jac.minors(codim) if codim > 0 else []
    if reduce and minors:
        gb = I.groebner()
        minors = [gb.reduce(m) for m in minors]
    seen = set()
    extra = []
    for m in minors:
        if not m:
            continue
        m = m.monic()
        if m not in seen:
            seen.add(m)
            extra.append(m)
    return Ideal(R, list(I.generators) + extra)


def minimal_generator_counts(I: Ideal) -> dict[int, int]:
    """Number of minimal generators per weighted degree of a homogeneous ideal.

    In degree d this is the rank of the degree-d basis elements modulo the
    ideal generated by everything of lower degree.
    """
    if not I.is_homogeneous():
        raise ValueError("minimal generator counts need a homogeneous ideal")
    gb = I.groebner(GREVLEX, degree_bound=I.truncated_at)
    by_deg: dict[int, list[Polynomial]] = {}
    for p in gb.basis:
        by_deg.setdefault(p.weighted_degree(), []).append(p)
    counts = {}
    lower: list[Polynomial] = []
    for d in sorted(by_deg):
        polys = by_deg[d]
        if lower:
            gbl = buchberger(Ideal(I.ring, lower), GREVLEX, degree_bound=d)
            polys = [gbl.reduce(p) for p in polys]
        mons = sorted({e for p in polys for e in p.terms})
        col = {e: i for i, e in enumerate(mons)}
        rows = []
        for p in polys:
            row = [mpq(0)] * len(mons)
            for e, c in p.terms.items():
                row[col[e]] = c
            rows.append(row)
        r = linalg.rank(rows) if mons else 0
        if r:
            counts[d] = r
        lower.extend(by_deg[d])
    return counts


def minimal_generator_count(I: Ideal) -> int:
    return sum(minimal_generator_counts(I).values())


@dataclass(frozen=True)
class SubalgebraMembership:
    member: bool
    expression: Polynomial | None  # in the tag ring, if member
    tags: VariableRegistry


def subalgebra_membership(candidate: Polynomial, generators: Sequence[Polynomial],
                          modulus: Ideal | None = None, tag_stem: str = "s") -> SubalgebraMembership:
    """Is ``candidate`` a polynomial in ``generators`` modulo ``modulus``?

    Tag elimination: with tags s_i and block order (ring variables first), the
    candidate is in the subalgebra iff its normal form involves tags only.
    For homogeneous data the basis is truncated at the candidate's degree.
    """
    R = candidate.ring
    weights = []
    homogeneous = candidate.is_homogeneous() and (modulus is None or modulus.is_homogeneous())
    for g in generators:
        if g.ring != R:
            raise RingMismatch("generators must share the candidate's ring")
        if g.is_homogeneous() and not g.is_constant():
            weights.append(g.weighted_degree())
        else:
            homogeneous = False
            weights.append(1)
    names = []
    for i in range(len(generators)):
        names.append(R.fresh_name(f"{tag_stem}{i + 1}"))
    if not homogeneous:
        weights = [1] * len(generators)
    T = VariableRegistry(tuple(names), tuple(weights))
    J = VariableRegistry(R.names + T.names, R.weights + T.weights)
    gens = [] if modulus is None else [g.to_ring(J) for g in modulus.generators]
    gens += [J.var(t) - g.to_ring(J) for t, g in zip(T.names, generators)]
    bound = candidate.weighted_degree() if homogeneous and candidate else None
    gb = buchberger(Ideal(J, gens), block(len(R)), degree_bound=bound)
    nf = gb.reduce(candidate.to_ring(J))
    k = len(R)
    if any(any(e[:k]) for e in nf.terms):
        return SubalgebraMembership(False, None, T)
    expr = Polynomial(T, {e[k:]: c for e, c in nf.terms.items()}, _trusted=True)
    # independent confirmation by substitution
    diff = candidate - expr.compose(list(generators), R)
    ok = not diff if modulus is None else modulus.groebner().contains(diff)
    if not ok:
        raise AssertionError("subalgebra expression failed the substitution check")
    return SubalgebraMembership(True, expr, T)
