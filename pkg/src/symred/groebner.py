"""Buchberger's algorithm over QQ with the Gebauer-Moeller criteria.

Inside the engine a polynomial is a list of packed monomial keys (descending)
and a parallel list of ``mpq`` coefficients; see ``orders.Layout`` for the
packing.  Pairs are selected by sugar degree (ties broken by the smaller lcm),
or by lcm alone under lex.
For ideals homogeneous with respect to the ring weights the sugar is the true
degree, so a degree bound yields a correct truncated basis.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
import logging
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import mpq

from .orders import GREVLEX, Layout, MonomialOrder
from .poly import Polynomial, RingMismatch, VariableRegistry

log = logging.getLogger(__name__)


class ResourceLimitExceeded(RuntimeError):
    """A configured cap (pairs, degree, wall clock) stopped a computation."""


class IncompleteBasis(RuntimeError):
    """A query needed a complete basis but only a truncated one was available."""


@dataclass(frozen=True)
class ResourceLimits:
    max_pairs: int | None = None
    max_degree: int | None = None
    deadline: float | None = None  # time.monotonic() value


_LIMITS: contextvars.ContextVar[ResourceLimits] = contextvars.ContextVar(
    "symred_limits", default=ResourceLimits())


@contextlib.contextmanager
def resource_limits(max_pairs=None, max_degree=None, timeout=None):
    """Cap every Buchberger run inside the block (``None``/0 = unlimited)."""
    deadline = time.monotonic() + timeout if timeout else None
    token = _LIMITS.set(ResourceLimits(max_pairs or None, max_degree or None, deadline))
    try:
        yield
    finally:
        _LIMITS.reset(token)


class _Rec:
    __slots__ = ("keys", "coeffs", "lead", "plain", "exps", "sugar")

    def __init__(self, keys, coeffs, lay: Layout, sugar):
        self.keys = keys
        self.coeffs = coeffs
        self.lead = keys[0]
        self.plain = keys[0] ^ lay.comp
        self.exps = lay.unpack(keys[0])
        self.sugar = sugar


def _to_engine(p: Polynomial, lay: Layout) -> dict:
    pack = lay.pack
    return {pack(e): c for e, c in p.terms.items()}


def _from_engine(terms, lay: Layout, R: VariableRegistry) -> Polynomial:
    unpack = lay.unpack
    return Polynomial(R, {unpack(k): c for k, c in terms}, _trusted=True)


def _normal_form(terms: dict, red: Sequence[_Rec], lay: Layout, sugar=0):
    """Fully reduce ``terms`` (consumed) by ``red``; returns (sorted items, sugar)."""
    guard, comp, mask = lay.guard, lay.comp, (1 << 15) - 1
    heap = [-k for k in terms]
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    out = []
    get = terms.get
    while heap:
        k = -pop(heap)
        c = terms.pop(k, None)
        if c is None:
            continue
        pk = k ^ comp
        for r in red:
            if ((pk | guard) - r.plain) & guard == guard:
                shift = k - r.lead
                s = r.sugar + (k & mask) - (r.lead & mask)
                if s > sugar:
                    sugar = s
                keys, coeffs = r.keys, r.coeffs
                for i in range(1, len(keys)):
                    nk = keys[i] + shift
                    v = get(nk)
                    if v is None:
                        terms[nk] = -c * coeffs[i]
                        push(heap, -nk)
                    else:
                        v -= c * coeffs[i]
                        if v:
                            terms[nk] = v
                        else:
                            del terms[nk]
                break
        else:
            out.append((k, c))
    return out, sugar


def _lcm_key(a: _Rec, b: _Rec, lay: Layout) -> int:
    return lay.pack([x if x > y else y for x, y in zip(a.exps, b.exps)])


def _make_rec(items, lay: Layout, sugar) -> _Rec:
    lc = items[0][1]
    if lc != 1:
        inv = 1 / lc
        coeffs = [c * inv for _, c in items]
    else:
        coeffs = [c for _, c in items]
    return _Rec([k for k, _ in items], coeffs, lay, sugar)


@dataclass
class EngineStats:
    pairs: int = 0
    zero_reductions: int = 0
    max_sugar: int = 0
    seconds: float = 0.0


def _buchberger(inputs: list[dict], lay: Layout, homogeneous: bool,
                degree_bound: int | None, stats: EngineStats, strategy: str = "sugar"):
    """Returns (records of a reduced basis, truncated flag).

    ``strategy`` is ``"sugar"`` (pairs by sugar degree, then lcm) or
    ``"normal"`` (pairs by lcm in the monomial order).
    """
    by_sugar = strategy == "sugar"
    limits = _LIMITS.get()
    max_pairs = limits.max_pairs
    if limits.max_degree is not None:
        degree_bound = limits.max_degree if degree_bound is None else min(degree_bound, limits.max_degree)
    deadline = limits.deadline
    mask = (1 << 15) - 1
    guard, one = lay.guard, lay.one

    recs: list[_Rec] = []
    G: list[int] = []  # active indices (minimal leading terms)
    live: dict[tuple[int, int], tuple[int, int]] = {}  # (i, j) -> (lcm_key, lcm_plain)
    queue: list = []
    seq = 0
    for f in inputs:
        if not f:
            continue
        s = max(k & mask for k in f)
        heapq.heappush(queue, (s if by_sugar else 0, max(f), seq, -1, f, s))
        seq += 1

    truncated = False

    def divides(pa, pb):
        return ((pb | guard) - pa) & guard == guard

    def update(h: int):
        rh = recs[h]
        lh_plain = rh.plain
        cand = []
        for g in G:
            rg = recs[g]
            lk = _lcm_key(rh, rg, lay)
            disjoint = lk == rh.lead + rg.lead - one
            cand.append((g, lk, lk ^ lay.comp, disjoint))
        kept = []
        for idx, p in enumerate(cand):
            if p[3]:
                kept.append(p)
                continue
            pp = p[2]
            if any(divides(q[2], pp) for q in cand[idx + 1:]) or any(divides(q[2], pp) for q in kept):
                continue
            kept.append(p)
        hl = {}
        # chain criterion on old pairs
        for (i, j), (lk, lp) in list(live.items()):
            if divides(lh_plain, lp):
                li = hl.get(i)
                if li is None:
                    li = hl[i] = _lcm_key(recs[i], rh, lay)
                lj = hl.get(j)
                if lj is None:
                    lj = hl[j] = _lcm_key(recs[j], rh, lay)
                if li != lk and lj != lk:
                    del live[(i, j)]
        nonlocal seq
        for g, lk, lp, disjoint in kept:
            if disjoint:
                continue
            rg = recs[g]
            s = max(rh.sugar + (lk & mask) - (rh.lead & mask), rg.sugar + (lk & mask) - (rg.lead & mask))
            live[(g, h)] = (lk, lp)
            heapq.heappush(queue, (s if by_sugar else 0, lk, seq, g, h, s))
            seq += 1
        G[:] = [g for g in G if not divides(lh_plain, recs[g].plain)]
        G.append(h)

    while queue:
        _, lk, _, i, j, s = heapq.heappop(queue)
        if i >= 0 and (i, j) not in live:
            continue
        if degree_bound is not None and s > degree_bound:
            if homogeneous:
                truncated = True
                if by_sugar:
                    break
                if i >= 0:
                    del live[(i, j)]
                continue
            raise ResourceLimitExceeded(f"degree bound {degree_bound} reached on a non-homogeneous ideal")
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceLimitExceeded("timeout during Groebner basis computation")
        if i >= 0:
            del live[(i, j)]
            stats.pairs += 1
            if max_pairs is not None and stats.pairs > max_pairs:
                raise ResourceLimitExceeded(f"more than {max_pairs} S-pairs")
            ri, rj = recs[i], recs[j]
            si, sj = lk - ri.lead, lk - rj.lead
            terms = {}
            for t in range(1, len(ri.keys)):
                terms[ri.keys[t] + si] = ri.coeffs[t]
            for t in range(1, len(rj.keys)):
                k = rj.keys[t] + sj
                v = terms.get(k)
                if v is None:
                    terms[k] = -rj.coeffs[t]
                else:
                    v -= rj.coeffs[t]
                    if v:
                        terms[k] = v
                    else:
                        del terms[k]
        else:
            terms = dict(j)
        if s > stats.max_sugar:
            stats.max_sugar = s
        red = [recs[g] for g in G]
        items, sugar = _normal_form(terms, red, lay, s)
        if not items:
            stats.zero_reductions += 1
            continue
        rec = _make_rec(items, lay, sugar)
        recs.append(rec)
        if (rec.lead & mask) == 0 and rec.lead == lay.one:
            # unit ideal
            return [rec], False
        update(len(recs) - 1)

    # interreduce
    basis = [recs[g] for g in G]
    basis.sort(key=lambda r: r.lead)
    out = []
    for idx, r in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        tail = {r.keys[t]: r.coeffs[t] for t in range(1, len(r.keys))}
        items, _ = _normal_form(tail, others, lay, 0)
        out.append(_Rec([r.lead] + [k for k, _ in items], [mpq(1)] + [c for _, c in items], lay, r.sugar))
    return out, truncated


class Ideal:
    """Generators in a common ring; Groebner bases are cached per order.

    ``truncated_at`` marks generator lists known to generate the ideal only in
    degrees up to that bound (output of a degree-bounded elimination).
    """

    def __init__(self, ring: VariableRegistry, generators: Iterable[Polynomial] = (),
                 truncated_at: int | None = None):
        self.ring = ring
        self.truncated_at = truncated_at
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring.const(g)
            if g.ring != ring:
                raise RingMismatch(f"generator {g} is not in {ring}")
            if g:
                gens.append(g)
        self.generators = tuple(gens)
        self._gb: dict = {}

    @classmethod
    def of(cls, *gens: Polynomial) -> "Ideal":
        if not gens:
            raise ValueError("need at least one generator to infer the ring")
        return cls(gens[0].ring, gens)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return "Ideal(" + ", ".join(map(str, self.generators)) + ")"

    def __add__(self, other):
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise RingMismatch("ideals live in different rings")
            return Ideal(self.ring, self.generators + other.generators)
        return Ideal(self.ring, self.generators + tuple(other))

    def __mul__(self, other: "Ideal"):
        if other.ring != self.ring:
            raise RingMismatch("ideals live in different rings")
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def is_homogeneous(self, weights=None) -> bool:
        return all(g.is_homogeneous(weights) for g in self.generators)

    def groebner(self, order: MonomialOrder = GREVLEX, degree_bound: int | None = None) -> "GroebnerBasis":
        key = (order, degree_bound)
        gb = self._gb.get(key)
        if gb is None:
            full = self._gb.get((order, None))
            if full is not None:
                return full
            gb = buchberger(self, order, degree_bound=degree_bound)
            self._gb[key] = gb
            if gb.complete and degree_bound is not None:
                self._gb[(order, None)] = gb
        return gb

    def __contains__(self, p: Polynomial) -> bool:
        return ideal_membership(p, self)

    def to_ring(self, target: VariableRegistry) -> "Ideal":
        return Ideal(target, [g.to_ring(target) for g in self.generators])


class GroebnerBasis:
    """A reduced Groebner basis; ``complete`` is False for degree-truncated runs."""

    def __init__(self, ideal: Ideal, order: MonomialOrder, records: list[_Rec], lay: Layout,
                 complete: bool = True, degree_bound: int | None = None, stats: EngineStats | None = None):
        self.ideal = ideal
        self.order = order
        self.ring = ideal.ring
        self._recs = records
        self._lay = lay
        self.complete = complete
        self.degree_bound = degree_bound
        self.reduced = True
        self.stats = stats or EngineStats()
        R = ideal.ring
        self.basis = tuple(
            Polynomial(R, {lay.unpack(k): c for k, c in zip(r.keys, r.coeffs)}, _trusted=True)
            for r in records)

    @classmethod
    def from_reduced(cls, ideal: Ideal, order: MonomialOrder, polys: Sequence[Polynomial],
                     complete: bool = True, degree_bound: int | None = None) -> "GroebnerBasis":
        """Wrap polynomials already known to form a reduced basis of ``ideal``."""
        lay = order.layout(ideal.ring.weights)
        recs = []
        for p in polys:
            items = sorted(_to_engine(p, lay).items(), reverse=True)
            recs.append(_make_rec(items, lay, max(k & 0x7FFF for k, _ in items)))
        recs.sort(key=lambda r: r.lead)
        gb = cls(ideal, order, recs, lay, complete, degree_bound)
        ideal._gb[(order, None if complete else degree_bound)] = gb
        return gb

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0] == 1

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [r.exps for r in self._recs]

    def reduce(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise RingMismatch(f"{p.ring} vs {self.ring}")
        items, _ = _normal_form(_to_engine(p, self._lay), self._recs, self._lay)
        return _from_engine(items, self._lay, self.ring)

    def contains(self, p: Polynomial) -> bool:
        nf = self.reduce(p)
        if nf and not self.complete:
            d = p.weighted_degree()
            if self.degree_bound is None or d > self.degree_bound or not p.is_homogeneous():
                raise IncompleteBasis("membership undecided: basis truncated below the degree of p")
        return not nf

    def __repr__(self):
        tag = "" if self.complete else f", truncated at degree {self.degree_bound}"
        return f"GroebnerBasis({len(self.basis)} elements, {self.order}{tag})"


def buchberger(ideal: Ideal, order: MonomialOrder = GREVLEX, degree_bound: int | None = None,
               strategy: str | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal``; deterministic for fixed input and order.

    ``degree_bound`` truncates the computation for ideals homogeneous with
    respect to the ring weights; for other ideals hitting it raises
    ``ResourceLimitExceeded``.  Pairs are selected by sugar degree, except
    under lex where the normal strategy behaves far better.
    """
    R = ideal.ring
    lay = order.layout(R.weights)
    homogeneous = ideal.is_homogeneous()
    stats = EngineStats()
    t0 = time.perf_counter()
    inputs = [_to_engine(g, lay) for g in ideal.generators]
    if strategy is None:
        strategy = "normal" if order.kind == "lex" else "sugar"
    recs, truncated = _buchberger(inputs, lay, homogeneous, degree_bound, stats, strategy)
    stats.seconds = time.perf_counter() - t0
    log.debug("groebner %s in %d vars: %d elements, %d pairs, %.2fs", order, len(R), len(recs),
              stats.pairs, stats.seconds)
    bound = degree_bound if truncated else None
    if truncated and _LIMITS.get().max_degree is not None:
        lim = _LIMITS.get().max_degree
        bound = lim if degree_bound is None else min(lim, degree_bound)
    return GroebnerBasis(ideal, order, recs, lay, complete=not truncated, degree_bound=bound, stats=stats)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.reduce(p)


def ideal_membership(p: Polynomial, ideal: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    if p.ring != ideal.ring:
        raise RingMismatch(f"{p.ring} vs {ideal.ring}")
    if not p:
        return True
    return ideal.groebner(order).contains(p)
