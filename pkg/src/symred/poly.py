"""Exact multivariate polynomials over the rationals.

Polynomials are immutable values: a ring (``VariableRegistry``) plus a dict
mapping exponent tuples to nonzero ``gmpy2.mpq`` coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence, Union

from gmpy2 import mpq

from .orders import GREVLEX, MonomialOrder

Rational = type(mpq())
Scalar = Union[int, Fraction, "mpq"]

NEG_INF = float("-inf")


def QQ(x) -> "mpq":
    """Coerce an int, Fraction, mpq or ``"p/q"`` string to an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, _RationalABC):
        return mpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, Rational)) and not isinstance(x, bool)


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VariableRegistry:
    """Ordered variable names with positive integer grading weights."""

    names: tuple[str, ...]
    weights: tuple[int, ...] = None
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        weights = tuple(self.weights) if self.weights is not None else (1,) * len(names)
        if len(weights) != len(names):
            raise ValueError("one weight per variable required")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if any(w < 1 for w in weights):
            raise ValueError("weights must be >= 1")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise ValueError(f"invalid variable name {n!r}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self._index

    def index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < len(self.names):
                raise IndexError(var)
            return var
        if isinstance(var, Polynomial):
            exps = var.as_variable()
            return exps
        try:
            return self._index[var]
        except KeyError:
            raise KeyError(f"{var!r} is not a variable of this ring") from None

    @property
    def nvars(self) -> int:
        return len(self.names)

    def var(self, name) -> "Polynomial":
        i = self.index(name)
        e = [0] * len(self.names)
        e[i] = 1
        return Polynomial(self, {tuple(e): mpq(1)}, _trusted=True)

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(len(self.names)))

    def const(self, c) -> "Polynomial":
        c = QQ(c)
        if not c:
            return Polynomial(self, {}, _trusted=True)
        return Polynomial(self, {(0,) * len(self.names): c}, _trusted=True)

    def zero(self) -> "Polynomial":
        return self.const(0)

    def one(self) -> "Polynomial":
        return self.const(1)

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): QQ(coeff)})

    def extended(self, names: Sequence[str], weights: Sequence[int] | None = None,
                 front: bool = True) -> "VariableRegistry":
        """New ring with extra variables placed in front (default) or at the back."""
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        if front:
            return VariableRegistry(tuple(names) + self.names, weights + self.weights)
        return VariableRegistry(self.names + tuple(names), self.weights + weights)

    def subring(self, names: Sequence[str]) -> "VariableRegistry":
        """Ring on the given variables (in this ring's order) with their weights."""
        keep = set(names)
        missing = keep - set(self.names)
        if missing:
            raise KeyError(f"not variables of this ring: {sorted(missing)}")
        idx = [i for i, n in enumerate(self.names) if n in keep]
        return VariableRegistry(tuple(self.names[i] for i in idx), tuple(self.weights[i] for i in idx))

    def fresh_name(self, stem: str) -> str:
        name, k = stem, 0
        while name in self._index:
            k += 1
            name = f"{stem}{k}"
        return name

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def __str__(self):
        return "QQ[" + ", ".join(self.names) + "]"


def ring(names: str | Sequence[str], weights: Sequence[int] | None = None) -> VariableRegistry:
    """``ring("x y z")`` or ``ring(["x", "y"], [2, 3])``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return VariableRegistry(tuple(names), None if weights is None else tuple(weights))


def _add_exps(a, b):
    return tuple([x + y for x, y in zip(a, b)])


class Polynomial:
    """Exact polynomial; never mutate ``terms`` after construction."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: VariableRegistry, terms: Mapping | None = None, _trusted: bool = False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        n = len(ring.names)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e}")
            c = QQ(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    # -- basic properties -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    @property
    def constant_term(self) -> "mpq":
        return self.terms.get((0,) * len(self.ring.names), mpq(0))

    def total_degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def weighted_degree(self, weights: Sequence[int] | None = None):
        w = self.ring.weights if weights is None else weights
        if not self.terms:
            return NEG_INF
        return max(sum(a * b for a, b in zip(e, w)) for e in self.terms)

    def degree_in(self, var) -> int:
        i = self.ring.index(var)
        return max((e[i] for e in self.terms), default=NEG_INF)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        w = self.ring.weights if weights is None else weights
        return len({sum(a * b for a, b in zip(e, w)) for e in self.terms}) <= 1

    def homogeneous_components(self, weights: Sequence[int] | None = None) -> dict[int, "Polynomial"]:
        w = self.ring.weights if weights is None else weights
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(a * b for a, b in zip(e, w)), {})[e] = c
        return {d: Polynomial(self.ring, t, _trusted=True) for d, t in sorted(parts.items())}

    def variables(self) -> tuple[str, ...]:
        used = [False] * len(self.ring.names)
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return tuple(n for n, u in zip(self.ring.names, used) if u)

    def as_variable(self) -> int:
        """Index of the variable this polynomial is; raises otherwise."""
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if c == 1 and sum(e) == 1:
                return e.index(1)
        raise ValueError(f"{self} is not a variable")

    def coefficient(self, exps: Sequence[int]) -> "mpq":
        return self.terms.get(tuple(exps), mpq(0))

    def content_normalized(self) -> "Polynomial":
        """Scale so the leading grevlex coefficient is 1 (canonical up to units)."""
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient())

    # -- ordering ---------------------------------------------------------

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[tuple[int, ...], "mpq"]]:
        lay = order.layout(self.ring.weights)
        return sorted(self.terms.items(), key=lambda t: lay.pack(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        lay = order.layout(self.ring.weights)
        return max(self.terms, key=lay.pack)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> "mpq":
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if _is_scalar(other):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for e, c in b.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            c = QQ(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()}, _trusted=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                v = get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return Polynomial(self.ring, {e: c for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (1 / QQ(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if _is_scalar(other):
            c = QQ(other)
            if not c:
                return not self.terms
            return self.terms == {(0,) * len(self.ring.names): c}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution --------------------------------------

    def diff(self, var) -> "Polynomial":
        i = self.ring.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                f = list(e)
                f[i] = k - 1
                out[tuple(f)] = c * k
        return Polynomial(self.ring, out, _trusted=True)

    def evaluate(self, point) -> "mpq":
        """Value at a point given as a sequence or a name -> value mapping."""
        if isinstance(point, Mapping):
            vals = [QQ(point[n]) for n in self.ring.names]
        else:
            vals = [QQ(v) for v in point]
        total = mpq(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def compose(self, images: Sequence, target: VariableRegistry | None = None) -> "Polynomial":
        """Apply the ring map sending the i-th variable to ``images[i]``."""
        if len(images) != len(self.ring.names):
            raise ValueError("need one image per variable")
        if target is None:
            target = next((p.ring for p in images if isinstance(p, Polynomial)), self.ring)
        imgs = []
        for p in images:
            if isinstance(p, Polynomial):
                if p.ring != target:
                    raise RingMismatch("images must share the target ring")
                imgs.append(p)
            else:
                imgs.append(target.const(p))
        powers: list[dict[int, Polynomial]] = [{1: p} for p in imgs]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                h = k // 2
                cache[k] = power(i, h) * power(i, k - h)
            return cache[k]

        out: dict = {}
        for e, c in self.terms.items():
            t = target.const(c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            for te, tc in t.terms.items():
                v = out.get(te, 0) + tc
                if v:
                    out[te] = v
                else:
                    out.pop(te, None)
        return Polynomial(target, out, _trusted=True)

    def subs(self, assignment: Mapping) -> "Polynomial":
        """Substitute variables (by name or index); unassigned ones are kept."""
        images = list(self.ring.gens())
        for k, v in assignment.items():
            if isinstance(k, Polynomial):
                k = k.as_variable()
            images[self.ring.index(k)] = v if isinstance(v, Polynomial) else self.ring.const(v)
        return self.compose(images, self.ring)

    def to_ring(self, target: VariableRegistry) -> "Polynomial":
        """Re-express in a ring containing all variables this polynomial uses (matched by name)."""
        idx = []
        for i, n in enumerate(self.ring.names):
            idx.append(target._index.get(n))
        out = {}
        m = len(target.names)
        for e, c in self.terms.items():
            f = [0] * m
            for i, k in enumerate(e):
                if k:
                    j = idx[i]
                    if j is None:
                        raise RingMismatch(f"variable {self.ring.names[i]} missing from target ring")
                    f[j] = k
            out[tuple(f)] = c
        return Polynomial(target, out, _trusted=True)

    # -- text -------------------------------------------------------------

    def to_text(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = _fmt(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt(a)}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"


def _fmt(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if p.ring != q.ring:
        raise RingMismatch(f"{p.ring} vs {q.ring}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def substitute(p: Polynomial, assignment: Mapping) -> Polynomial:
    return p.subs(assignment)


def partial_derivative(p: Polynomial, var) -> Polynomial:
    return p.diff(var)


def dump_polynomials(polys: Iterable[Polynomial], order: MonomialOrder = GREVLEX) -> str:
    """One polynomial per line in the plain-text format."""
    return "".join(p.to_text(order) + "\n" for p in polys)


def load_polynomials(text: str, R: VariableRegistry) -> list[Polynomial]:
    return [R.parse(line) for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive descent over ``+ - * / ^ ( )``, rationals and variable names."""

    def __init__(self, R: VariableRegistry, text: str):
        self.R = R
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse {text[pos:]!r}")
            num, name, op = m.groups()
            if num is not None:
                self.toks.append(("num", num))
            elif name is not None:
                self.toks.append(("name", name))
            else:
                self.toks.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        if not self.toks:
            raise ValueError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input at token {self.peek()}")
        return p

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if (kind, val) in (("op", "-"), ("op", "+")):
            self.take()
            sign = -1 if val == "-" else 1
        p = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self):
        p = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            f = self.factor()
            if op == "*":
                p = p * f
            else:
                if not f.is_constant() or f.is_zero():
                    raise ValueError("division only by nonzero constants")
                p = p / f.constant_term
        return p

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ValueError("exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.R.const(mpq(val))
        if kind == "name":
            return self.R.var(val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return p
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise ValueError(f"unexpected token {val!r}")
