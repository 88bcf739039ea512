"""Univariate polynomials and rational functions in ``t`` with exact coefficients.

Univariate polynomials are plain coefficient lists, lowest degree first,
without trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .poly import QQ


class PoleAtZero(ZeroDivisionError):
    pass


def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def upoly(coeffs: Sequence) -> list:
    return _trim([QQ(c) for c in coeffs])


def uadd(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def uneg(a: Sequence) -> list:
    return [-c for c in a]


def usub(a: Sequence, b: Sequence) -> list:
    return uadd(a, uneg(b))


def umul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def upow(a: Sequence, k: int) -> list:
    out = [mpq(1)]
    for _ in range(k):
        out = umul(out, a)
    return out


def uprod(factors) -> list:
    out = [mpq(1)]
    for f in factors:
        out = umul(out, f)
    return out


def one_minus_t(d: int) -> list:
    """``1 - t^d``."""
    return upoly([1] + [0] * (d - 1) + [-1])


def udivmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = [QQ(c) for c in a]
    q = [mpq(0)] * max(len(r) - len(b) + 1, 0)
    lb = b[-1]
    for i in range(len(r) - len(b), -1, -1):
        c = r[i + len(b) - 1] / lb
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] -= c * y
    return _trim(q), _trim(r[: len(b) - 1])


def ugcd(a: Sequence, b: Sequence) -> list:
    a, b = list(a), list(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    if not a:
        return []
    lc = a[-1]
    return [c / lc for c in a]


def uparse(text: str) -> list:
    """Parse a polynomial in ``t`` (e.g. ``"1 - 6*t^6 + t^28"``)."""
    from .poly import ring

    p = ring("t").parse(text)
    deg = p.total_degree()
    if p.is_zero():
        return []
    out = [mpq(0)] * (deg + 1)
    for (e,), c in p.terms.items():
        out[e] = c
    return out


def uformat(a: Sequence) -> str:
    from .poly import ring

    R = ring("t")
    return str(sum((R.monomial((i,), c) for i, c in enumerate(a) if c), R.zero()))


@dataclass(frozen=True)
class UniRationalFunction:
    """``numerator / denominator`` in lowest terms with a monic denominator."""

    numerator: tuple
    denominator: tuple

    @classmethod
    def make(cls, numerator: Sequence, denominator: Sequence = (1,)) -> "UniRationalFunction":
        num, den = upoly(numerator), upoly(denominator)
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = ugcd(num, den) if num else [mpq(1)]
        if len(g) > 1:
            num, den = udivmod(num, g)[0], udivmod(den, g)[0]
        lc = den[-1]
        return cls(tuple(c / lc for c in num), tuple(c / lc for c in den))

    def __mul__(self, other: "UniRationalFunction") -> "UniRationalFunction":
        if not isinstance(other, UniRationalFunction):
            other = UniRationalFunction.make(upoly(other) if isinstance(other, (list, tuple)) else [other])
        return UniRationalFunction.make(umul(self.numerator, other.numerator),
                                        umul(self.denominator, other.denominator))

    def __eq__(self, other):
        if not isinstance(other, UniRationalFunction):
            return NotImplemented
        return umul(self.numerator, other.denominator) == umul(other.numerator, self.denominator)

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def normalized_at_zero(self) -> "UniRationalFunction":
        """Same function as a pair (num, den) scaled so that den(0) = 1 (unreduced form kept)."""
        d0 = self.denominator[0] if self.denominator else 0
        if not d0:
            raise PoleAtZero("denominator vanishes at t = 0")
        return UniRationalFunction(tuple(c / d0 for c in self.numerator),
                                   tuple(c / d0 for c in self.denominator))


def series_expand(f: UniRationalFunction, order: int) -> list:
    """First ``order + 1`` Taylor coefficients of ``f`` at ``t = 0``."""
    den = list(f.denominator)
    if not den or not den[0]:
        raise PoleAtZero("denominator vanishes at t = 0")
    num = list(f.numerator)
    inv0 = 1 / den[0]
    out = []
    for k in range(order + 1):
        s = num[k] if k < len(num) else mpq(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            s -= den[j] * out[k - j]
        out.append(s * inv0)
    return out


def ratfun_identity_check(f: UniRationalFunction, multiplier: Sequence, expected: Sequence) -> bool:
    """``f * multiplier == expected`` as rational functions, by cross-multiplication."""
    return umul(umul(f.numerator, upoly(multiplier)), [1]) == umul(upoly(expected), f.denominator)
