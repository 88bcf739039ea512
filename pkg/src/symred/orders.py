"""Monomial orders and their packed-integer encodings.

A monomial is packed into a single Python int made of fixed-width fields.
The fields are arranged so that comparing two packed ints compares the
monomials in the chosen order, multiplying monomials is integer addition
(up to a constant), and divisibility is a single guard-bit test.

Field layout, most significant first:

* grevlex:   [wdeg] [C-e_{n-1}] ... [C-e_0] [wdeg]
* lex:       [e_0] [e_1] ... [e_{n-1}] [wdeg]
* block(k):  [wdeg_1] [C-e_{k-1}] ... [C-e_0] [wdeg_2] [C-e_{n-1}] ... [C-e_k] [wdeg]

``C - e`` fields are "complemented" so that a smaller exponent gives a
larger key, which is what reverse lexicographic tie-breaking needs.  The
trailing weighted degree never breaks a tie on its own (equal exponents
imply equal degree) and exists so that sugar degrees are one mask away.
"""

from __future__ import annotations

from dataclasses import dataclass, field

VALUE_BITS = 15
FIELD_BITS = VALUE_BITS + 1
FIELD_MASK = (1 << VALUE_BITS) - 1
MAX_EXPONENT = FIELD_MASK


class ExponentOverflow(ArithmeticError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: ``grevlex`` (default), ``lex`` or ``block`` with ``split``.

    ``block`` compares the first ``split`` variables by (weighted) grevlex and
    breaks ties with grevlex on the remaining ones; any monomial involving the
    first block is larger than every monomial free of it, so the order
    eliminates the first block.
    """

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.split < 0:
            raise ValueError("block split must be nonnegative")

    def __str__(self):
        return f"block({self.split})" if self.kind == "block" else self.kind

    def layout(self, weights: tuple[int, ...]) -> "Layout":
        return _layout(self, tuple(weights))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


_LAYOUTS: dict = {}


def _layout(order: MonomialOrder, weights: tuple[int, ...]) -> "Layout":
    key = (order, weights)
    lay = _LAYOUTS.get(key)
    if lay is None:
        lay = Layout.build(order, weights)
        _LAYOUTS[key] = lay
    return lay


@dataclass(frozen=True, eq=False)
class Layout:
    """Packing data for one (order, weights) pair.

    ``pack(e) = one + sum(e_i * mult_i)``.  For packed keys ``a``, ``b``:
    ``a * b -> a + b - one``; ``a | b`` iff ``divides(plain(a), plain(b))``
    where ``plain(k) = k ^ comp``.
    """

    nvars: int
    weights: tuple[int, ...]
    mult: tuple[int, ...]
    var_shift: tuple[int, ...]
    one: int
    comp: int
    guard: int
    nfields: int = field(repr=False)

    @classmethod
    def build(cls, order: MonomialOrder, weights: tuple[int, ...]) -> "Layout":
        n = len(weights)
        # fields listed most significant first: ("deg", [vars]) | ("var", i, complemented)
        fields: list[tuple] = []
        if order.kind == "grevlex":
            fields.append(("deg", list(range(n))))
            fields.extend(("var", i, True) for i in reversed(range(n)))
        elif order.kind == "lex":
            fields.extend(("var", i, False) for i in range(n))
        else:
            k = min(order.split, n)
            fields.append(("deg", list(range(k))))
            fields.extend(("var", i, True) for i in reversed(range(k)))
            fields.append(("deg", list(range(k, n))))
            fields.extend(("var", i, True) for i in reversed(range(k, n)))
        fields.append(("deg", list(range(n))))
        nf = len(fields)
        mult = [0] * n
        var_shift = [0] * n
        one = comp = guard = 0
        for pos, fld in enumerate(fields):
            shift = (nf - 1 - pos) * FIELD_BITS
            guard |= 1 << (shift + VALUE_BITS)
            if fld[0] == "deg":
                for i in fld[1]:
                    mult[i] += weights[i] << shift
            else:
                _, i, complemented = fld
                var_shift[i] = shift
                if complemented:
                    mult[i] -= 1 << shift
                    one += FIELD_MASK << shift
                    comp |= FIELD_MASK << shift
                else:
                    mult[i] += 1 << shift
        return cls(n, weights, tuple(mult), tuple(var_shift), one, comp, guard, nf)

    def pack(self, exps) -> int:
        k = self.one
        for e, m in zip(exps, self.mult):
            if e:
                if e > MAX_EXPONENT:
                    raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
                k += e * m
        return k

    def unpack(self, key: int) -> tuple[int, ...]:
        p = key ^ self.comp
        return tuple((p >> s) & FIELD_MASK for s in self.var_shift)

    def plain(self, key: int) -> int:
        return key ^ self.comp

    def degree(self, key: int) -> int:
        return key & FIELD_MASK

    def divides(self, pa: int, pb: int) -> bool:
        """``a | b`` for plain forms ``pa``, ``pb``."""
        g = self.guard
        return ((pb | g) - pa) & g == g
