"""Matrices with polynomial entries, Pfaffians, minors and the skew normal form."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence

from gmpy2 import mpq

from . import linalg
from .groebner import Ideal
from .poly import Polynomial, VariableRegistry


class ShapeMismatch(ValueError):
    pass


class NotSkew(ValueError):
    pass


class PolyMatrix:
    """Immutable rectangular matrix over a polynomial ring."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: VariableRegistry, rows: Sequence[Sequence]):
        self.ring = ring
        out = []
        width = None
        for row in rows:
            r = tuple(x if isinstance(x, Polynomial) else ring.const(x) for x in row)
            if width is None:
                width = len(r)
            elif len(r) != width:
                raise ShapeMismatch("ragged rows")
            out.append(r)
        self.rows = tuple(out)

    @classmethod
    def zeros(cls, ring, r, c) -> "PolyMatrix":
        return cls(ring, [[0] * c for _ in range(r)])

    @classmethod
    def identity(cls, ring, n) -> "PolyMatrix":
        return cls(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_rational(cls, ring, a) -> "PolyMatrix":
        return cls(ring, [[ring.const(x) for x in row] for row in a])

    @classmethod
    def from_function(cls, ring, r, c, f: Callable[[int, int], object]) -> "PolyMatrix":
        return cls(ring, [[f(i, j) for j in range(c)] for i in range(r)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> list[Polynomial]:
        return [x for row in self.rows for x in row]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "PolyMatrix([" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "])"

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __neg__(self):
        return PolyMatrix(self.ring, [[-a for a in r] for r in self.rows])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        k, k2 = self.shape[1], other.shape[0]
        if k != k2:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        zero = self.ring.zero()
        out = []
        for row in self.rows:
            line = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                line.append(acc)
            out.append(line)
        return PolyMatrix(self.ring, out)

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[a * c for a in r] for r in self.rows])

    def __mul__(self, c):
        if isinstance(c, PolyMatrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    @property
    def T(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, list(zip(*self.rows)))

    def transpose(self) -> "PolyMatrix":
        return self.T

    def trace(self) -> Polynomial:
        r, c = self.shape
        if r != c:
            raise ShapeMismatch("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(r)), self.ring.zero())

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.ring, [a + b for a, b in zip(self.rows, other.rows)])

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.ring, self.rows + other.rows)

    def map(self, f: Callable[[Polynomial], Polynomial]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[f(a) for a in r] for r in self.rows])

    def compose(self, images, target: VariableRegistry) -> "PolyMatrix":
        return PolyMatrix(target, [[a.compose(images, target) for a in r] for r in self.rows])

    def evaluate(self, point) -> list[list]:
        """Rational matrix at a point (sequence or name -> value mapping)."""
        return [[a.evaluate(point) for a in r] for r in self.rows]

    def is_zero(self) -> bool:
        return all(not a for a in self.entries())

    def is_skew(self) -> bool:
        r, c = self.shape
        return r == c and all(self.rows[i][j] == -self.rows[j][i] for i in range(r) for j in range(r))

    def det(self) -> Polynomial:
        """Laplace expansion along rows, memoised on column subsets."""
        n, c = self.shape
        if n != c:
            raise ShapeMismatch("determinant of a non-square matrix")
        if n == 0:
            return self.ring.one()
        rows = self.rows
        zero = self.ring.zero()

        @lru_cache(maxsize=None)
        def sub(row: int, cols: tuple[int, ...]) -> Polynomial:
            if len(cols) == 1:
                return rows[row][cols[0]]
            acc = zero
            for pos, j in enumerate(cols):
                a = rows[row][j]
                if not a:
                    continue
                m = sub(row + 1, cols[:pos] + cols[pos + 1:])
                if not m:
                    continue
                acc = acc + a * m if pos % 2 == 0 else acc - a * m
            return acc

        return sub(0, tuple(range(n)))

    def minors(self, k: int) -> list[Polynomial]:
        """All k x k minors, rows and columns in lexicographic subset order."""
        r, c = self.shape
        if not 0 < k <= min(r, c):
            raise ValueError(f"minor size {k} out of range for shape {self.shape}")
        return [self.submatrix(rs, cs).det() for rs in combinations(range(r), k)
                for cs in combinations(range(c), k)]

    def pfaffian(self) -> Polynomial:
        return pfaffian(self)


def matrix_ops(a: PolyMatrix, b: PolyMatrix | None, op: str):
    """Dispatcher for ``mul``, ``add``, ``transpose``, ``trace``, ``det``."""
    if op == "mul":
        return a @ b
    if op == "add":
        return a + b
    if op == "transpose":
        return a.T
    if op == "trace":
        return a.trace()
    if op == "det":
        return a.det()
    raise ValueError(f"unknown matrix op {op!r}")


def pfaffian(a: PolyMatrix) -> Polynomial:
    """Expansion along the first row; Pf(J) = 1 for J = ((0, I), (-I, 0))."""
    n, c = a.shape
    if n != c or n % 2:
        raise NotSkew(f"Pfaffian needs an even square matrix, got {a.shape}")
    if not a.is_skew():
        raise NotSkew("matrix is not skew-symmetric")
    rows = a.rows
    zero = a.ring.zero()

    @lru_cache(maxsize=None)
    def pf(idx: tuple[int, ...]) -> Polynomial:
        if not idx:
            return a.ring.one()
        i = idx[0]
        acc = zero
        for pos in range(1, len(idx)):
            j = idx[pos]
            e = rows[i][j]
            if not e:
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            term = e * pf(rest)
            acc = acc + term if pos % 2 == 1 else acc - term
        return acc

    p = pf(tuple(range(n)))
    # the recursion gives Pf of the standard form ((0,1),(-1,0))^k; rescale the sign to Pf(J) = 1
    return p * _standard_sign(n // 2)


def _standard_sign(k: int) -> int:
    # Pf of J_{2k} under plain first-row expansion is (-1)^(k(k-1)/2)
    return -1 if (k * (k - 1) // 2) % 2 else 1


def minor_ideal(a: PolyMatrix, k: int) -> Ideal:
    return Ideal(a.ring, a.minors(k))


def jacobian(polys: Sequence[Polynomial], ring: VariableRegistry) -> PolyMatrix:
    return PolyMatrix(ring, [[p.diff(v) for v in range(len(ring))] for p in polys])


@dataclass(frozen=True)
class SkewNormalForm:
    """``inv(S)^t a inv(S) = diag(R^t J_{2k} R, 0)`` with ``rank = 2k``."""

    S: tuple
    rank: int
    R: tuple

    @property
    def k(self) -> int:
        return self.rank // 2


def skew_normal_form(a) -> SkewNormalForm:
    """Symplectic Gram-Schmidt over QQ (no square roots needed)."""
    a = linalg.qmatrix(a)
    n = len(a)
    if any(a[i][j] != -a[j][i] for i in range(n) for j in range(n)):
        raise NotSkew("input is not skew-symmetric")

    def form(u, v):
        return sum((u[i] * a[i][j] * v[j] for i in range(n) if u[i] for j in range(n) if v[j]), mpq(0))

    rest = [list(r) for r in linalg.identity(n)]
    es, fs = [], []
    while True:
        pair = None
        for i in range(len(rest)):
            for j in range(i + 1, len(rest)):
                w = form(rest[i], rest[j])
                if w:
                    pair = (i, j, w)
                    break
            if pair:
                break
        if pair is None:
            break
        i, j, w = pair
        e = rest[i]
        f = [x / w for x in rest[j]]
        es.append(e)
        fs.append(f)
        new = []
        for t, v in enumerate(rest):
            if t in (i, j):
                continue
            cf, ce = form(v, f), form(v, e)
            new.append([x - cf * y + ce * z for x, y, z in zip(v, e, f)])
        rest = new
    basis = es + fs + rest  # columns of inv(S)
    s_inv = linalg.transpose(basis)
    S = linalg.inverse(s_inv)
    k = len(es)
    R = linalg.identity(2 * k)
    return SkewNormalForm(tuple(map(tuple, S)), 2 * k, tuple(map(tuple, R)))
