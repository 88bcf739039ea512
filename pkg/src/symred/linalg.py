"""Dense exact linear algebra over QQ on lists of lists of ``mpq``."""

from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq

from .poly import QQ

Matrix = list  # list[list[mpq]]


def qmatrix(rows: Sequence[Sequence]) -> Matrix:
    return [[QQ(x) for x in row] for row in rows]


def zeros(r: int, c: int) -> Matrix:
    return [[mpq(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = mpq(1)
    return m


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch {len(a)}x{len(a[0])} * {len(b)}x{len(b[0]) if b else 0}")
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col) if x and y), mpq(0)) for col in bt] for row in a]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    c = QQ(c)
    return [[x * c for x in r] for r in a]


def is_zero(a: Matrix) -> bool:
    return all(not x for r in a for x in r)


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    m = sum(len(b[0]) if b else 0 for b in blocks)
    out = zeros(n, m)
    r = c = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[r + i][c + j] = x
        r += len(b)
        c += len(b[0]) if b else 0
    return out


def row_echelon(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in a]
    pivots = []
    row = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        p = next((i for i in range(row, len(m)) if m[i][col]), None)
        if p is None:
            continue
        m[row], m[p] = m[p], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col]:
                c = m[i][col]
                m[i] = [x - c * y for x, y in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(row_echelon(a)[1])


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(r) + e for r, e in zip(a, identity(n))]
    red, piv = row_echelon(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def nullspace(a: Matrix) -> list[list]:
    """Basis of ``{x : a x = 0}``."""
    ncols = len(a[0]) if a else 0
    red, piv = row_echelon(a) if a else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for r, p in enumerate(piv):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence) -> list | None:
    """One solution of ``a x = b`` or ``None``."""
    ncols = len(a[0])
    aug = [list(r) + [QQ(x)] for r, x in zip(a, b)]
    red, piv = row_echelon(aug)
    if ncols in piv:
        return None
    x = [mpq(0)] * ncols
    for r, p in enumerate(piv):
        x[p] = red[r][ncols]
    return x


def symplectic_form(n: int) -> Matrix:
    """``J_{2n} = ((0, I), (-I, 0))``."""
    j = zeros(2 * n, 2 * n)
    for i in range(n):
        j[i][n + i] = mpq(1)
        j[n + i][i] = mpq(-1)
    return j


def split_form(m: int) -> Matrix:
    """``Q_{2m} = ((0, I), (I, 0))``."""
    q = zeros(2 * m, 2 * m)
    for i in range(m):
        q[i][m + i] = mpq(1)
        q[m + i][i] = mpq(1)
    return q
