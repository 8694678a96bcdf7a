"""Exact integer linear algebra: Smith and Hermite normal forms with transforms.

Matrices are lists (or tuples) of rows of Python ints.  Nothing here ever
touches floating point.
"""

from __future__ import annotations

from typing import Sequence

Matrix = Sequence[Sequence[int]]

__all__ = [
    "identity", "matmul", "matvec", "transpose", "det", "smith", "hnf_columns",
    "invariant_factors", "solve_integer", "integer_kernel", "hstack", "as_tuple",
]


def as_tuple(m: Matrix) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in m)


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Matrix) -> list[list[int]]:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> list[list[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def hstack(*blocks: Matrix) -> list[list[int]]:
    return [sum((list(b[i]) for b in blocks), []) for i in range(len(blocks[0]))]


def det(m: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith(m: Matrix):
    """Smith normal form ``D = U @ A @ V`` with unimodular ``U`` and ``V``.

    Returns ``(D, U, V)``.  The diagonal of ``D`` is non-negative and each
    entry divides the next; zeros come last.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [list(r) for r in m]
    u = identity(rows)
    v = identity(cols)

    def row_add(dst, src, c):
        rd, rs = d[dst], d[src]
        for k in range(cols):
            rd[k] += c * rs[k]
        ud, us = u[dst], u[src]
        for k in range(rows):
            ud[k] += c * us[k]

    def col_add(dst, src, c):
        for r in d:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = d[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return d, u, v
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = d[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = d[i][t] // p
                if q:
                    row_add(i, t, -q)
                if d[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                q = d[t][j] // p
                if q:
                    col_add(j, t, -q)
                if d[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next((i for i in range(t + 1, rows)
                        for j in range(t + 1, cols) if d[i][j] % p), None)
            if bad is not None:
                row_add(t, bad, 1)
                continue
            break
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return d, u, v


def invariant_factors(m: Matrix) -> list[int]:
    """Nonzero diagonal of the Smith form (units included)."""
    d, _, _ = smith(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def hnf_columns(m: Matrix):
    """Column-style Hermite form of a nonsingular square matrix.

    Returns ``(H, W)`` with ``H = A @ W``, ``W`` unimodular, ``H`` lower
    triangular with positive diagonal and ``0 <= H[i][j] < H[i][i]`` for
    ``j < i``.  ``H`` depends only on the column lattice of ``A``.
    """
    n = len(m)
    h = [list(r) for r in m]
    w = identity(n)

    def col_comb(j, k, a, b, c, e):
        # (col_j, col_k) <- (a*col_j + b*col_k, c*col_j + e*col_k)
        for mat in (h, w):
            for r in mat:
                x, y = r[j], r[k]
                r[j], r[k] = a * x + b * y, c * x + e * y

    for i in range(n):
        for k in range(i + 1, n):
            x, y = h[i][i], h[i][k]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            # [s t; -y/g x/g] has determinant 1
            col_comb(i, k, s, t, -y // g, x // g)
        if h[i][i] == 0:
            raise ValueError("matrix is singular")
        if h[i][i] < 0:
            for mat in (h, w):
                for r in mat:
                    r[i] = -r[i]
        piv = h[i][i]
        for j in range(i):
            q = h[i][j] // piv
            if q:
                for mat in (h, w):
                    for r in mat:
                        r[j] -= q * r[i]
    return h, w


def _xgcd(a: int, b: int):
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def solve_integer(m: Matrix, b: Sequence[int], snf=None):
    """One integer solution of ``m @ x == b`` or ``None``.

    ``snf`` may carry a precomputed ``smith(m)`` result.
    """
    d, u, v = snf if snf is not None else smith(m)
    rows = len(d)
    cols = len(d[0]) if rows else 0
    c = matvec(u, b)
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di:
                return None
            y[i] = c[i] // di
    return matvec(v, y)


def integer_kernel(m: Matrix, snf=None) -> list[tuple[int, ...]]:
    """A basis of ``{x in Z^n : m @ x == 0}``."""
    d, _, v = snf if snf is not None else smith(m)
    rows = len(d)
    cols = len(d[0]) if rows else 0
    rank = sum(1 for i in range(min(rows, cols)) if d[i][i])
    return [tuple(v[r][j] for r in range(cols)) for j in range(rank, cols)]
