"""Exact integer matrix normal forms.

All matrices are lists of lists of Python ints, so there is no overflow to
guard against. Sizes in this package are tiny; the algorithms favour
clarity over asymptotics.
"""
from __future__ import annotations

from dataclasses import dataclass


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


@dataclass
class SmithForm:
    """Result of :func:`smith_normal_form`.

    ``left @ A @ right`` is diagonal with entries ``diag`` (padded by zeros),
    ``diag[i]`` divides ``diag[i+1]``, and ``right_inv`` is the inverse of
    ``right``. Both ``left`` and ``right`` are unimodular.
    """

    diag: list
    left: list
    right: list
    right_inv: list
    rank: int


def smith_normal_form(a, nrows=None, ncols=None):
    """Smith normal form of an integer matrix with both transforms.

    ``nrows``/``ncols`` are only needed for empty matrices, where the
    shape cannot be read off the data.
    """
    m = len(a) if nrows is None else nrows
    n = (len(a[0]) if a else 0) if ncols is None else ncols
    d = [list(map(int, row)) for row in a] if m else []
    if m and any(len(row) != n for row in d):
        raise ValueError("ragged matrix")
    u = identity(m)
    v = identity(n)
    vinv = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(src, dst, q):
        # row_dst += q * row_src
        if q:
            d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        # col_dst += q * col_src; inverse is row_src -= q * row_dst on vinv
        if q:
            for row in d:
                row[dst] += q * row[src]
            for row in v:
                row[dst] += q * row[src]
            vinv[src] = [x - q * y for x, y in zip(vinv[src], vinv[dst])]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the trailing block becomes the pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    if d[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    if d[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than p survived; move it to the pivot
                best = None
                for i in range(t, m):
                    if d[i][t] and (best is None or abs(d[i][t]) < abs(best[2])):
                        best = (i, t, d[i][t])
                for j in range(t, n):
                    if d[t][j] and abs(d[t][j]) < abs(best[2]):
                        best = (t, j, d[t][j])
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    diag = [d[i][i] for i in range(min(m, n))]
    rank = sum(1 for x in diag if x)
    return SmithForm(diag=diag, left=u, right=v, right_inv=vinv, rank=rank)


def solve(a, b, ncols=None):
    """An integer solution of ``a @ x == b``, or ``None`` if none exists."""
    m = len(a)
    n = (len(a[0]) if a else 0) if ncols is None else ncols
    if m != len(b):
        raise ValueError("shape mismatch")
    s = smith_normal_form(a, m, n)
    ub = matvec(s.left, b)
    y = [0] * n
    for i in range(m):
        di = s.diag[i] if i < len(s.diag) else 0
        if di == 0:
            if ub[i]:
                return None
        else:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
    return matvec(s.right, y)


def kernel(a, ncols=None):
    """A Z-basis of the integer kernel ``{x : a @ x == 0}``."""
    n = (len(a[0]) if a else 0) if ncols is None else ncols
    s = smith_normal_form(a, len(a), n)
    return [[s.right[i][j] for i in range(n)] for j in range(s.rank, n)]

