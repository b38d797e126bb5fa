"""Bit-level linear algebra over GF(2).

Vectors are Python ints: bit ``i`` is coordinate ``i``. A matrix is a list
of row masks. "Least" solutions are least as integers, i.e. the highest
coordinate is the most significant.
"""
from __future__ import annotations


def to_mask(bits) -> int:
    m = 0
    for i, b in enumerate(bits):
        if int(b) & 1:
            m |= 1 << i
    return m


def from_mask(mask: int, n: int) -> tuple:
    return tuple((mask >> i) & 1 for i in range(n))


def parity(x: int) -> int:
    return x.bit_count() & 1


def dot(u: int, v: int) -> int:
    return parity(u & v)


def bits(mask: int):
    """Indices of set bits, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def matvec(rows, v: int) -> int:
    out = 0
    for i, r in enumerate(rows):
        if parity(r & v):
            out |= 1 << i
    return out


def transpose(rows, ncols: int):
    return [sum(((rows[i] >> j) & 1) << i for i in range(len(rows))) for j in range(ncols)]


def reduced_basis(vectors) -> list:
    """Fully reduced echelon basis keyed by highest set bit, sorted descending.

    Each basis vector's top bit is clear in every other basis vector.
    """
    basis = {}
    for v in vectors:
        for top in sorted(basis, reverse=True):
            if v >> top & 1:
                v ^= basis[top]
        if v:
            top = v.bit_length() - 1
            for t in basis:
                if basis[t] >> top & 1:
                    basis[t] ^= v
            basis[top] = v
    return [basis[t] for t in sorted(basis, reverse=True)]


def reduce(v: int, basis) -> int:
    """Least element of ``v + span(basis)`` for a :func:`reduced_basis`."""
    for b in basis:
        top = b.bit_length() - 1
        if v >> top & 1:
            v ^= b
    return v


def in_span(v: int, basis) -> bool:
    return reduce(v, basis) == 0


def rank(vectors) -> int:
    return len(reduced_basis(vectors))


def _rref(rows, ncols):
    """Row reduce; returns (reduced rows, pivot columns)."""
    rows = list(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i] >> c & 1), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] >> c & 1:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
    return rows, pivots


def nullspace(rows, ncols: int) -> list:
    """A basis of ``{x : A x = 0}``."""
    red, pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        x = 1 << f
        for r, p in enumerate(pivots):
            if red[r] >> f & 1:
                x |= 1 << p
        out.append(x)
    return out


def solve(rows, rhs: int, ncols: int):
    """Least solution of ``A x = rhs`` (rows of ``A`` as masks), or ``None``."""
    m = len(rows)
    aug = [rows[i] | (((rhs >> i) & 1) << ncols) for i in range(m)]
    red, pivots = _rref(aug, ncols)
    for r in red[len(pivots):]:
        if r >> ncols & 1:
            return None
    x = 0
    for r, p in enumerate(pivots):
        if red[r] >> ncols & 1:
            x |= 1 << p
    return reduce(x, reduced_basis(nullspace(rows, ncols)))


def least_preimage(columns, target: int, ncols: int = None):
    """Least ``c`` with ``sum c_j columns[j] == target``, or ``None``.

    ``columns`` are masks over the target space.
    """
    n = len(columns) if ncols is None else ncols
    height = max((c.bit_length() for c in columns), default=0)
    height = max(height, target.bit_length())
    rows = transpose(columns, height) if columns else [0] * height
    return solve(rows, target, n)


def inverse(rows, n: int):
    """Inverse of an invertible n x n matrix, or ``None`` if singular."""
    aug = [rows[i] | (1 << (n + i)) for i in range(n)]
    red, pivots = _rref(aug, n)
    if pivots != list(range(n)):
        return None
    return [r >> n for r in red]
