"""Symmetric bilinear forms and symmetric trilinear tensors over GF(2)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import gf2
from .errors import BasisError, InvariantViolation, MalformedModelError


def _bitvec(v, n, what="vector"):
    v = tuple(int(x) for x in v)
    if len(v) != n or any(x not in (0, 1) for x in v):
        raise MalformedModelError(f"{what} must be a length-{n} bit vector, got {v}")
    return v


@dataclass(frozen=True)
class Z2SymForm:
    """A symmetric bilinear form ``lambda(u, v) = u^T A v`` on ``GF(2)^dim``."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) & 1 for x in row) for row in self.matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise MalformedModelError("form matrix must be square")
        if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
            raise MalformedModelError("form matrix must be symmetric")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def zero(cls, n):
        return cls(tuple((0,) * n for _ in range(n)))

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_masks(cls, rows, n):
        return cls(tuple(gf2.from_mask(r, n) for r in rows))

    @property
    def dim(self):
        return len(self.matrix)

    @cached_property
    def row_masks(self):
        return [gf2.to_mask(r) for r in self.matrix]

    def __call__(self, u, v) -> int:
        u = gf2.to_mask(_bitvec(u, self.dim))
        v = gf2.to_mask(_bitvec(v, self.dim))
        return gf2.dot(u, gf2.matvec(self.row_masks, v))

    def adjoint(self, v) -> tuple:
        """``lambda^(v) = lambda(v, -)`` as a coefficient vector in the dual basis."""
        return gf2.from_mask(gf2.matvec(self.row_masks, gf2.to_mask(_bitvec(v, self.dim))),
                             self.dim)

    def gamma(self) -> tuple:
        """The linear functional ``v -> lambda(v, v)``; its coefficients are the diagonal."""
        return tuple(self.matrix[i][i] for i in range(self.dim))

    def is_nonsingular(self) -> bool:
        return gf2.rank(self.row_masks) == self.dim

    def radical(self) -> list:
        return [gf2.from_mask(v, self.dim) for v in gf2.reduced_basis(
            gf2.nullspace(self.row_masks, self.dim))]

    def restrict(self, basis) -> "Z2SymForm":
        """Gram matrix on the span of ``basis`` (assumed independent)."""
        masks = [gf2.to_mask(_bitvec(b, self.dim)) for b in basis]
        images = [gf2.matvec(self.row_masks, c) for c in masks]
        return Z2SymForm(tuple(tuple(gf2.dot(b, im) for im in images) for b in masks))


def orthogonal_sum(a: Z2SymForm, b: Z2SymForm) -> Z2SymForm:
    n, m = a.dim, b.dim
    rows = [tuple(a.matrix[i]) + (0,) * m for i in range(n)]
    rows += [(0,) * n + tuple(b.matrix[i]) for i in range(m)]
    return Z2SymForm(tuple(rows))


def solve_diagonal(form: Z2SymForm) -> tuple:
    """The least ``d`` with ``A d = diag(A)``.

    A solution always exists for symmetric ``A`` over GF(2); "least" reads
    ``d`` as a binary number with coordinate ``i`` weighing ``2**i``.
    """
    n = form.dim
    d = gf2.solve(form.row_masks, gf2.to_mask(form.gamma()), n)
    if d is None:
        raise InvariantViolation(f"diagonal not in column space of {form.matrix}")
    return gf2.from_mask(d, n)


@dataclass(frozen=True)
class Decomposition:
    """``P^T A P = 0 (+) B``: the first ``len(radical)`` columns of ``P`` span the radical."""

    radical: tuple
    change_of_basis: tuple   # rows of P; column k is the k-th new basis vector
    nonsingular: Z2SymForm

    @property
    def columns(self):
        n = len(self.change_of_basis)
        return [tuple(self.change_of_basis[i][k] for i in range(n)) for k in range(n)]


def decompose_zero_nonsingular(form: Z2SymForm) -> Decomposition:
    """Split ``form`` as the zero form on its radical plus a nonsingular block.

    The complement is the greedy extension of the radical basis by standard
    basis vectors, taken in index order.
    """
    n = form.dim
    rad = gf2.reduced_basis(gf2.nullspace(form.row_masks, n))
    span = list(rad)
    complement = []
    for i in range(n):
        e = 1 << i
        if gf2.rank(span + [e]) > len(span):
            span.append(e)
            complement.append(e)
    cols = rad + complement
    P = tuple(tuple((cols[k] >> i) & 1 for k in range(n)) for i in range(n))
    comp_vecs = [gf2.from_mask(c, n) for c in complement]
    block = form.restrict(comp_vecs)
    if not block.is_nonsingular():
        raise InvariantViolation("complement of the radical is singular")
    return Decomposition(tuple(gf2.from_mask(r, n) for r in rad), P, block)


def solve_diagonal_by_decomposition(form: Z2SymForm) -> tuple:
    """A witness ``d`` with ``A d = diag(A)`` built from the 0 (+) nonsingular split.

    On the nonsingular block the witness is ``B^{-1} diag(B)``; the radical
    contributes nothing. Not pinned: may differ from :func:`solve_diagonal`.
    """
    n = form.dim
    dec = decompose_zero_nonsingular(form)
    block = dec.nonsingular
    m = block.dim
    inv = gf2.inverse(block.row_masks, m)
    d_block = gf2.matvec(inv, gf2.to_mask(block.gamma())) if m else 0
    r = len(dec.radical)
    cols = dec.columns
    d = 0
    for k in gf2.bits(d_block):
        d ^= gf2.to_mask(cols[r + k])
    return gf2.from_mask(d, n)


class Z2Trilinear:
    """A fully symmetric trilinear form ``T: V x V x V -> GF(2)``.

    Stored densely as ``slices[a][b]``: the mask of all ``c`` with
    ``T(e_a, e_b, e_c) = 1``.
    """

    __slots__ = ("dim", "slices", "__weakref__")

    def __init__(self, dim, tensor):
        dim = int(dim)
        tensor = [[[int(tensor[a][b][c]) & 1 for c in range(dim)] for b in range(dim)]
                  for a in range(dim)]
        for a, b, c in itertools.product(range(dim), repeat=3):
            v = tensor[a][b][c]
            for p in itertools.permutations((a, b, c)):
                if tensor[p[0]][p[1]][p[2]] != v:
                    raise MalformedModelError(f"tensor not symmetric at {(a, b, c)} vs {p}")
        self.dim = dim
        self.slices = tuple(tuple(gf2.to_mask(tensor[a][b]) for b in range(dim))
                            for a in range(dim))

    @classmethod
    def from_triples(cls, dim, triples):
        """Symmetrize a list of index triples carrying the value 1."""
        t = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
        for trip in triples:
            trip = tuple(int(i) for i in trip)
            if len(trip) != 3 or any(not 0 <= i < dim for i in trip):
                raise MalformedModelError(f"bad tensor index triple {trip} for dim {dim}")
            for a, b, c in itertools.permutations(trip):
                t[a][b][c] = 1
        return cls(dim, t)

    @classmethod
    def _from_slices(cls, dim, slices):
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.slices = slices
        return obj

    def triples(self) -> list:
        """Sorted representatives ``a <= b <= c`` of the nonzero orbits."""
        return [(a, b, c) for a, b, c in itertools.combinations_with_replacement(range(self.dim), 3)
                if self.slices[a][b] >> c & 1]

    def entry(self, a, b, c) -> int:
        return (self.slices[a][b] >> c) & 1

    def mask_eval(self, u: int, v: int, w: int) -> int:
        acc = 0
        for a in gf2.bits(u):
            row = self.slices[a]
            for b in gf2.bits(v):
                acc ^= row[b]
        return gf2.parity(acc & w)

    def contract(self, u: int, v: int) -> int:
        """The mask of ``w -> T(u, v, w)``."""
        acc = 0
        for a in gf2.bits(u):
            row = self.slices[a]
            for b in gf2.bits(v):
                acc ^= row[b]
        return acc

    def __call__(self, u, v, w) -> int:
        n = self.dim
        return self.mask_eval(gf2.to_mask(_bitvec(u, n)), gf2.to_mask(_bitvec(v, n)),
                              gf2.to_mask(_bitvec(w, n)))

    def __eq__(self, other):
        return isinstance(other, Z2Trilinear) and (self.dim, self.slices) == (other.dim, other.slices)

    def __hash__(self):
        return hash((self.dim, self.slices))

    def __repr__(self):
        return f"Z2Trilinear(dim={self.dim}, triples={self.triples()})"


def form_from_trilinear(T: Z2Trilinear, x, basis) -> Z2SymForm:
    """The form ``(u, w) -> T(u, x, w)`` restricted to ``span(basis)``."""
    n = T.dim
    xm = gf2.to_mask(_bitvec(x, n, "x"))
    masks = [gf2.to_mask(_bitvec(b, n, "basis vector")) for b in basis]
    if gf2.rank(masks) != len(masks):
        raise BasisError("subspace basis is linearly dependent")
    return Z2SymForm(tuple(tuple(T.mask_eval(b, xm, c) for c in masks) for b in masks))


def all_symmetric_matrices(n):
    """Every symmetric n x n bit matrix, ``2**(n(n+1)/2)`` of them."""
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    for values in itertools.product((0, 1), repeat=len(cells)):
        a = [[0] * n for _ in range(n)]
        for (i, j), v in zip(cells, values):
            a[i][j] = a[j][i] = v
        yield Z2SymForm(tuple(map(tuple, a)))
