"""Finitely generated abelian groups in invariant-factor normal form.

A group is ``Z/d_1 + ... + Z/d_k + Z^r`` with ``d_1 | d_2 | ... | d_k`` and
every ``d_i >= 2``. Elements are coordinate tuples: one residue in
``range(d_i)`` per torsion generator, then one integer per free generator.
Homomorphisms carry an explicit integer matrix whose column ``j`` is the
image of generator ``j``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import intmat
from .errors import MalformedElementError, PreconditionError

INFINITE = math.inf


@dataclass(frozen=True)
class FgAbelianGroup:
    invariant_factors: tuple = ()
    free_rank: int = 0

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        if any(d < 2 for d in factors):
            raise ValueError(f"invariant factors must be >= 2, got {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {factors}")
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")

    @classmethod
    def cyclic(cls, d):
        return cls((d,)) if d != 0 else cls((), 1)

    @classmethod
    def elementary(cls, p, k):
        """``(Z/p)^k``."""
        return cls((p,) * k)

    @property
    def ngens(self):
        return len(self.invariant_factors) + self.free_rank

    @property
    def ntorsion(self):
        return len(self.invariant_factors)

    @property
    def is_finite(self):
        return self.free_rank == 0

    @property
    def order(self):
        return math.prod(self.invariant_factors) if self.is_finite else INFINITE

    @property
    def torsion_order(self):
        return math.prod(self.invariant_factors)

    @property
    def exponent(self):
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def zero(self):
        return (0,) * self.ngens

    def gen(self, i):
        return tuple(int(i == j) for j in range(self.ngens))

    def normalize(self, v) -> tuple:
        """Reduce an arbitrary integer vector to normal coordinates."""
        v = tuple(int(x) for x in v)
        if len(v) != self.ngens:
            raise MalformedElementError(f"expected {self.ngens} coordinates, got {len(v)}")
        k = self.ntorsion
        return tuple(x % d for x, d in zip(v[:k], self.invariant_factors)) + v[k:]

    def check(self, v) -> tuple:
        """Return ``v`` as a tuple after checking it is already in normal form."""
        try:
            v = tuple(int(x) for x in v)
        except (TypeError, ValueError) as exc:
            raise MalformedElementError(f"not an integer vector: {v!r}") from exc
        if len(v) != self.ngens:
            raise MalformedElementError(f"expected {self.ngens} coordinates, got {len(v)}")
        for x, d in zip(v, self.invariant_factors):
            if not 0 <= x < d:
                raise MalformedElementError(f"coordinate {x} out of range for Z/{d}")
        return v

    def add(self, u, v):
        return self.normalize(a + b for a, b in zip(u, v))

    def scale(self, n, v):
        return self.normalize(n * a for a in v)

    def neg(self, v):
        return self.scale(-1, v)

    def is_torsion(self, v):
        return not any(v[self.ntorsion:])

    def torsion_elements(self):
        """All torsion elements, in lexicographic coordinate order."""
        pad = (0,) * self.free_rank
        for t in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield t + pad

    def elements(self):
        if not self.is_finite:
            raise PreconditionError("cannot enumerate an infinite group")
        return self.torsion_elements()

    def lattice_columns(self):
        """Columns ``d_i e_i`` generating the relation lattice in ``Z^ngens``."""
        cols = []
        for i, d in enumerate(self.invariant_factors):
            c = [0] * self.ngens
            c[i] = d
            cols.append(c)
        return cols

    def is_isomorphic(self, other):
        return (self.invariant_factors, self.free_rank) == (other.invariant_factors, other.free_rank)

    def __str__(self):
        parts = [f"C{d}" for d in self.invariant_factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "trivial"


def free_group(n) -> FgAbelianGroup:
    return FgAbelianGroup((), n)


def element_order(G: FgAbelianGroup, g):
    """Least ``n >= 1`` with ``n g = 0``; ``INFINITE`` if a free coordinate is nonzero."""
    g = G.check(g)
    if not G.is_torsion(g):
        return INFINITE
    order = 1
    for x, d in zip(g, G.invariant_factors):
        order = math.lcm(order, d // math.gcd(d, x))
    return order


@dataclass(frozen=True, eq=False)
class GroupHom:
    """A homomorphism given by its action on generators.

    ``matrix`` has one row per codomain coordinate and one column per domain
    generator. Construction checks that a generator of order ``d`` is sent
    to an element killed by ``d``.
    """

    domain: FgAbelianGroup
    codomain: FgAbelianGroup
    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(rows) != self.codomain.ngens or any(len(r) != self.domain.ngens for r in rows):
            raise PreconditionError(
                f"matrix shape must be {self.codomain.ngens}x{self.domain.ngens}")
        object.__setattr__(self, "matrix", rows)
        for j, d in enumerate(self.domain.invariant_factors):
            col = self.column(j)
            if self.codomain.scale(d, col) != self.codomain.zero():
                raise PreconditionError(
                    f"generator {j} has order {d} but its image {col} is not killed by {d}")

    @classmethod
    def from_columns(cls, domain, codomain, columns):
        if not columns:
            return cls(domain, codomain, tuple(() for _ in range(codomain.ngens)))
        return cls(domain, codomain, tuple(zip(*columns)) if codomain.ngens else ())

    @classmethod
    def zero(cls, domain, codomain):
        return cls(domain, codomain, tuple((0,) * domain.ngens for _ in range(codomain.ngens)))

    @classmethod
    def identity(cls, G):
        return cls(G, G, tuple(G.gen(i) for i in range(G.ngens)))

    def column(self, j):
        return self.codomain.normalize(row[j] for row in self.matrix)

    def __call__(self, v):
        v = self.domain.check(v)
        return self.codomain.normalize(intmat.matvec(self.matrix, v))

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self o inner``."""
        if not inner.codomain.is_isomorphic(self.domain):
            raise PreconditionError("cannot compose: codomain/domain mismatch")
        cols = [self(inner.column(j)) for j in range(inner.domain.ngens)]
        return GroupHom.from_columns(inner.domain, self.codomain, cols)

    def scaled(self, k) -> "GroupHom":
        cols = [self.codomain.scale(k, self.column(j)) for j in range(self.domain.ngens)]
        return GroupHom.from_columns(self.domain, self.codomain, cols)

    def kernel(self):
        """Generators of the kernel, as domain elements."""
        D, C = self.domain, self.codomain
        if C.ngens == 0:
            return [D.gen(i) for i in range(D.ngens)]
        # M x + diag(c) y = 0, restricted to the codomain's torsion rows
        pad = [[0] * C.ntorsion for _ in range(C.ngens)]
        for i, c in enumerate(C.invariant_factors):
            pad[i][i] = c
        big = [list(row) + pad[r] for r, row in enumerate(self.matrix)]
        gens = []
        for vec in intmat.kernel(big, D.ngens + C.ntorsion):
            g = D.normalize(vec[:D.ngens])
            if any(g) and g not in gens:
                gens.append(g)
        return gens

    def image(self):
        """Generators of the image."""
        out = []
        for j in range(self.domain.ngens):
            c = self.column(j)
            if any(c) and c not in out:
                out.append(c)
        return out

    def is_injective(self):
        return not self.kernel()

    def is_surjective(self):
        return subgroups_equal(self.codomain, self.image(),
                               [self.codomain.gen(i) for i in range(self.codomain.ngens)])


class Cokernel(NamedTuple):
    group: FgAbelianGroup
    projection: list   # group coords x input coords
    section: list      # input coords x group coords; column k lifts generator k


def cokernel(relations, n_generators) -> Cokernel:
    """``Z^n / rowspace(relations)`` in normal form, with projection and a section."""
    rel = [list(map(int, r)) for r in relations]
    if any(len(r) != n_generators for r in rel):
        raise PreconditionError(f"every relation must have {n_generators} entries")
    s = intmat.smith_normal_form(rel, len(rel), n_generators)
    # v -> v @ right sends the row lattice onto the diagonal lattice
    torsion, free = [], []
    for i in range(n_generators):
        d = s.diag[i] if i < len(s.diag) else 0
        if d == 0:
            free.append(i)
        elif d > 1:
            torsion.append((i, d))
    keep = [i for i, _ in torsion] + free
    group = FgAbelianGroup(tuple(d for _, d in torsion), len(free))
    projection = [[s.right[r][i] for r in range(n_generators)] for i in keep]
    section = [[s.right_inv[i][r] for i in keep] for r in range(n_generators)]
    return Cokernel(group, projection, section)


def group_from_relations(relations, n_generators):
    """Abelian group presented by integer relation rows on ``n_generators`` generators.

    Returns the group and the projection from the free abelian group on the
    generators.
    """
    ck = cokernel(relations, n_generators)
    G = ck.group
    proj = GroupHom(free_group(n_generators), G,
                    tuple(tuple(row) for row in ck.projection))
    return G, proj


def _span_matrix(G, gens):
    cols = [list(g) for g in gens] + G.lattice_columns()
    return intmat.transpose(cols) if cols and G.ngens else [[] for _ in range(G.ngens)], len(cols)


def contains(G: FgAbelianGroup, gens: Sequence, x) -> bool:
    """Whether ``x`` lies in the subgroup generated by ``gens``."""
    a, ncols = _span_matrix(G, gens)
    return intmat.solve(a, list(x), ncols) is not None


def subgroups_equal(G, gens_a, gens_b) -> bool:
    return (all(contains(G, gens_b, g) for g in gens_a)
            and all(contains(G, gens_a, g) for g in gens_b))


def subgroup_difference_witness(G, gens_a, gens_b):
    """An element in one subgroup but not the other, or ``None`` if equal."""
    for g in gens_a:
        if not contains(G, gens_b, g):
            return g
    for g in gens_b:
        if not contains(G, gens_a, g):
            return g
    return None


def subgroup(G: FgAbelianGroup, gens: Sequence):
    """Normal form of the subgroup generated by ``gens`` and its inclusion into ``G``."""
    gens = [G.normalize(g) for g in gens]
    s = len(gens)
    a, ncols = _span_matrix(G, gens)
    rels = [vec[:s] for vec in intmat.kernel(a, ncols)] if G.ngens else \
        [[int(i == j) for j in range(s)] for i in range(s)]
    ck = cokernel(rels, s)
    H = ck.group
    cols = []
    for k in range(H.ngens):
        lift = [ck.section[r][k] for r in range(s)]
        cols.append(G.normalize(sum(c * g[i] for c, g in zip(lift, gens)) for i in range(G.ngens)))
    return H, GroupHom.from_columns(H, G, cols)


def multiples(G: FgAbelianGroup, n):
    """Generators of ``n G``."""
    return [G.scale(n, G.gen(i)) for i in range(G.ngens)]


def n_torsion_gens(G: FgAbelianGroup, n):
    """Generators of ``G[n]``, one per torsion factor (zeros included)."""
    gens = []
    for i, d in enumerate(G.invariant_factors):
        g = [0] * G.ngens
        g[i] = d // math.gcd(d, n)
        gens.append(tuple(g))
    return gens


@dataclass(frozen=True)
class TorsionStructure:
    torsion: FgAbelianGroup
    torsion_inclusion: GroupHom
    n_torsion: FgAbelianGroup
    n_torsion_inclusion: GroupHom
    dual: FgAbelianGroup
    pairing: "object"   # linking.QZPairing on torsion x dual


def torsion_structure(G: FgAbelianGroup, n: int) -> TorsionStructure:
    """Torsion subgroup, ``n``-torsion subgroup and torsion dual of ``G``.

    The dual ``Hom(TG, Q/Z)`` is realised on the same invariant factors, the
    ``i``-th dual generator sending the ``i``-th generator to ``1/d_i``.
    """
    from .linking import evaluation_pairing

    if n < 1:
        raise PreconditionError("n must be positive")
    k = G.ntorsion
    TG = FgAbelianGroup(G.invariant_factors, 0)
    t_incl = GroupHom.from_columns(TG, G, [G.gen(i) for i in range(k)])

    factors, cols = [], []
    for i, d in enumerate(G.invariant_factors):
        g = math.gcd(d, n)
        if g > 1:
            factors.append(g)
            col = [0] * G.ngens
            col[i] = d // g
            cols.append(tuple(col))
    Gn = FgAbelianGroup(tuple(factors), 0)
    n_incl = GroupHom.from_columns(Gn, G, cols)

    return TorsionStructure(TG, t_incl, Gn, n_incl, TG, evaluation_pairing(TG))


def direct_sum_of_cyclics(orders) -> Cokernel:
    """Normal form of ``Z/o_1 + ... + Z/o_m`` (order 0 means ``Z``, 1 is allowed).

    Projection and section translate between summand coordinates and the
    normal-form coordinates.
    """
    orders = [int(o) for o in orders]
    rels = []
    for i, o in enumerate(orders):
        if o != 0:
            r = [0] * len(orders)
            r[i] = o
            rels.append(r)
    return cokernel(rels, len(orders))


def subgroup_elements(G: FgAbelianGroup, gens) -> set:
    """All elements of a finite subgroup, by closure. For tests and tiny groups."""
    seen = {G.zero()}
    frontier = [G.zero()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def parse_group(data) -> FgAbelianGroup:
    """Build a group from ``{"invariant_factors": [...], "free_rank": n}``."""
    return FgAbelianGroup(tuple(data.get("invariant_factors", ())), int(data.get("free_rank", 0)))


def group_to_dict(G: FgAbelianGroup) -> dict:
    return {"invariant_factors": list(G.invariant_factors), "free_rank": G.free_rank}

