"""Finite groups as multiplication tables; abelianization and index-2 transfer."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .abelian import FgAbelianGroup, GroupHom, group_from_relations
from .errors import InconsistentPresentationError, InvariantViolation, PreconditionError

MAX_CHECKED_ORDER = 512


class FiniteGroupTable:
    """A finite group on ``range(order)`` with ``table[g][h] = g h``.

    ``generators`` maps labels to element indices; ``labels`` names every
    element for printing.
    """

    def __init__(self, table, identity=0, generators=None, labels=None, check=True):
        self.table = np.asarray(table, dtype=np.int64)
        self.order = self.table.shape[0]
        self.identity = int(identity)
        self.generators = dict(generators or {})
        self.labels = list(labels) if labels is not None else [f"g{i}" for i in range(self.order)]
        if self.table.shape != (self.order, self.order):
            raise InconsistentPresentationError("table must be square")
        if check and self.order <= MAX_CHECKED_ORDER:
            self._check()
        inv = np.argmax(self.table == self.identity, axis=1)
        self.inverse = [int(i) for i in inv]

    def _check(self):
        n, t, e = self.order, self.table, self.identity
        if t.min() < 0 or t.max() >= n:
            raise InconsistentPresentationError("table entries out of range")
        ar = np.arange(n)
        if not (np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)):
            raise InconsistentPresentationError(f"{e} is not a two-sided identity")
        for row in t:
            if len(set(row.tolist())) != n:
                raise InconsistentPresentationError("rows are not permutations (no inverses)")
        for c in range(n):
            # (a b) c == a (b c) for all a, b
            if not np.array_equal(t[t, c], t[:, t[:, c]]):
                raise InconsistentPresentationError("multiplication is not associative")

    def mul(self, g, h):
        return int(self.table[g, h])

    def inv(self, g):
        return self.inverse[g]

    def power(self, g, k):
        if k < 0:
            g, k = self.inv(g), -k
        out = self.identity
        for _ in range(k):
            out = self.mul(out, g)
        return out

    def element_order(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def order_census(self):
        return sorted(self.element_order(g) for g in range(self.order))

    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    def generated(self, gens):
        """Subgroup generated by ``gens`` as a sorted list of elements."""
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def subgroup_table(self, elements):
        """The subgroup on ``elements`` as its own table, plus the index map."""
        elements = sorted(elements)
        pos = {g: i for i, g in enumerate(elements)}
        try:
            sub = [[pos[self.mul(a, b)] for b in elements] for a in elements]
        except KeyError:
            raise PreconditionError("elements are not closed under multiplication") from None
        H = FiniteGroupTable(sub, pos[self.identity],
                             labels=[self.labels[g] for g in elements], check=False)
        return H, elements

    def parse_word(self, word: str) -> int:
        """Evaluate words such as ``a^2``, ``a^3 b``, ``b*a^-1`` in the generators."""
        word = word.replace("*", " ").strip()
        if word in ("", "1", "e"):
            return self.identity
        out = self.identity
        for name, exp in re.findall(r"([A-Za-z]\w*)(?:\^(-?\d+))?", word):
            if name not in self.generators:
                raise PreconditionError(f"unknown generator {name!r}")
            out = self.mul(out, self.power(self.generators[name], int(exp) if exp else 1))
        return out


def build_semidirect(n: int, k: int) -> FiniteGroupTable:
    """``C_n x| C_2 = <a, b | a^n, b^2, b a b^-1 = a^k>``; element ``a^i b^j`` has index ``i + n j``."""
    if n < 1:
        raise InconsistentPresentationError("n must be positive")
    if (k * k - 1) % n:
        raise InconsistentPresentationError(f"{k}^2 != 1 mod {n}: b^2 = 1 is inconsistent")
    size = 2 * n
    table = np.empty((size, size), dtype=np.int64)
    for j in range(2):
        for i in range(n):
            twist = pow(k, j, n)
            for j2 in range(2):
                for i2 in range(n):
                    table[i + n * j, i2 + n * j2] = (i + twist * i2) % n + n * ((j + j2) % 2)

    def label(idx):
        i, j = idx % n, idx // n
        parts = ([] if i == 0 else ["a" if i == 1 else f"a^{i}"]) + (["b"] if j else [])
        return "".join(parts) or "1"

    gens = {"a": 1 % size if n > 1 else 0, "b": n}
    return FiniteGroupTable(table, 0, gens, [label(g) for g in range(size)])


def abelian_table(orders) -> FiniteGroupTable:
    """The table of ``Z/o_1 x ... x Z/o_m`` (generators ``g0, g1, ...``)."""
    orders = list(orders)
    size = math.prod(orders)
    coords = list(np.ndindex(*orders)) if orders else [()]
    index = {c: i for i, c in enumerate(coords)}
    table = [[index[tuple((x + y) % o for x, y, o in zip(a, b, orders))] for b in coords]
             for a in coords]
    gens = {f"g{i}": index[tuple(int(i == j) for j in range(len(orders)))]
            for i in range(len(orders))}
    labels = ["(" + ",".join(map(str, c)) + ")" for c in coords]
    return FiniteGroupTable(table if size else [[0]], 0, gens, labels)


@dataclass
class Abelianization:
    group: FgAbelianGroup
    commutator: list          # elements of [G, G]
    image: list               # image[g] = coordinates of g[G, G]
    generators: list          # elements of G whose images generate (chosen greedily)

    def lift(self, coords) -> int:
        """The least element of ``G`` mapping to ``coords``."""
        coords = self.group.normalize(coords)
        return next(g for g, c in enumerate(self.image) if c == coords)


def commutator_subgroup(G: FiniteGroupTable) -> list:
    comms = {G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))
             for a in range(G.order) for b in range(G.order)}
    return G.generated(sorted(comms))


def abelianization(G: FiniteGroupTable) -> Abelianization:
    """``G / [G, G]`` in invariant-factor form, with the projection elementwise.

    Relations come from the Cayley graph of the quotient on a greedy
    generating set: walking a spanning tree from the identity assigns each
    coset a word, and every non-tree edge contributes one relation.
    """
    if G.order > MAX_CHECKED_ORDER:
        raise PreconditionError(f"order {G.order} exceeds {MAX_CHECKED_ORDER}")
    comm = commutator_subgroup(G)
    comm_set = set(comm)
    coset_of = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            c = len(reps)
            reps.append(g)
            for h in comm:
                coset_of[G.mul(g, h)] = c
    ncos = len(reps)

    def qmul(c1, c2):
        return coset_of[G.mul(reps[c1], reps[c2])]

    gens = []
    reach = {coset_of[G.identity]}
    for g in list(G.generators.values()) + list(range(G.order)):
        if len(reach) == ncos:
            break
        c = coset_of[g]
        if c in reach:
            continue
        gens.append(g)
        closure = set(reach)
        frontier = list(reach)
        while frontier:
            nxt = []
            for x in frontier:
                for h in gens:
                    y = qmul(x, coset_of[h])
                    if y not in closure:
                        closure.add(y)
                        nxt.append(y)
            frontier = nxt
        reach = closure
    s = len(gens)
    word = {coset_of[G.identity]: [0] * s}
    order = [coset_of[G.identity]]
    relations = []
    for c in order:
        for i, h in enumerate(gens):
            d = qmul(c, coset_of[h])
            w = list(word[c])
            w[i] += 1
            if d in word:
                rel = [a - b for a, b in zip(w, word[d])]
                if any(rel):
                    relations.append(rel)
            else:
                word[d] = w
                order.append(d)
    A, proj = group_from_relations(relations, s)
    if A.order != ncos:
        raise InvariantViolation(f"abelianization order {A.order} != index {ncos}")
    image = [proj(word[coset_of[g]]) for g in range(G.order)]
    if not comm_set <= {g for g in range(G.order) if not any(image[g])}:
        raise InvariantViolation("commutators do not map to zero")
    return Abelianization(A, comm, image, gens)


@dataclass
class IndexTwoData:
    """``G`` with a surjective character ``chi: G -> Z/2``; ``H = ker chi``."""

    group: FiniteGroupTable
    character: dict                   # generator label -> 0/1
    representative: Optional[int] = None

    def __post_init__(self):
        G = self.group
        values = {G.identity: 0}
        frontier = [G.identity]
        gens = [(G.generators[k], int(v) % 2) for k, v in self.character.items()]
        if set(self.character) != set(G.generators):
            raise PreconditionError("character must be given on every generator")
        while frontier:
            nxt = []
            for x in frontier:
                for g, v in gens:
                    y = G.mul(x, g)
                    if y not in values:
                        values[y] = values[x] ^ v
                        nxt.append(y)
            frontier = nxt
        if len(values) != G.order:
            raise PreconditionError("labelled generators do not generate the group")
        chi = [values[g] for g in range(G.order)]
        for a in range(G.order):
            for b in range(G.order):
                if chi[G.mul(a, b)] != chi[a] ^ chi[b]:
                    raise PreconditionError("character is not a homomorphism")
        if not any(chi):
            raise PreconditionError("character is trivial; kernel has index 1")
        self.chi = chi
        self.subgroup = [g for g in range(G.order) if chi[g] == 0]
        if self.representative is None:
            self.representative = next(g for g in range(G.order) if chi[g])
        elif chi[self.representative] == 0:
            raise PreconditionError("coset representative lies in H")


@dataclass
class Transfer:
    data: IndexTwoData
    source: Abelianization          # of G
    target: Abelianization          # of H, indexed by position in data.subgroup
    H: FiniteGroupTable
    hom: GroupHom                   # G_ab -> H_ab
    values: list                    # values[g] = transfer of g, as H_ab coordinates

    def of_element(self, g) -> tuple:
        return self.values[g]

    def as_element_of_G(self, coords) -> int:
        """A representative in ``G`` (least index) of an ``H_ab`` class."""
        return self.data.subgroup[self.target.lift(coords)]


def transfer_index2(data: IndexTwoData, representative: Optional[int] = None) -> Transfer:
    """Transfer ``G_ab -> H_ab`` from coset representatives ``{1, r}``.

    ``g`` in ``H`` goes to ``g (r g r^-1)``, ``g`` outside ``H`` to ``g^2``; both
    computed in ``H`` and projected to ``H_ab``. Raises if the values do not
    factor through a homomorphism on ``G_ab``.
    """
    G = data.group
    r = data.representative if representative is None else representative
    if data.chi[r] == 0:
        raise PreconditionError("representative must lie outside H")
    Gab = abelianization(G)
    Htab, elems = G.subgroup_table(data.subgroup)
    Hab = abelianization(Htab)
    pos = {g: i for i, g in enumerate(elems)}

    values = []
    for g in range(G.order):
        if data.chi[g] == 0:
            h = G.mul(g, G.mul(G.mul(r, g), G.inv(r)))
        else:
            h = G.mul(g, g)
        values.append(Hab.image[pos[h]])

    cols = [values[Gab.lift(Gab.group.gen(i))] for i in range(Gab.group.ngens)]
    try:
        hom = GroupHom.from_columns(Gab.group, Hab.group, cols)
    except PreconditionError as exc:
        raise InvariantViolation(f"transfer is not well defined on G_ab: {exc}") from exc
    for g in range(G.order):
        if hom(Gab.image[g]) != values[g]:
            raise InvariantViolation(f"transfer value at {G.labels[g]} does not factor through G_ab")
    return Transfer(data, Gab, Hab, Htab, hom, values)


def abelianized_presentation_group(n: int, k: int):
    """``<a, b | a = a^k, a^n, b^2>`` abelianized, by Smith normal form on relation rows."""
    return group_from_relations([[k - 1, 0], [n, 0], [0, 2]], 2)
