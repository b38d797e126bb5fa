"""Mod-n cohomology of an integral pair via a fixed universal-coefficient splitting.

Given integral groups ``A`` (degree k) and ``B`` (degree k+1), the mod-n
group in degree k is modelled as ``C_n = (A (x) Z/n) + B[n]``. The splitting is
generator-aligned: summand ``i`` of the tensor part comes from generator
``i`` of ``A``, summand ``j`` of the torsion part from torsion generator ``j``
of ``B``. The carrier itself is kept in invariant-factor normal form;
``to_summands``/``from_summands`` translate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .abelian import FgAbelianGroup, GroupHom, direct_sum_of_cyclics
from .errors import PreconditionError
from .intmat import matvec
from .linking import qz


@dataclass(frozen=True, eq=False)
class ModNModel:
    n: int
    A: FgAbelianGroup
    B: FgAbelianGroup
    carrier: FgAbelianGroup
    tensor_orders: tuple     # gcd(a_i, n) per torsion generator of A, then n per free one
    torsion_orders: tuple    # gcd(b_j, n) per torsion generator of B
    _proj: tuple             # summand coords -> carrier coords
    _sect: tuple             # carrier coords -> summand coords
    rho: GroupHom            # A -> C_n
    beta: GroupHom           # C_n -> B

    @property
    def n_tensor(self):
        return len(self.tensor_orders)

    def to_summands(self, c) -> tuple:
        c = self.carrier.check(c)
        raw = matvec(self._sect, c)
        return tuple(x % o for x, o in zip(raw, self.tensor_orders + self.torsion_orders))

    def from_summands(self, s) -> tuple:
        return self.carrier.normalize(matvec(self._proj, list(s)))

    def split(self, c):
        s = self.to_summands(c)
        return s[:self.n_tensor], s[self.n_tensor:]

    def join(self, tensor_part, torsion_part):
        return self.from_summands(tuple(tensor_part) + tuple(torsion_part))

    def elements(self):
        return self.carrier.elements()

    # -- the Q/Z side --------------------------------------------------------
    # C_inf = (A (x) Q/Z) + TB; the first factor is (Q/Z)^free_rank(A), since
    # torsion tensored with Q/Z vanishes.

    def iota(self, c):
        """``iota_n: C_n -> C_inf`` induced by ``Z/n -> Q/Z, 1 -> 1/n``."""
        tensor, tors = self.split(c)
        k = self.A.ntorsion
        qpart = tuple(qz(Fraction(x, self.n)) for x in tensor[k:])
        tb = tuple((b // o) * t % b if o > 1 else 0
                   for t, o, b in zip(tors, self.torsion_orders, self.B.invariant_factors))
        return qpart, tb

    def beta_qz(self, elem) -> tuple:
        """``beta^{Q/Z}: C_inf -> B``: kills the divisible part, includes ``TB``."""
        _, tb = elem
        return self.B.normalize(tuple(tb) + (0,) * self.B.free_rank)


def build_modn(A: FgAbelianGroup, B: FgAbelianGroup, n: int) -> ModNModel:
    if n < 2:
        raise PreconditionError("coefficient modulus must be >= 2")
    tensor_orders = tuple(math.gcd(a, n) for a in A.invariant_factors) + (n,) * A.free_rank
    torsion_orders = tuple(math.gcd(b, n) for b in B.invariant_factors)
    orders = tensor_orders + torsion_orders
    ck = direct_sum_of_cyclics(orders)
    C = ck.group
    proj = tuple(tuple(r) for r in ck.projection)
    sect = tuple(tuple(r) for r in ck.section)

    def summand_to_carrier(s):
        return C.normalize(matvec(proj, list(s)))

    m = len(tensor_orders)
    rho_cols = []
    for i in range(A.ngens):
        s = [0] * len(orders)
        s[i] = 1
        rho_cols.append(summand_to_carrier(s))
    rho = GroupHom.from_columns(A, C, rho_cols)

    beta_cols = []
    for k in range(C.ngens):
        s = [x % o if o else x for x, o in zip((row[k] for row in sect), orders)]
        img = [0] * B.ngens
        for j, (t, o, b) in enumerate(zip(s[m:], torsion_orders, B.invariant_factors)):
            img[j] = (b // o) * t
        beta_cols.append(B.normalize(img))
    beta = GroupHom.from_columns(C, B, beta_cols)
    return ModNModel(n, A, B, C, tensor_orders, torsion_orders, proj, sect, rho, beta)


def coeff_reduce(source: ModNModel, target: ModNModel) -> GroupHom:
    """Reduction ``C_{2k} -> C_2`` of coefficients.

    Natural surjection on the tensor summands, multiplication by ``k`` on
    ``B[2k] -> B[2]``.
    """
    if not (source.A.is_isomorphic(target.A) and source.B.is_isomorphic(target.B)):
        raise PreconditionError("source and target must share (A, B)")
    if target.n != 2 or source.n % 2:
        raise PreconditionError("need an even source modulus and target modulus 2")
    k = source.n // 2
    cols = []
    for g in range(source.carrier.ngens):
        tensor, tors = source.split(source.carrier.gen(g))
        new_tensor = tuple(x % o for x, o in zip(tensor, target.tensor_orders))
        new_tors = []
        for t, o_src, o_tgt, b in zip(tors, source.torsion_orders, target.torsion_orders,
                                      source.B.invariant_factors):
            if o_tgt == 1:
                new_tors.append(0)
                continue
            # k * (b/o_src) t, expressed in units of the B[2] generator b/o_tgt
            num = k * (b // o_src) * t
            unit = b // o_tgt
            if num % unit:
                raise PreconditionError("reduction does not land in B[2]")  # cannot happen
            new_tors.append((num // unit) % o_tgt)
        cols.append(target.join(new_tensor, new_tors))
    return GroupHom.from_columns(source.carrier, target.carrier, cols)
