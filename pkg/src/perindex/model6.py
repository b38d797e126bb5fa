"""Finite cohomology models of closed oriented 6-manifolds.

A model records integral ``H^2`` and ``H^3``, the mod-2 group ``W`` in degree
2, the reduction ``red2: H^2 -> W`` and Bockstein ``bock: W -> H^3``, the
mod-2 triple products ``T(a, b, c) = <abc, [N]>``, the Wu class ``v2`` and,
for spin^c models, an integral lift ``c1`` of ``v2``.

Two-torsion classes of ``H^5`` are never stored. The linking pairing with
``TH^2`` is perfect, and a 2-torsion class pairs through
``V = red2(TH^2) = TH^2 / 2TH^2``, so such classes are represented as linear
functionals on ``V`` (:class:`TorsionFunctional`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from . import gf2
from .abelian import (FgAbelianGroup, GroupHom, multiples, n_torsion_gens,
                      subgroup_difference_witness)
from .errors import MalformedModelError, PreconditionError
from .forms2 import Z2Trilinear


@dataclass(frozen=True)
class Violation:
    invariant: int
    message: str
    witness: tuple = ()

    def __str__(self):
        return f"invariant {self.invariant}: {self.message} (witness {self.witness})"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def failed(self):
        return sorted({v.invariant for v in self.violations})


@dataclass(frozen=True)
class TorsionFunctional:
    """A functional on ``V``, given by its values on the model's pinned basis of ``V``."""

    values: tuple

    def is_zero(self):
        return not any(self.values)

    def __bool__(self):
        return not self.is_zero()


@dataclass(frozen=True)
class Frame:
    """Non-canonical choices pinned once per model.

    Masks index ``W``; ``*_lifts`` are ``H^2`` coordinate vectors.
    """

    red2_cols: tuple        # image of each H2 generator
    im_red2: tuple          # reduced basis of im(red2)
    im_red2_lifts: tuple    # an H2 preimage of each im_red2 vector
    V: tuple                # reduced basis of red2(TH2)
    V_lifts: tuple          # a TH2 preimage of each V vector
    bock2_cols: tuple       # bock of each W basis vector, as a mask over H3[2]
    h3_even: tuple          # torsion generators of H3 with even order


@dataclass(frozen=True, eq=False)
class SixManifoldModel:
    H2: FgAbelianGroup
    H3: FgAbelianGroup
    dim_W: int
    red2: tuple              # dim_W x H2.ngens bit matrix
    bock: tuple              # H3.ngens x dim_W integer matrix
    T: Z2Trilinear
    v2: tuple
    c1: Optional[tuple] = None
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        n = int(self.dim_W)
        if n < 0:
            raise MalformedModelError("dim_W must be non-negative")
        object.__setattr__(self, "dim_W", n)
        red2 = tuple(tuple(int(x) for x in row) for row in self.red2)
        if len(red2) != n or any(len(r) != self.H2.ngens for r in red2):
            raise MalformedModelError(f"red2 must be {n} x {self.H2.ngens}")
        if any(x not in (0, 1) for r in red2 for x in r):
            raise MalformedModelError("red2 entries must be bits")
        object.__setattr__(self, "red2", red2)
        bock = tuple(tuple(int(x) for x in row) for row in self.bock)
        if len(bock) != self.H3.ngens or any(len(r) != n for r in bock):
            raise MalformedModelError(f"bock must be {self.H3.ngens} x {n}")
        object.__setattr__(self, "bock", bock)
        if not isinstance(self.T, Z2Trilinear) or self.T.dim != n:
            raise MalformedModelError("T must be a Z2Trilinear on W")
        v2 = tuple(int(x) for x in self.v2)
        if len(v2) != n or any(x not in (0, 1) for x in v2):
            raise MalformedModelError("v2 must be a bit vector on W")
        object.__setattr__(self, "v2", v2)
        if self.c1 is not None:
            try:
                object.__setattr__(self, "c1", self.H2.check(self.c1))
            except ValueError as exc:
                raise MalformedModelError(f"c1: {exc}") from exc
        try:
            self.red2_hom
            self.bock_hom
        except PreconditionError as exc:
            raise MalformedModelError(str(exc)) from exc

    # -- derived structure ----------------------------------------------------

    @cached_property
    def W(self) -> FgAbelianGroup:
        return FgAbelianGroup.elementary(2, self.dim_W)

    @cached_property
    def red2_hom(self) -> GroupHom:
        return GroupHom(self.H2, self.W, self.red2)

    @cached_property
    def bock_hom(self) -> GroupHom:
        return GroupHom(self.W, self.H3, self.bock)

    @property
    def is_spin_c(self) -> bool:
        return self.c1 is not None

    @cached_property
    def frame(self) -> Frame:
        H2, H3 = self.H2, self.H3
        cols = tuple(gf2.to_mask(self.red2_hom.column(j)) for j in range(H2.ngens))
        im = gf2.reduced_basis(cols)
        im_lifts = tuple(self._lift(cols, range(H2.ngens), v) for v in im)
        tors = range(H2.ntorsion)
        V = gf2.reduced_basis([cols[j] for j in tors])
        V_lifts = tuple(self._lift(cols, tors, v) for v in V)
        even = tuple(j for j, b in enumerate(H3.invariant_factors) if b % 2 == 0)
        bock2 = []
        for k in range(self.dim_W):
            col = self.bock_hom.column(k)
            mask = 0
            for pos, j in enumerate(even):
                unit = H3.invariant_factors[j] // 2
                if col[j] % unit == 0 and (col[j] // unit) % 2:
                    mask |= 1 << pos
            bock2.append(mask)
        return Frame(cols, tuple(im), im_lifts, tuple(V), V_lifts, tuple(bock2), even)

    def _lift(self, cols, gens, target):
        gens = list(gens)
        c = gf2.least_preimage([cols[j] for j in gens], target)
        if c is None:
            raise MalformedModelError("vector not in the image of red2")
        e = [0] * self.H2.ngens
        for pos in gf2.bits(c):
            e[gens[pos]] = 1
        return self.H2.normalize(e)

    def wmask(self, x) -> int:
        x = tuple(int(b) for b in x)
        if len(x) != self.dim_W or any(b not in (0, 1) for b in x):
            raise MalformedModelError(f"expected a length-{self.dim_W} bit vector, got {x}")
        return gf2.to_mask(x)

    def wvec(self, mask: int) -> tuple:
        return gf2.from_mask(mask, self.dim_W)

    def red2_mask(self, e) -> int:
        return gf2.to_mask(self.red2_hom(e))

    def lift_im_red2(self, mask: int) -> tuple:
        """The pinned ``H^2`` preimage of an element of ``im(red2)``."""
        fr = self.frame
        c = gf2.least_preimage(list(fr.im_red2), mask, len(fr.im_red2))
        if c is None:
            raise PreconditionError("class is not the reduction of an integral class")
        e = self.H2.zero()
        for k in gf2.bits(c):
            e = self.H2.add(e, fr.im_red2_lifts[k])
        return e

    def lift_V(self, coeffs: int) -> tuple:
        """``sum coeffs_k * V_lifts[k]`` in ``TH^2``."""
        e = self.H2.zero()
        for k in gf2.bits(coeffs):
            e = self.H2.add(e, self.frame.V_lifts[k])
        return e

    def h3_two_torsion_mask(self, alpha) -> int:
        """Coordinates of ``alpha in H3[2]`` over the even torsion generators."""
        alpha = self.H3.check(alpha)
        if self.H3.scale(2, alpha) != self.H3.zero():
            raise PreconditionError(f"{alpha} is not 2-torsion")
        mask = 0
        for pos, j in enumerate(self.frame.h3_even):
            unit = self.H3.invariant_factors[j] // 2
            if (alpha[j] // unit) % 2:
                mask |= 1 << pos
        return mask

    def bock_preimage(self, alpha):
        """Least ``x`` in ``W`` with ``bock(x) = alpha``, or ``None``."""
        target = self.h3_two_torsion_mask(alpha)
        x = gf2.least_preimage(list(self.frame.bock2_cols), target, self.dim_W)
        return None if x is None else self.wvec(x)

    @cached_property
    def validation(self) -> ValidationReport:
        return validate(self)


def validate(m: SixManifoldModel) -> ValidationReport:
    """Check the semantic invariants of a structurally well-formed model.

    1. ``ker red2 = 2 H2``, ``im bock = H3[2]``, ``ker bock = im red2``;
    2. ``T`` symmetric (guaranteed by the type);
    3. Wu: ``T(v2, w, r) = T(w, w, r) + T(w, r, r)`` for ``w`` in W, ``r`` in im red2;
    4. ``T(r, r', v) = 0`` for ``r, r'`` in im red2, ``v`` in V;
    5. ``red2(c1) = v2`` when present, and ``c1`` present iff ``bock(v2) = 0``;
    6. ``V`` lies in ``im red2``.
    """
    out = []
    H2, H3, W = m.H2, m.H3, m.W
    fr = m.frame

    w = subgroup_difference_witness(H2, m.red2_hom.kernel(), multiples(H2, 2))
    if w is not None:
        out.append(Violation(1, "ker(red2) differs from 2*H2", w))
    w = subgroup_difference_witness(H3, m.bock_hom.image(), n_torsion_gens(H3, 2))
    if w is not None:
        out.append(Violation(1, "im(bock) differs from H3[2]", w))
    w = subgroup_difference_witness(W, m.bock_hom.kernel(), [m.wvec(r) for r in fr.im_red2])
    if w is not None:
        out.append(Violation(1, "ker(bock) differs from im(red2)", w))

    T = m.T
    v2 = gf2.to_mask(m.v2)
    for i in range(m.dim_W):
        wm = 1 << i
        for r in fr.im_red2:
            lhs = T.mask_eval(v2, wm, r)
            rhs = T.mask_eval(wm, wm, r) ^ T.mask_eval(wm, r, r)
            if lhs != rhs:
                out.append(Violation(3, "Wu identity T(v2,w,r) = T(w,w,r) + T(w,r,r) fails",
                                     (m.wvec(wm), m.wvec(r))))

    for a in fr.im_red2:
        for b in fr.im_red2:
            for v in fr.V:
                if T.mask_eval(a, b, v):
                    out.append(Violation(4, "integral triple product with a torsion class is nonzero",
                                         (m.wvec(a), m.wvec(b), m.wvec(v))))

    bv2 = m.bock_hom(m.v2)
    if m.c1 is not None:
        if m.red2_hom(m.c1) != m.v2:
            out.append(Violation(5, "red2(c1) != v2", (m.c1,)))
        if any(bv2):
            out.append(Violation(5, "c1 given but bock(v2) != 0", (bv2,)))
    elif not any(bv2):
        out.append(Violation(5, "bock(v2) = 0 but no integral lift c1 given", (m.v2,)))

    for v in fr.V:
        if not gf2.in_span(v, fr.im_red2):
            out.append(Violation(6, "V not contained in im(red2)", (m.wvec(v),)))
    return ValidationReport(tuple(out))


def beta_square_functional(m: SixManifoldModel, x) -> TorsionFunctional:
    """``beta(x^2)`` in ``TH^5[2]`` as the functional ``v -> T(x, x, v)`` on ``V``."""
    xm = m.wmask(x)
    return TorsionFunctional(tuple(m.T.mask_eval(xm, xm, v) for v in m.frame.V))


def beta_times_functional(m: SixManifoldModel, x, e) -> TorsionFunctional:
    """``beta(x) e`` as the functional ``v -> T(x, red2(e), v)``; depends on ``red2(e)`` only."""
    xm = m.wmask(x)
    r = m.red2_mask(e)
    return TorsionFunctional(tuple(m.T.mask_eval(xm, r, v) for v in m.frame.V))


def require_valid(m: SixManifoldModel):
    rep = m.validation
    if not rep:
        raise PreconditionError("model failed validation: " + "; ".join(map(str, rep.violations)))
