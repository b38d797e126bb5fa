"""Hand-built example models, Whitney-sum bookkeeping for sphere bundles, and
exhaustive enumeration of small valid models."""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

from . import gf2
from .abelian import FgAbelianGroup
from .errors import MalformedModelError, UnsupportedInputError
from .forms2 import Z2Trilinear
from .model6 import SixManifoldModel, validate

MAX_ENUMERATION_DIM = 4


def model_a_teichner_orientable() -> SixManifoldModel:
    """Spin^c model whose order-2 class has index 4.

    ``H2 = Z/4 <s>``, ``H3 = Z/2 <alpha>``, ``W = <t, x>`` with ``t = red2(s)``
    and ``bock(x) = alpha``; the only nonzero products are
    ``T(x, x, t) = T(x, t, t) = 1``.
    """
    t, x = 0, 1
    return SixManifoldModel(
        H2=FgAbelianGroup((4,)),
        H3=FgAbelianGroup((2,)),
        dim_W=2,
        red2=((1,), (0,)),
        bock=((0, 1),),
        T=Z2Trilinear.from_triples(2, [(x, x, t), (x, t, t)]),
        v2=(0, 0),
        c1=(0,),
        name="teichner-orientable",
    )


def model_b_teichner_nonorientable() -> SixManifoldModel:
    """Model with ``bock(v2) != 0`` whose class ``bock(x)`` has index 8.

    ``W = <t, x, v>`` with ``bock(x) = alpha``, ``bock(v) = alpha'``, ``v2 = v``
    and nonzero products ``T(x, x, t) = T(v, x, t) = 1``.
    """
    t, x, v = 0, 1, 2
    return SixManifoldModel(
        H2=FgAbelianGroup((4,)),
        H3=FgAbelianGroup((2, 2)),
        dim_W=3,
        red2=((1,), (0,), (0,)),
        bock=((0, 1, 0), (0, 0, 1)),
        T=Z2Trilinear.from_triples(3, [(x, x, t), (v, x, t)]),
        v2=(0, 0, 1),
        c1=None,
        name="teichner-nonorientable",
    )


NAMED_MODELS = {
    "teichner-orientable": model_a_teichner_orientable,
    "teichner-nonorientable": model_b_teichner_nonorientable,
}


# -- sphere bundles over 4-manifolds ---------------------------------------------


@dataclass(frozen=True)
class GradedClass:
    degree: int
    bits: tuple


class Z2RingSlice:
    """Degrees 1 and 2 of a mod-2 cohomology ring.

    ``products[i][j]`` is the degree-2 bit vector of ``a_i a_j`` for the degree-1
    basis; ``bockstein_kernel`` spans the degree-2 classes on which the integral
    Bockstein vanishes.
    """

    def __init__(self, dim1, dim2, products, bockstein_kernel=()):
        self.dim1, self.dim2 = int(dim1), int(dim2)
        prods = [[gf2.to_mask(self._bits(products[i][j], self.dim2)) for j in range(self.dim1)]
                 for i in range(self.dim1)]
        if any(prods[i][j] != prods[j][i] for i in range(self.dim1) for j in range(i)):
            raise MalformedModelError("degree-1 product table must be symmetric")
        self._prods = prods
        self._kernel = gf2.reduced_basis(gf2.to_mask(self._bits(v, self.dim2))
                                         for v in bockstein_kernel)

    @staticmethod
    def _bits(v, n):
        v = tuple(int(b) for b in v)
        if len(v) != n or any(b not in (0, 1) for b in v):
            raise MalformedModelError(f"expected a length-{n} bit vector, got {v}")
        return v

    def element(self, degree, bits) -> GradedClass:
        n = {1: self.dim1, 2: self.dim2}.get(degree)
        if n is None:
            raise MalformedModelError(f"ring slice has no degree {degree}")
        return GradedClass(degree, self._bits(bits, n))

    def zero(self, degree) -> GradedClass:
        return self.element(degree, (0,) * (self.dim1 if degree == 1 else self.dim2))

    def _require(self, c, degree):
        if not isinstance(c, GradedClass) or c.degree != degree:
            raise MalformedModelError(f"expected a degree-{degree} class, got {c!r}")
        self.element(degree, c.bits)

    def add(self, a: GradedClass, b: GradedClass) -> GradedClass:
        self._require(b, a.degree)
        self._require(a, a.degree)
        return GradedClass(a.degree, tuple(x ^ y for x, y in zip(a.bits, b.bits)))

    def mul(self, a: GradedClass, b: GradedClass) -> GradedClass:
        self._require(a, 1)
        self._require(b, 1)
        acc = 0
        for i in gf2.bits(gf2.to_mask(a.bits)):
            for j in gf2.bits(gf2.to_mask(b.bits)):
                acc ^= self._prods[i][j]
        return GradedClass(2, gf2.from_mask(acc, self.dim2))

    def bockstein_vanishes(self, c: GradedClass) -> bool:
        self._require(c, 2)
        return gf2.in_span(gf2.to_mask(c.bits), self._kernel)


class SpinCVerdict(str, enum.Enum):
    SPIN_C = "SPIN_C"
    UNKNOWN = "UNKNOWN"


def sphere_bundle_low_sw(ring: Z2RingSlice, w1M, w2M, w1E, w2E):
    """Low Stiefel-Whitney classes of the sphere bundle of ``E`` over ``M``.

    Classes are pulled back injectively, so they are written in the base ring.
    Returns ``(w1N, w2N, verdict)``; the verdict is ``SPIN_C`` when ``N`` is
    orientable and the Bockstein kills both ``w2M`` and ``w2E``.
    """
    for c, d in ((w1M, 1), (w2M, 2), (w1E, 1), (w2E, 2)):
        ring._require(c, d)
    w1N = ring.add(w1M, w1E)
    w2N = ring.add(ring.add(w2M, ring.mul(w1M, w1E)), w2E)
    spin_c = (w1M == w1E and ring.bockstein_vanishes(w2M) and ring.bockstein_vanishes(w2E))
    return w1N, w2N, SpinCVerdict.SPIN_C if spin_c else SpinCVerdict.UNKNOWN


# -- enumeration ------------------------------------------------------------------


def _factor_chains(factors, max_len=2):
    """Invariant-factor tuples of length <= max_len using ``factors``, sorted."""
    out = [()]
    for k in range(1, max_len + 1):
        for combo in itertools.combinations_with_replacement(sorted(factors), k):
            if all(b % a == 0 for a, b in zip(combo, combo[1:])):
                out.append(combo)
    return out


def _n_even(chain):
    return sum(1 for d in chain if d % 2 == 0)


def _orbits(n, a):
    """Orbit triples on ``W`` not lying entirely in the first ``a`` coordinates."""
    return [tr for tr in itertools.combinations_with_replacement(range(n), 3) if tr[2] >= a]


def _orbit_slices(n, orbits):
    contrib = []
    for tr in orbits:
        s = [[0] * n for _ in range(n)]
        for p, q, r in set(itertools.permutations(tr)):
            s[p][q] |= 1 << r
        contrib.append(s)
    return contrib


def _divisor_closure(allowed_factors):
    factors = {int(f) for f in allowed_factors}
    if any(f < 2 for f in factors):
        raise UnsupportedInputError("invariant factors must be >= 2")
    return sorted({d for f in factors for d in range(2, f + 1) if f % d == 0})


def enumeration_size(max_dim_W, allowed_factors) -> int:
    """Upper bound on the raw candidates visited before validation."""
    total = 0
    chains = _factor_chains(_divisor_closure(allowed_factors))
    for h2 in chains:
        for h3 in chains:
            a, b = _n_even(h2), _n_even(h3)
            n = a + b
            if n > max_dim_W:
                continue
            lifts = math.prod(h2) // 2 ** a
            total += 2 ** len(_orbits(n, a)) * 2 ** n * max(lifts, 1)
    return total


def _group_pairs(max_dim_W, allowed_factors):
    chains = _factor_chains(allowed_factors)
    for h2 in chains:
        for h3 in chains:
            if _n_even(h2) + _n_even(h3) <= max_dim_W:
                yield FgAbelianGroup(h2), FgAbelianGroup(h3)


def enumerate_valid_models(max_dim_W: int, allowed_factors):
    """Every valid finite model in the given bounds, in a fixed order.

    Groups have at most two torsion generators each and no free part. Invariant
    factors may be any divisor > 1 of an allowed factor, so ``{4}`` also admits
    ``Z/2``. The
    non-canonical choices are pinned: ``W`` starts with the reductions of the
    even-order generators of ``H2`` followed by one ``bock``-preimage per even
    generator of ``H3``. Then ``T``, ``v2`` and (when ``bock(v2) = 0``) every
    integral lift ``c1`` range freely, and each candidate must pass
    :func:`validate`.
    """
    factors = _divisor_closure(allowed_factors)
    if max_dim_W > MAX_ENUMERATION_DIM:
        raise UnsupportedInputError(
            f"max_dim_W = {max_dim_W} exceeds {MAX_ENUMERATION_DIM}: about "
            f"{enumeration_size(max_dim_W, factors)} candidates")
    for H2, H3 in _group_pairs(max_dim_W, factors):
        yield from _models_for(H2, H3)


def _models_for(H2: FgAbelianGroup, H3: FgAbelianGroup):
    even2 = [i for i, d in enumerate(H2.invariant_factors) if d % 2 == 0]
    even3 = [j for j, d in enumerate(H3.invariant_factors) if d % 2 == 0]
    a, b = len(even2), len(even3)
    n = a + b
    red2 = [[0] * H2.ngens for _ in range(n)]
    for k, i in enumerate(even2):
        red2[k][i] = 1
    bock = [[0] * n for _ in range(H3.ngens)]
    for k, j in enumerate(even3):
        bock[j][a + k] = H3.invariant_factors[j] // 2
    red2 = tuple(map(tuple, red2))
    bock = tuple(map(tuple, bock))

    orbits = _orbits(n, a)
    contrib = _orbit_slices(n, orbits)
    integral = [1 << k for k in range(a)]
    # c1 candidates: lifts of each v2 in im(red2); zero on odd generators is not
    # forced, so every residue of every generator is allowed
    all_h2 = list(H2.elements())

    for tmask in range(1 << len(orbits)):
        slices = [[0] * n for _ in range(n)]
        for k in gf2.bits(tmask):
            s = contrib[k]
            for p in range(n):
                for q in range(n):
                    slices[p][q] ^= s[p][q]
        T = Z2Trilinear._from_slices(n, tuple(tuple(r) for r in slices))
        # Wu: T(v2, w, r) must equal T(w, w, r) + T(w, r, r) on basis vectors
        wu_rhs = [[T.mask_eval(1 << i, 1 << i, r) ^ T.mask_eval(1 << i, r, r) for r in integral]
                  for i in range(n)]
        for v2 in range(1 << n):
            if any(T.mask_eval(v2, 1 << i, r) != wu_rhs[i][k]
                   for i in range(n) for k, r in enumerate(integral)):
                continue
            v2vec = gf2.from_mask(v2, n)
            if v2 >> a:
                lifts = [None]
            else:
                lifts = [e for e in all_h2
                         if gf2.to_mask(tuple(sum(red2[r][c] * e[c] for c in range(H2.ngens)) % 2
                                              for r in range(n))) == v2]
            for c1 in lifts:
                m = SixManifoldModel(H2, H3, n, red2, bock, T, v2vec, c1)
                rep = validate(m)
                if rep:
                    m.__dict__["validation"] = rep
                    yield m
