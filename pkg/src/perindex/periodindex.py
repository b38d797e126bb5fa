"""Period and index of Brauer classes ``alpha`` in the torsion of ``H^3``.

The index is ``ord(Q(xi)) * per(alpha)``, where ``Q(xi)`` lives in
``H^5 / alpha H^2``. For period 2 the order of ``Q`` is read off two facts the
model does decide: whether ``beta(x^2)`` is zero, and whether it lies in
``beta(x) H^2``. Whether ``Q`` itself vanishes in the remaining case depends
on Pontrjagin-square data the model does not carry; callers may supply that
bit as a hint, otherwise the index is reported as the pair ``(2, 4)``.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

from . import gf2
from .abelian import INFINITE, element_order
from .bockstein import build_modn, coeff_reduce
from .errors import InvariantViolation, NotSpinCError, PreconditionError, UnsupportedInputError
from .forms2 import Z2SymForm, solve_diagonal
from .model6 import (SixManifoldModel, beta_square_functional, beta_times_functional,
                     require_valid)

X_ENUMERATION_LIMIT = 1 << 12


class Regime(str, enum.Enum):
    ODD = "ODD"
    MEMBER_NONZERO = "MEMBER_NONZERO"
    MEMBER_ZERO = "MEMBER_ZERO"
    NON_MEMBER = "NON_MEMBER"


def epsilon(n: int) -> int:
    return math.gcd(n, 2)


def epsilon_bound(n: int) -> int:
    """Universal bound ``gcd(n, 2) n^2`` on the index of a period-``n`` class."""
    return epsilon(n) * n * n


def index_candidates(n: int, upper: int) -> tuple:
    """Multiples of ``n`` dividing ``upper``."""
    return tuple(d for d in range(n, upper + 1, n) if upper % d == 0)


@dataclass(frozen=True)
class BrauerClassReport:
    alpha: tuple
    period: int
    index: Optional[int]                 # exact index when known
    index_interval: Optional[tuple]      # candidate values otherwise
    regime: Regime
    epsilon_bound: int
    tpic_holds: Optional[bool]           # None: undecided by the model
    certificate: Optional[tuple] = field(default=None, compare=False)  # depends on x
    x: Optional[tuple] = field(default=None, compare=False)

    @property
    def candidates(self) -> tuple:
        return (self.index,) if self.index is not None else tuple(self.index_interval)

    def check_arithmetic(self, spin_c: bool = False):
        """``per | ind | eps(n) n^2`` for every candidate; TPIC holds on spin^c models."""
        n = self.period
        for ind in self.candidates:
            if ind % n or self.epsilon_bound % ind:
                raise InvariantViolation(f"index {ind} violates per | ind | eps(n)n^2 for n={n}")
            if self.tpic_holds and (n * n) % ind:
                raise InvariantViolation(f"TPIC claimed but {ind} does not divide {n * n}")
        if self.tpic_holds is False and all((n * n) % ind == 0 for ind in self.candidates):
            raise InvariantViolation("TPIC claimed to fail but every candidate divides per^2")
        if spin_c and self.index is not None and (n * n) % self.index:
            raise InvariantViolation("exact index on a spin^c model does not divide per^2")


def period(m: SixManifoldModel, alpha) -> int:
    o = element_order(m.H3, alpha)
    if o == INFINITE:
        raise UnsupportedInputError(f"{alpha} has infinite order; not a Brauer class")
    return o


def lambda_form(m: SixManifoldModel, x) -> Z2SymForm:
    """The form ``(u, w) -> T(u, x, w)`` on ``V`` in the pinned basis."""
    xm = m.wmask(x)
    V = m.frame.V
    return Z2SymForm(tuple(tuple(m.T.mask_eval(a, xm, b) for b in V) for a in V))


def solve_ex(m: SixManifoldModel, x) -> tuple:
    """``e_x = c1 + d_x`` with ``beta(x^2) = beta(x) e_x``.

    ``d_x`` lifts the pinned diagonal witness of ``lambda_x`` to ``TH^2``.
    """
    require_valid(m)
    if m.c1 is None:
        raise NotSpinCError("model has no integral lift c1 of v2")
    d = solve_diagonal(lambda_form(m, x))
    d_x = m.lift_V(gf2.to_mask(d))
    e_x = m.H2.add(m.c1, d_x)
    if beta_square_functional(m, x) != beta_times_functional(m, x, e_x):
        raise InvariantViolation(f"e_x = {e_x} does not certify x = {x}")
    return e_x


@dataclass(frozen=True)
class NonMember:
    """``beta(x^2)`` is not in ``beta(x) H^2``; ``functional`` is the offending target."""

    functional: tuple

    def __bool__(self):
        return False


def membership(m: SixManifoldModel, x):
    """An ``e`` in ``H^2`` with ``beta(x^2) = beta(x) e``, or a :class:`NonMember`.

    Only ``red2(e)`` matters, so the unknown ranges over ``im(red2)``; the
    least solution in the pinned basis is lifted to ``H^2``.
    """
    require_valid(m)
    xm = m.wmask(x)
    fr = m.frame
    T = m.T
    target = gf2.to_mask(beta_square_functional(m, x).values)
    # row k: coefficients of a_j in T(x, sum a_j r_j, v_k)
    cols = [gf2.to_mask(T.mask_eval(xm, r, v) for v in fr.V) for r in fr.im_red2]
    rows = gf2.transpose(cols, len(fr.V)) if cols else [0] * len(fr.V)
    a = gf2.solve(rows, target, len(fr.im_red2))
    if a is None:
        return NonMember(beta_square_functional(m, x).values)
    e = m.H2.zero()
    for k in gf2.bits(a):
        e = m.H2.add(e, fr.im_red2_lifts[k])
    if beta_times_functional(m, x, e) != beta_square_functional(m, x):
        raise InvariantViolation("membership witness does not verify")
    return e


def _regime(m, x):
    mem = membership(m, x)
    if isinstance(mem, NonMember):
        return Regime.NON_MEMBER, None
    if beta_square_functional(m, x):
        return Regime.MEMBER_NONZERO, mem
    return Regime.MEMBER_ZERO, mem


def classify_index_period2(m: SixManifoldModel, x, p2_hint: Optional[bool] = None
                           ) -> BrauerClassReport:
    """Index of ``alpha = bock(x)`` for a period-2 class.

    ``p2_hint`` answers "does ``beta^{Z/4}(P2 x)`` lie in ``alpha H^2``?" and is
    only consulted when ``beta(x^2) = 0``.
    """
    require_valid(m)
    x = m.wvec(m.wmask(x))
    alpha = m.bock_hom(x)
    if period(m, alpha) != 2:
        raise PreconditionError(f"bock(x) = {alpha} does not have period 2")
    regime, witness = _regime(m, x)
    bound = epsilon_bound(2)
    index = interval = None
    if regime is Regime.NON_MEMBER:
        index = 8
    elif regime is Regime.MEMBER_NONZERO:
        index = 4
    elif p2_hint is None:
        interval = (2, 4)
    else:
        index = 2 if p2_hint else 4
    if index is not None:
        tpic = 4 % index == 0
    else:
        tpic = True
    cert = witness
    if m.is_spin_c:
        cert = solve_ex(m, x)
    return BrauerClassReport(alpha, 2, index, interval, regime, bound, tpic, cert, x)


@dataclass(frozen=True)
class EvenPeriodCertificate:
    alpha: tuple
    order: int
    m: int
    xi: tuple            # element of C_{2m} with beta(xi) = alpha
    x: tuple             # reduction of xi into W
    bock_x: tuple        # equals m * alpha
    e_x: Optional[tuple]
    index_divides: int   # (2m)^2

    def lines(self):
        return [
            f"xi = {self.xi} in H^2(;Z/{self.order}) with beta(xi) = alpha = {self.alpha}",
            f"x = rho2(xi) = {self.x}; bock(x) = {self.bock_x} = {self.m} * alpha",
            f"e_x = {self.e_x}: beta(x^2) = beta(x) e_x = {self.m} alpha e_x",
            f"hence {self.order} Q(xi) = [beta(x^2)] = 0 and ind | {self.index_divides}",
        ]


def mod2_identification(m: SixManifoldModel, C2):
    """Map the split mod-2 group ``(H2 (x) Z/2) + H3[2]`` into ``W``.

    Tensor summands go through ``red2``; each ``H3[2]`` summand goes to the
    pinned least ``bock``-preimage of its generator.
    """
    targets = []
    for i in range(m.H2.ngens):
        targets.append(m.frame.red2_cols[i] if C2.tensor_orders[i] == 2 else 0)
    for j, o in enumerate(C2.torsion_orders):
        if o == 1:
            targets.append(0)
            continue
        g = [0] * m.H3.ngens
        g[j] = m.H3.invariant_factors[j] // 2
        pre = m.bock_preimage(tuple(g))
        if pre is None:
            raise InvariantViolation("H3[2] generator has no bock preimage")
        targets.append(m.wmask(pre))

    def to_w(c):
        x = 0
        for s, t in zip(C2.to_summands(c), targets):
            if s % 2:
                x ^= t
        return m.wvec(x)

    return to_w


def _lift_and_reduce(m: SixManifoldModel, alpha, n):
    """``xi = (0, alpha)`` in ``C_n`` and its reduction ``x = rho2(xi)`` in ``W``."""
    Cn = build_modn(m.H2, m.H3, n)
    C2 = build_modn(m.H2, m.H3, 2)
    tors = []
    for j, (o, b) in enumerate(zip(Cn.torsion_orders, m.H3.invariant_factors)):
        unit = b // o
        if alpha[j] % unit:
            raise InvariantViolation(f"{alpha} does not lie in H3[{n}]")
        tors.append(alpha[j] // unit)
    xi = Cn.join((0,) * Cn.n_tensor, tors)
    if Cn.beta(xi) != alpha:
        raise InvariantViolation("beta(xi) != alpha")
    x = mod2_identification(m, C2)(coeff_reduce(Cn, C2)(xi))
    return xi, x


def even_period_certificate(m: SixManifoldModel, alpha) -> EvenPeriodCertificate:
    """Certify ``ind(alpha) | per(alpha)^2`` for an even-order class on a spin^c model."""
    require_valid(m)
    if m.c1 is None:
        raise NotSpinCError("the even-period certificate needs a spin^c model")
    alpha = m.H3.check(alpha)
    n = period(m, alpha)
    if n == 1:
        return EvenPeriodCertificate(alpha, 1, 0, (), m.wvec(0), alpha, None, 1)
    if n % 2:
        raise PreconditionError(f"order {n} is odd; use the ODD regime")
    half = n // 2
    xi, x = _lift_and_reduce(m, alpha, n)
    bx = m.bock_hom(x)
    if bx != m.H3.scale(half, alpha):
        raise InvariantViolation(f"bock(x) = {bx} but {half} * alpha = {m.H3.scale(half, alpha)}")
    e_x = solve_ex(m, x)
    return EvenPeriodCertificate(alpha, n, half, xi, x, bx, e_x, n * n)


def preimages(m: SixManifoldModel, alpha):
    """Every ``x`` in ``W`` with ``bock(x) = alpha`` (a coset of ``im red2``)."""
    x0 = m.bock_preimage(alpha)
    if x0 is None:
        return []
    x0m = m.wmask(x0)
    basis = list(m.frame.im_red2)
    out = []
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        v = x0m
        for c, b in zip(coeffs, basis):
            if c:
                v ^= b
        out.append(m.wvec(v))
    return sorted(out, key=m.wmask)


def report_class(m: SixManifoldModel, alpha, check_x_independence: bool = True,
                 p2_hint: Optional[bool] = None) -> BrauerClassReport:
    require_valid(m)
    alpha = m.H3.check(alpha)
    n = period(m, alpha)
    bound = epsilon_bound(n)
    if n % 2:
        rep = BrauerClassReport(alpha, n, 1 if n == 1 else None,
                                None if n == 1 else index_candidates(n, n * n),
                                Regime.ODD, bound, True)
    elif n == 2:
        xs = preimages(m, alpha)
        rep = classify_index_period2(m, xs[0], p2_hint)
        if check_x_independence and 2 ** m.dim_W <= X_ENUMERATION_LIMIT:
            for x in xs[1:]:
                other = classify_index_period2(m, x, p2_hint)
                if other != rep:
                    raise InvariantViolation(f"classification of {alpha} depends on x: "
                                             f"{rep} vs {other}")
    else:
        _, x = _lift_and_reduce(m, alpha, n)
        regime, witness = _regime(m, x)
        if regime is Regime.NON_MEMBER:
            # 2n Q = 0 always; whether n Q = 0 needs alpha H^2, not in the model
            rep = BrauerClassReport(alpha, n, None, index_candidates(n, bound), regime,
                                    bound, None, None, x)
        else:
            cert = even_period_certificate(m, alpha).e_x if m.is_spin_c else witness
            rep = BrauerClassReport(alpha, n, None, index_candidates(n, n * n), regime,
                                    bound, True, cert, x)
    rep.check_arithmetic(m.is_spin_c)
    return rep


def tpic_report(m: SixManifoldModel, check_x_independence: bool = True) -> list:
    """One report per nonzero torsion class of ``H^3``, in coordinate order."""
    require_valid(m)
    return [report_class(m, a, check_x_independence)
            for a in m.H3.torsion_elements() if any(a)]
