"""Bilinear pairings of finite abelian groups into Q/Z.

Values live in ``Q/Z`` as :class:`fractions.Fraction` reduced into ``[0, 1)``;
nothing here ever touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .abelian import FgAbelianGroup, GroupHom, subgroup
from .errors import InvariantViolation, PreconditionError, UnsupportedInputError


def qz(x) -> Fraction:
    """Reduce a rational number into ``[0, 1)``."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True, eq=False)
class QZPairing:
    """``phi: left x right -> Q/Z`` with ``values[i][j] = phi(g_i, h_j)``."""

    left: FgAbelianGroup
    right: FgAbelianGroup
    values: tuple

    def __post_init__(self):
        for G in (self.left, self.right):
            if not G.is_finite:
                raise UnsupportedInputError(f"pairings need finite groups, got {G}")
        vals = tuple(tuple(qz(v) for v in row) for row in self.values)
        if len(vals) != self.left.ngens or any(len(r) != self.right.ngens for r in vals):
            raise PreconditionError("values must be a left.ngens x right.ngens matrix")
        for i, d in enumerate(self.left.invariant_factors):
            for j, e in enumerate(self.right.invariant_factors):
                if qz(d * vals[i][j]) or qz(e * vals[i][j]):
                    raise PreconditionError(
                        f"value {vals[i][j]} at ({i},{j}) is not killed by gcd({d},{e})")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, left, right, fn):
        return cls(left, right, tuple(tuple(fn(left.gen(i), right.gen(j))
                                            for j in range(right.ngens))
                                      for i in range(left.ngens)))

    def __call__(self, g, h) -> Fraction:
        g = self.left.check(g)
        h = self.right.check(h)
        return qz(sum(a * b * self.values[i][j]
                      for i, a in enumerate(g) if a
                      for j, b in enumerate(h) if b))

    def right_adjoint(self) -> GroupHom:
        """``right -> left^``, with ``left^`` realised on left's invariant factors."""
        cols = []
        for j in range(self.right.ngens):
            cols.append(tuple(int(self.values[i][j] * d) % d
                              for i, d in enumerate(self.left.invariant_factors)))
        return GroupHom.from_columns(self.right, self.left, cols)

    def left_adjoint(self) -> GroupHom:
        """``left -> right^``."""
        cols = []
        for i in range(self.left.ngens):
            cols.append(tuple(int(self.values[i][j] * e) % e
                              for j, e in enumerate(self.right.invariant_factors)))
        return GroupHom.from_columns(self.left, self.right, cols)

    def transpose(self) -> "QZPairing":
        return QZPairing(self.right, self.left, tuple(zip(*self.values)) if self.values
                         else tuple(() for _ in range(self.right.ngens)))


@dataclass(frozen=True)
class Perfectness:
    perfect: bool
    right_kernel: list = field(default_factory=list)   # generators of ker(right -> left^)
    left_kernel: list = field(default_factory=list)    # generators of ker(left -> right^)

    def __bool__(self):
        return self.perfect


def is_perfect(phi: QZPairing, via: str = "right") -> Perfectness:
    """Decide perfectness from one adjoint: equal orders plus injectivity.

    Both kernels are always reported so a failure comes with generators of
    whatever is being annihilated.
    """
    if via not in ("right", "left"):
        raise ValueError("via must be 'right' or 'left'")
    rk = phi.right_adjoint().kernel()
    lk = phi.left_adjoint().kernel()
    same_order = phi.left.order == phi.right.order
    kernel = rk if via == "right" else lk
    return Perfectness(same_order and not kernel, rk, lk)


def kernel_subgroup(phi: QZPairing, side: str = "right"):
    """Normal form and inclusion of the kernel of one adjoint."""
    hom = phi.right_adjoint() if side == "right" else phi.left_adjoint()
    return subgroup(hom.domain, hom.kernel())


def equal_by_pairing(phi: QZPairing, h1, h2) -> bool:
    """Decide ``h1 == h2`` in ``right`` by comparing the functionals ``phi(-, h)``."""
    if not is_perfect(phi):
        raise PreconditionError("equality by pairing needs a perfect pairing")
    h1 = phi.right.check(h1)
    h2 = phi.right.check(h2)
    same = all(phi(phi.left.gen(i), h1) == phi(phi.left.gen(i), h2)
               for i in range(phi.left.ngens))
    if same != (h1 == h2):
        raise InvariantViolation("pairing functionals disagree with coordinate equality")
    return same


def evaluation_pairing(G: FgAbelianGroup) -> QZPairing:
    """The canonical pairing of a finite group with its torsion dual."""
    if not G.is_finite:
        raise UnsupportedInputError("evaluation pairing needs a finite group")
    return QZPairing(G, G, tuple(tuple(Fraction(int(i == j), d) for j in range(G.ngens))
                                 for i, d in enumerate(G.invariant_factors)))
