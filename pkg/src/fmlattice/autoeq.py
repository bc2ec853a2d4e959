"""A concrete group model of the autoequivalences of D^b(A).

Elements are triples ``(shift, point, g)``: an integer shift, a torsion point
of A x A^ and an isometric automorphism ``g``.  The product is the split law

    (i1, p1, g1)(i2, p2, g2) = (i1 + i2 + lambda(g1, g2), p1 + g1 p2, g1 g2)

which is guaranteed for principally polarized varieties and is used here as
the definition of the model for every variety (reported as ``GROUP_LAW``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cocycle import lambda_cocycle
from .errors import ConventionError, DimensionMismatch, ValidationError
from .homs import VarietyModel
from .isometry import UElement

SPLIT_LAW = "split"
GROUP_LAW = "model group law"


def group_law(model: VarietyModel) -> str:
    """``"split"`` where the law is a theorem, ``"model group law"`` where it is a convention."""
    return SPLIT_LAW if model.is_principal else GROUP_LAW


@dataclass(frozen=True)
class TorsionPoint:
    """A torsion point of A x A^ as rational coordinates in ``[0, 1)``."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Sequence):
        object.__setattr__(self, "coords", tuple(Fraction(c) % 1 for c in coords))

    @classmethod
    def zero(cls, rank: int) -> TorsionPoint:
        return cls([0] * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def order(self) -> int:
        return math.lcm(*(c.denominator for c in self.coords)) if self.coords else 1

    def _check(self, other: TorsionPoint) -> None:
        if self.rank != other.rank:
            raise DimensionMismatch("torsion points of different rank")

    def __add__(self, other: TorsionPoint) -> TorsionPoint:
        self._check(other)
        return TorsionPoint([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> TorsionPoint:
        return TorsionPoint([-a for a in self.coords])

    def __sub__(self, other: TorsionPoint) -> TorsionPoint:
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.coords)


def conj_point(g: UElement, p: TorsionPoint) -> TorsionPoint:
    """Action of ``g`` on a torsion point through its homology matrix."""
    if g.matrix.cols != p.rank:
        raise DimensionMismatch(f"point has rank {p.rank}, element acts on rank {g.matrix.cols}")
    return TorsionPoint(g.matrix.apply(p.coords))


@dataclass(frozen=True)
class AutoeqElement:
    shift: int
    point: TorsionPoint
    g: UElement

    def __post_init__(self):
        if self.point.rank != self.g.matrix.cols:
            raise DimensionMismatch("point rank does not match the isometry")

    @classmethod
    def identity(cls, model: VarietyModel) -> AutoeqElement:
        return cls(0, TorsionPoint.zero(2 * model.rank), UElement.identity(model))

    @classmethod
    def lift(cls, g: UElement) -> AutoeqElement:
        """The lift ``(0, 0, g)``."""
        return cls(0, TorsionPoint.zero(g.matrix.cols), g)

    @property
    def model(self) -> VarietyModel:
        return self.g.model

    def __matmul__(self, other: AutoeqElement) -> AutoeqElement:
        return mul(self, other)

    def inverse(self) -> AutoeqElement:
        ginv = self.g.inverse()
        return AutoeqElement(-self.shift - lambda_cocycle(self.g, ginv),
                             -conj_point(ginv, self.point), ginv)

    def in_kernel(self) -> bool:
        return self.g == UElement.identity(self.model)


def mul(a1: AutoeqElement, a2: AutoeqElement) -> AutoeqElement:
    if a1.model != a2.model:
        raise ValidationError("elements belong to different models")
    return AutoeqElement(a1.shift + a2.shift + lambda_cocycle(a1.g, a2.g),
                         a1.point + conj_point(a1.g, a2.point), a1.g @ a2.g)


def gamma_project(a: AutoeqElement) -> UElement:
    return a.g


def kernel_difference(a: AutoeqElement, b: AutoeqElement) -> tuple[int, TorsionPoint]:
    """For lifts of the same isometry, the kernel element ``(i, p)`` with ``b = a (i, p, e)``."""
    if a.g != b.g:
        raise ValidationError("elements project to different isometries")
    k = a.inverse() @ b
    if not k.in_kernel():
        raise ConventionError("quotient of two lifts is not in the kernel")
    return k.shift, k.point
