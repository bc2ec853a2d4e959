"""The index function on NS (x) Q, the shift cocycle, and the extension of U by Z.

For two isometric automorphisms ``g1, g2`` whose y-blocks are isogenies the
shift cocycle is ``p(y1^-1 y3 y2^-1) - n`` where ``y3`` is the y-block of
``g1 g2`` and ``p`` counts negative roots of ``t -> Pf(s + t M0)``.  Every
other pair is reduced to such pairs through the cocycle identity, using
auxiliary factors from :func:`fmlattice.isometry.candidate_set`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .errors import ExtensionAmbiguous, FactorizationNotFound, NotSymmetric, ValidationError
from .homs import LATTICE_GENERIC, VarietyModel
from .isometry import DEFAULT_BUDGET, UElement, candidate_set, product_y_invertible
from .linalg import Matrix, inverse, pfaffian
from .poly import interpolate, root_sign_counts


@dataclass(frozen=True)
class SlopeVector:
    """A class in NS(A) (x) Q, stored as a skew rational matrix ``A -> A^``."""

    model: VarietyModel
    mat: Matrix

    def __post_init__(self):
        if self.mat.shape != (self.model.rank, self.model.rank):
            raise ValidationError("slope matrix does not match the model rank")
        if not self.mat.is_skew():
            raise NotSymmetric("class is not fixed by the dual (matrix is not skew)")

    def scale(self, c) -> SlopeVector:
        return SlopeVector(self.model, self.mat * c)


def chi_polynomial(s: SlopeVector) -> list[Fraction]:
    """Coefficients of ``t -> Pf(s + t M0)``, constant term first."""
    m0 = s.model.ample_class
    n = s.model.dim
    xs = list(range(n + 1))
    ys = [Fraction(pfaffian(s.mat + m0 * t)) for t in xs]
    return interpolate(xs, ys)


@lru_cache(maxsize=65536)
def _index_pair(model: VarietyModel, mat: Matrix) -> tuple[int, int]:
    return root_sign_counts(chi_polynomial(SlopeVector(model, mat)))


def p_index(s: SlopeVector) -> int:
    """Number of negative roots of ``Pf(s + t M0)`` (zero roots excluded)."""
    return _index_pair(s.model, s.mat)[0]


def signature(s: SlopeVector) -> int:
    neg, pos = _index_pair(s.model, s.mat)
    return neg - pos


@lru_cache(maxsize=65536)
def composite_slope(g1: UElement, g2: UElement) -> SlopeVector:
    """``y1^-1 y3 y2^-1`` for ``g1 g2 = (x3 y3; z3 w3)``; needs invertible y1, y2.

    Since ``y3 = x1 y2 + y1 w2`` this is ``y1^-1 x1 + w2 y2^-1``.
    """
    f1, f2 = g1.underlying, g2.underlying
    return SlopeVector(g1.model, inverse(f1.y.mat) @ f1.x.mat + f2.w.mat @ inverse(f2.y.mat))


def _lambda_generic(g1: UElement, g2: UElement) -> int:
    return p_index(composite_slope(g1, g2)) - g1.model.dim


def _mu_generic(g1: UElement, g2: UElement) -> int:
    return signature(composite_slope(g1, g2))


def _extend(g1: UElement, g2: UElement, generic: Callable[[UElement, UElement], int],
            *, budget: int, paths: int | None) -> int:
    """Evaluate a cocycle known on invertible-y pairs at an arbitrary pair.

    ``paths`` bounds how many independent rewritings are computed and compared
    (None means every admissible candidate).
    """
    inv1, inv2 = g1.y_invertible(), g2.y_invertible()
    if inv1 and inv2:
        return generic(g1, g2)
    cands = [c for _, c in candidate_set(g1.model, budget) if c.y_invertible()]
    values: list[int] = []

    def right_split(a: UElement, g: UElement) -> int | None:
        # a generic, g = c d with c, d, a c generic:
        # lam(a, g) = lam(a, c) + lam(a c, d) - lam(c, d)
        for d in cands:
            dinv = d.inverse()
            if not product_y_invertible(g, dinv):
                continue
            c = g @ dinv
            if product_y_invertible(a, c):
                return generic(a, c) + generic(a @ c, d) - generic(c, d)
        return None

    for b in cands:
        if not inv1:
            # g1 = a b with a, b generic:
            # lam(g1, g2) = lam(a, b g2) + lam(b, g2) - lam(a, b)
            binv = b.inverse()
            if not (product_y_invertible(g1, binv) and product_y_invertible(b, g2)):
                continue
            a, bg2 = g1 @ binv, b @ g2
            first = generic(a, bg2)
            second = generic(b, g2) if inv2 else right_split(b, g2)
            if second is None:
                continue
            values.append(first + second - generic(a, b))
        else:
            # only g2 is degenerate: split it as c b with b the candidate
            binv = b.inverse()
            if not product_y_invertible(g2, binv):
                continue
            c = g2 @ binv
            if not product_y_invertible(g1, c):
                continue
            values.append(generic(g1, c) + generic(g1 @ c, b) - generic(c, b))
        if paths is not None and len(values) >= paths:
            break
    if not values:
        raise FactorizationNotFound("no admissible auxiliary factor for the cocycle extension")
    if len(set(values)) != 1:
        raise ExtensionAmbiguous(f"cocycle rewritings disagree: {sorted(set(values))}")
    return values[0]


def lambda_cocycle(g1: UElement, g2: UElement, *, budget: int = DEFAULT_BUDGET,
                   paths: int | None = 2) -> int:
    """Shift cocycle of the central extension of U(A x A^) by Z."""
    if g1.model != g2.model:
        raise ValidationError("elements belong to different models")
    return _extend(g1, g2, _lambda_generic, budget=budget, paths=paths)


def maslov_mu(g1: UElement, g2: UElement, *, budget: int = DEFAULT_BUDGET,
              paths: int | None = 2) -> int | None:
    """Signature cocycle ``sign(y1^-1 y3 y2^-1)``; None for lattice-generic models."""
    if g1.model != g2.model:
        raise ValidationError("elements belong to different models")
    if g1.model.kind == LATTICE_GENERIC:
        return None
    return _extend(g1, g2, _mu_generic, budget=budget, paths=paths)


@dataclass(frozen=True)
class UtildeElement:
    """``(g, shift)`` in the central extension ``0 -> Z -> U~ -> U -> 1``."""

    g: UElement
    shift: int = 0

    def __matmul__(self, other: UtildeElement) -> UtildeElement:
        return utilde_mul(self, other)

    def inverse(self) -> UtildeElement:
        ginv = self.g.inverse()
        return UtildeElement(ginv, -self.shift - lambda_cocycle(self.g, ginv))

    @classmethod
    def identity(cls, model: VarietyModel) -> UtildeElement:
        return cls(UElement.identity(model), 0)


def utilde_mul(u1: UtildeElement, u2: UtildeElement) -> UtildeElement:
    return UtildeElement(u1.g @ u2.g, u1.shift + u2.shift + lambda_cocycle(u1.g, u2.g))
