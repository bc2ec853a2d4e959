"""Slope calculus for semihomogeneous bundles, on lattices.

A slope ``mu = [L]/l`` on ``D`` (``L`` a skew integer matrix ``D -> D^``)
determines the correspondence ``Phi_mu``, the saturation of the image of
``v -> (l v, L v)`` in ``H_1(D) + H_1(D^)``.  Coordinates of ``D x D^`` are
ordered as ``(d, delta)``.  The numeric invariants of a simple bundle of
slope ``mu`` are read off from ``Phi_mu``:

* ``r^2 = deg(q1)`` and ``chi^2 = deg(q2)`` for the two projections;
* ``|Sigma^0| = r^2``, realised as the group ``q2(Ker q1)``.

Only ``|chi|`` is recoverable; the sign is lost in the square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from operator import mul
from typing import Sequence

from .errors import (
    ConventionError,
    DegenerateProjection,
    DimensionMismatch,
    NotIsometric,
    NotPerfectSquare,
    NotSkew,
    NotSymmetric,
    ValidationError,
    YNotInvertible,
)
from .homs import DoubledMap, VarietyModel, dual, is_isometric
from .linalg import (
    Lattice,
    Matrix,
    as_matrix,
    det,
    inverse,
    lattice_index,
    rational_lattice_order,
    saturate,
    smith_form,
)


@dataclass(frozen=True)
class SlopeClass:
    """``mu = [L]/l``, normalised so that ``gcd(l, content(L)) = 1``."""

    model: VarietyModel
    L: Matrix
    l: int

    def __post_init__(self):
        L = as_matrix(self.L)
        if L.shape != (self.model.rank, self.model.rank):
            raise DimensionMismatch(f"L must be {self.model.rank} x {self.model.rank}")
        if not L.is_integral():
            raise ValidationError("L must be an integer matrix")
        if not L.is_skew():
            raise NotSkew("L is not a Neron-Severi class (matrix is not skew)")
        if not isinstance(self.l, int) or self.l < 1:
            raise ValidationError("l must be a positive integer")
        g = math.gcd(self.l, L.content())
        object.__setattr__(self, "L", L if g == 1 else L * Fraction(1, g))
        object.__setattr__(self, "l", self.l // g)

    @classmethod
    def from_rational(cls, model: VarietyModel, m: Matrix) -> SlopeClass:
        """The class of a skew rational matrix; denominators are cleared."""
        m = as_matrix(m)
        den = m.denominator()
        return cls(model, m * den, den)

    @property
    def matrix(self) -> Matrix:
        """``L / l`` as a rational matrix."""
        return self.L * Fraction(1, self.l)


@dataclass(frozen=True)
class Correspondence:
    """A saturated sublattice of ``H_1(D) + H_1(D^)``."""

    model: VarietyModel
    lattice: Lattice

    def projection_degree(self, coords: Sequence[int]) -> int | float:
        """Degree of the projection onto the listed coordinates (``inf`` if not finite)."""
        b = self.lattice.basis
        cols = list(coords)
        proj = Matrix([[b[i, j] for j in cols] for i in range(b.rows)])
        image = Lattice.span(proj, len(cols))
        if image.rank != len(cols) or self.lattice.rank != len(cols):
            return math.inf
        return lattice_index(image, Lattice.full(len(cols)))

    @cached_property
    def annihilator(self) -> Matrix:
        """Rows span the integer vectors orthogonal to the lattice.

        As the lattice is saturated this matrix maps ``Z^m`` onto ``Z^k``,
        so ``C v`` is integral exactly when ``v`` lies in ``span_Q + Z^m``.
        """
        lat = self.lattice
        m = lat.ambient_rank
        if lat.rank == 0:
            return Matrix.identity(m)
        _, _, V = smith_form(lat.basis)
        return V.submatrix(0, m, lat.rank, m).T

    def contains_point(self, point: Sequence) -> bool:
        """Whether a rational vector lies in ``span_Q(Phi) + Z^(2R)``."""
        if len(point) != self.lattice.ambient_rank:
            raise DimensionMismatch("point has the wrong length")
        pts = [Fraction(c) for c in point]
        den = math.lcm(*(c.denominator for c in pts))
        v = [int(c * den) for c in pts]
        c = self.annihilator
        return all(sum(map(mul, c.row(i), v)) % den == 0 for i in range(c.rows))


@lru_cache(maxsize=4096)
def slope_correspondence(mu: SlopeClass) -> Correspondence:
    r = mu.model.rank
    rows = [[mu.l * int(i == j) for j in range(r)] + [mu.L[k, i] for k in range(r)]
            for i in range(r)]
    return Correspondence(mu.model, saturate(Lattice.span(rows, 2 * r)))


def proj_degrees(c: Correspondence) -> tuple[int | float, int | float]:
    r = c.model.rank
    return c.projection_degree(range(r)), c.projection_degree(range(r, 2 * r))


def _exact_sqrt(n: int, what: str) -> int:
    s = math.isqrt(n)
    if s * s != n:
        raise NotPerfectSquare(f"{what} = {n} is not a perfect square")
    return s


def rank_chi(mu: SlopeClass) -> tuple[int, int]:
    """``(r, |chi|)`` of a simple semihomogeneous bundle of slope ``mu``."""
    d1, d2 = proj_degrees(slope_correspondence(mu))
    if d1 == math.inf or d2 == math.inf:
        raise DegenerateProjection("a projection of the correspondence is not an isogeny")
    return _exact_sqrt(d1, "deg(q1)"), _exact_sqrt(d2, "deg(q2)")


def sigma0_order_snf(mu: SlopeClass) -> int:
    """Order of ``q2(Ker q1)`` computed directly from the correspondence.

    With the correspondence basis split as ``(B1 | B2)``, ``Ker q1`` is
    generated by the rows of ``B1^-1`` modulo ``Z^R`` and its image under
    ``q2`` by the rows of ``B1^-1 B2``.
    """
    c = slope_correspondence(mu)
    r = mu.model.rank
    b = c.lattice.basis
    b1, b2 = b.submatrix(0, r, 0, r), b.submatrix(0, r, r, 2 * r)
    if det(b1) == 0:
        raise DegenerateProjection("q1 is not an isogeny")
    return rational_lattice_order(inverse(b1) @ b2)


def sigma0_order(mu: SlopeClass) -> int:
    """``|Sigma^0(E)| = r^2``, checked against :func:`sigma0_order_snf`."""
    r, _ = rank_chi(mu)
    other = sigma0_order_snf(mu)
    if other != r * r:
        raise ConventionError(f"r^2 = {r * r} but |q2(Ker q1)| = {other}")
    return r * r


def phi_mu_contains(mu: SlopeClass, d: Sequence, delta: Sequence) -> bool:
    """Whether the torsion point ``(d, delta)`` of ``D x D^`` lies on ``Phi_mu``."""
    d = getattr(d, "coords", d)
    delta = getattr(delta, "coords", delta)
    r = mu.model.rank
    if len(d) != r or len(delta) != r:
        raise DimensionMismatch(f"points must have {r} coordinates")
    return slope_correspondence(mu).contains_point(list(d) + list(delta))


# slopes from isometries --------------------------------------------------------------

def product_model(a: VarietyModel, b: VarietyModel) -> VarietyModel:
    return VarietyModel.lattice(a.dim + b.dim, Matrix.block_diag(a.ample_class, b.ample_class))


def kernel_slope_matrix(f: DoubledMap) -> Matrix:
    """``g = (y^-1 x, -y^-1; -y^^-1, w y^-1)`` as a map ``A x B -> A^ x B^``.

    Raises NotSymmetric if ``g`` is not fixed by the dual, which for an
    isometric ``f`` would contradict the sign conventions.
    """
    f = getattr(f, "underlying", f)
    y = f.y.mat
    if not y.is_square() or det(y) == 0:
        raise YNotInvertible("y-block is not an isogeny; factor the map first")
    yinv = inverse(y)
    yhat_inv = inverse(dual(f.y).mat)
    g = Matrix.block([[yinv @ f.x.mat, -yinv], [-yhat_inv, f.w.mat @ yinv]])
    # a map to the dual has dual -g^t, so hat-fixed means skew
    if not g.is_skew():
        raise NotSymmetric("g is not fixed by the dual")
    return g


def kernel_slope_from_isometry(f: DoubledMap) -> SlopeClass:
    """Slope on ``A x B`` whose correspondence is the sign-flipped graph of ``f``."""
    f = getattr(f, "underlying", f)
    if not is_isometric(f):
        raise NotIsometric("kernel slopes are defined for isometric maps")
    g = kernel_slope_matrix(f)
    return SlopeClass.from_rational(product_model(f.source, f.target), g)


def graph_projection_degrees(mu: SlopeClass, rank_a: int) -> tuple[int | float, int | float]:
    """Degrees of ``Phi_mu -> A x A^`` and ``Phi_mu -> B x B^`` on ``D = A x B``."""
    r = mu.model.rank
    c = slope_correspondence(mu)
    on_a = list(range(rank_a)) + list(range(r, r + rank_a))
    on_b = list(range(rank_a, r)) + list(range(r + rank_a, 2 * r))
    return c.projection_degree(on_a), c.projection_degree(on_b)


def restriction_slope(f: DoubledMap) -> SlopeClass:
    """Slope ``nu = delta beta^-1`` of the restriction of the kernel to a fibre ``{a} x B``.

    ``(beta, delta): A^ -> B x B^`` is the part of the graph correspondence
    over ``a = 0``; with the sign flip on ``A^`` this is ``(-y, -w)``, so
    ``nu = w y^-1``.  Its rank is ``sqrt(deg beta)``.
    """
    f = getattr(f, "underlying", f)
    beta, delta = -f.y.mat, -f.w.mat
    if not beta.is_square() or det(beta) == 0:
        raise YNotInvertible("y-block is not an isogeny")
    nu = delta @ inverse(beta)
    if not nu.is_skew():
        raise NotSymmetric("restriction slope is not a Neron-Severi class")
    return SlopeClass.from_rational(f.target, nu)
