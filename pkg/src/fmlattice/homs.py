"""Homomorphisms of abelian varieties as maps of first-homology lattices.

Basis conventions
-----------------
A variety of dimension ``n`` is modelled by ``H_1 = Z^(2n)``.  The dual variety
gets the dual basis, so a map ``f: A -> B`` with matrix ``F`` has dual
``f^: B^ -> A^`` with matrix ``F^t``.  The double-dual identification sends
``l_i`` to ``-l_i**``; every time it is used to bring a dual back to ``A`` the
matrix picks up a sign.  Hence the dual of a map whose source and target carry
``k`` hats in total is ``(-1)^k F^t``: a map ``A -> A^`` has dual ``-F^t`` and
the Neron-Severi classes (the self-dual ones) are the skew matrices.

All other signs in the package are derived from :func:`dual`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import (
    DimensionMismatch,
    NotPrincipallyPolarized,
    Singular,
    ValidationError,
    VarianceMismatch,
)
from .linalg import Matrix, det, inverse, kron, pfaffian, skew_standard

PLAIN, TO_DUAL, FROM_DUAL, DUAL_DUAL = "plain", "to_dual", "from_dual", "dual_dual"
_FLAGS = {PLAIN: (False, False), TO_DUAL: (False, True),
          FROM_DUAL: (True, False), DUAL_DUAL: (True, True)}
_VARIANCE = {v: k for k, v in _FLAGS.items()}

ELLIPTIC_POWER, POLARIZED_SCALAR, LATTICE_GENERIC = (
    "elliptic-power", "polarized-scalar", "lattice")

_J2 = Matrix([[0, 1], [-1, 0]])
_J2_INV = Matrix([[0, -1], [1, 0]])


@dataclass(frozen=True)
class VarietyModel:
    """Lattice model of an abelian variety with a fixed ample class.

    ``ample_class`` is the matrix of ``phi_L: A -> A^`` (skew, positive
    Pfaffian).  ``level`` is the ``N`` with ``phi_M phi_L = N id`` for the
    polarized-scalar kind, and 1 otherwise.
    """

    kind: str
    dim: int
    ample_class: Matrix = field(compare=True)
    level: int = 1

    def __post_init__(self):
        a = self.ample_class
        if a.shape != (2 * self.dim, 2 * self.dim):
            raise DimensionMismatch("ample class must be 2n x 2n")
        if not a.is_integral() or not a.is_skew():
            raise ValidationError("ample class must be a skew integer matrix")
        if pfaffian(a) <= 0:
            raise ValidationError("ample class must have positive Pfaffian")

    @classmethod
    def elliptic_power(cls, n: int) -> VarietyModel:
        if n < 1:
            raise ValidationError("dimension must be positive")
        return cls(ELLIPTIC_POWER, n, skew_standard(n))

    @classmethod
    def polarized_scalar(cls, N: int) -> VarietyModel:
        """End(A) = Z model with polarization type (1, N); an elliptic curve for N = 1."""
        if N < 1:
            raise ValidationError("level N must be positive")
        if N == 1:
            return cls(POLARIZED_SCALAR, 1, _J2, 1)
        return cls(POLARIZED_SCALAR, 2, Matrix.block_diag(_J2, _J2 * N), N)

    @classmethod
    def lattice(cls, dim: int, ample_class) -> VarietyModel:
        ample = ample_class if isinstance(ample_class, Matrix) else Matrix(ample_class)
        return cls(LATTICE_GENERIC, dim, ample)

    @property
    def rank(self) -> int:
        return 2 * self.dim

    @property
    def is_principal(self) -> bool:
        return self.kind == ELLIPTIC_POWER or pfaffian(self.ample_class) == 1

    @cached_property
    def dual_polarization(self) -> Matrix:
        """Matrix of ``phi_M: A^ -> A`` with ``phi_M phi_L = N id``."""
        return inverse(self.ample_class) * self.level

    # scalar block presentation ------------------------------------------------

    @property
    def scalar_size(self) -> int | None:
        """Size of the scalar blocks, or None when the model has no scalar form."""
        if self.kind == ELLIPTIC_POWER:
            return self.dim
        if self.kind == POLARIZED_SCALAR:
            return 1
        return None

    def _units(self) -> dict[str, Matrix]:
        if self.kind == ELLIPTIC_POWER:
            return {"x": Matrix.identity(2), "y": _J2_INV, "z": _J2, "w": Matrix.identity(2)}
        if self.kind == POLARIZED_SCALAR:
            i = Matrix.identity(self.rank)
            return {"x": i, "y": self.dual_polarization, "z": self.ample_class, "w": i}
        raise ValidationError("lattice models have no scalar block form")

    def embed_scalar(self, block: str, s) -> Matrix:
        """Homology matrix of the scalar block ``s`` (an int or an n x n matrix)."""
        k = self.scalar_size
        if k is None:
            raise ValidationError("lattice models have no scalar block form")
        s = Matrix([[s]]) if isinstance(s, (int, Fraction)) else (s if isinstance(s, Matrix) else Matrix(s))
        if s.shape != (k, k):
            raise DimensionMismatch(f"scalar block must be {k} x {k}")
        return kron(s, self._units()[block])

    def extract_scalar(self, block: str, m: Matrix) -> Matrix | None:
        """Inverse of :meth:`embed_scalar`; None when ``m`` is not of scalar form."""
        k = self.scalar_size
        if k is None:
            return None
        unit = self._units()[block]
        u = unit.rows
        i0, j0 = next((i, j) for i in range(u) for j in range(u) if unit[i, j] != 0)
        s = Matrix([[Fraction(m[a * u + i0, b * u + j0], unit[i0, j0]) for b in range(k)]
                    for a in range(k)])
        return s if kron(s, unit) == m else None


@dataclass(frozen=True)
class Homo:
    """A homomorphism between (possibly dualized) varieties, by homology matrix."""

    source: VarietyModel
    target: VarietyModel
    variance: str
    mat: Matrix

    def __post_init__(self):
        if self.variance not in _FLAGS:
            raise VarianceMismatch(f"unknown variance {self.variance!r}")
        if self.mat.shape != (self.target.rank, self.source.rank):
            raise DimensionMismatch(
                f"matrix {self.mat.shape} does not fit {self.source.rank} -> {self.target.rank}")

    @property
    def source_dual(self) -> bool:
        return _FLAGS[self.variance][0]

    @property
    def target_dual(self) -> bool:
        return _FLAGS[self.variance][1]

    def _check_parallel(self, other: Homo) -> None:
        if (self.source, self.target, self.variance) != (other.source, other.target, other.variance):
            raise VarianceMismatch("homomorphisms are not parallel")

    def __add__(self, other: Homo) -> Homo:
        self._check_parallel(other)
        return Homo(self.source, self.target, self.variance, self.mat + other.mat)

    def __neg__(self) -> Homo:
        return Homo(self.source, self.target, self.variance, -self.mat)

    def __sub__(self, other: Homo) -> Homo:
        return self + (-other)

    def scale(self, c) -> Homo:
        return Homo(self.source, self.target, self.variance, self.mat * c)


def dual(f: Homo) -> Homo:
    """Dual homomorphism, with double duals identified back to the variety."""
    sign = -1 if f.source_dual != f.target_dual else 1
    variance = _VARIANCE[(not f.target_dual, not f.source_dual)]
    return Homo(f.target, f.source, variance, f.mat.T * sign)


def compose(g: Homo, f: Homo) -> Homo:
    """``g o f``."""
    if f.target != g.source:
        raise DimensionMismatch("target of f is not the source of g")
    if f.target_dual != g.source_dual:
        raise VarianceMismatch("cannot compose: dual/plain mismatch in the middle")
    return Homo(f.source, g.target, _VARIANCE[(f.source_dual, g.target_dual)], g.mat @ f.mat)


def invert(f: Homo) -> Homo:
    """Inverse isomorphism, or the inverse isogeny in Hom (x) Q."""
    if not f.mat.is_square():
        raise DimensionMismatch("only square homomorphisms can be inverted")
    if det(f.mat) == 0:
        raise Singular("homomorphism is not an isogeny")
    return Homo(f.target, f.source, _VARIANCE[(f.target_dual, f.source_dual)], inverse(f.mat))


def identity_homo(model: VarietyModel, dualized: bool = False) -> Homo:
    return Homo(model, model, DUAL_DUAL if dualized else PLAIN, Matrix.identity(model.rank))


class DoubledMap:
    """A map ``A x A^ -> B x B^`` written as the block matrix ``(x y; z w)``.

    The four blocks are :class:`Homo` values of variance plain, from_dual,
    to_dual and dual_dual respectively; the full homology matrix is stored.
    """

    __slots__ = ("source", "target", "matrix", "_blocks")

    def __init__(self, x: Homo, y: Homo, z: Homo, w: Homo):
        expect = {"x": PLAIN, "y": FROM_DUAL, "z": TO_DUAL, "w": DUAL_DUAL}
        src, tgt = x.source, x.target
        for name, h in zip("xyzw", (x, y, z, w)):
            if h.variance != expect[name]:
                raise VarianceMismatch(f"block {name} must be {expect[name]}, got {h.variance}")
            if h.source != src or h.target != tgt:
                raise DimensionMismatch(f"block {name} has inconsistent source/target")
        self.source, self.target = src, tgt
        self.matrix = Matrix.block([[x.mat, y.mat], [z.mat, w.mat]])
        self._blocks = (x, y, z, w)

    @classmethod
    def from_matrix(cls, source: VarietyModel, target: VarietyModel, m: Matrix) -> DoubledMap:
        p, q = source.rank, target.rank
        if m.shape != (2 * q, 2 * p):
            raise DimensionMismatch("doubled matrix has the wrong shape")
        f = object.__new__(cls)
        f.source, f.target, f.matrix, f._blocks = source, target, m, None
        return f

    @classmethod
    def from_blocks(cls, source: VarietyModel, target: VarietyModel, x, y, z, w) -> DoubledMap:
        return cls(Homo(source, target, PLAIN, x), Homo(source, target, FROM_DUAL, y),
                   Homo(source, target, TO_DUAL, z), Homo(source, target, DUAL_DUAL, w))

    @classmethod
    def from_scalars(cls, model: VarietyModel, a, b, c, d) -> DoubledMap:
        e = model.embed_scalar
        return cls.from_blocks(model, model, e("x", a), e("y", b), e("z", c), e("w", d))

    @classmethod
    def identity(cls, model: VarietyModel) -> DoubledMap:
        return cls.from_matrix(model, model, Matrix.identity(2 * model.rank))

    def _block(self, k: int) -> Homo:
        if self._blocks is None:
            p, q = self.source.rank, self.target.rank
            m = self.matrix
            s, t = self.source, self.target
            self._blocks = (
                Homo(s, t, PLAIN, m.submatrix(0, q, 0, p)),
                Homo(s, t, FROM_DUAL, m.submatrix(0, q, p, 2 * p)),
                Homo(s, t, TO_DUAL, m.submatrix(q, 2 * q, 0, p)),
                Homo(s, t, DUAL_DUAL, m.submatrix(q, 2 * q, p, 2 * p)),
            )
        return self._blocks[k]

    x = property(lambda self: self._block(0))
    y = property(lambda self: self._block(1))
    z = property(lambda self: self._block(2))
    w = property(lambda self: self._block(3))

    def scalars(self) -> tuple[Matrix, Matrix, Matrix, Matrix] | None:
        """Scalar blocks ``(a, b, c, d)`` when the map has scalar form, else None."""
        if self.source != self.target or self.source.scalar_size is None:
            return None
        out = tuple(self.source.extract_scalar(k, getattr(self, k).mat) for k in "xyzw")
        return None if any(s is None for s in out) else out

    def __matmul__(self, other: DoubledMap) -> DoubledMap:
        if other.target != self.source:
            raise DimensionMismatch("cannot compose doubled maps with mismatched models")
        return DoubledMap.from_matrix(other.source, self.target, self.matrix @ other.matrix)

    def __eq__(self, other) -> bool:
        return (isinstance(other, DoubledMap) and self.matrix == other.matrix
                and self.source == other.source and self.target == other.target)

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"DoubledMap({self.matrix.tolist()!r})"

    def is_integral_iso(self) -> bool:
        m = self.matrix
        return m.is_square() and m.is_integral() and abs(det(m)) == 1


def tilde_map(f: DoubledMap) -> DoubledMap:
    """``f~ = (w^ -y^; -z^ x^)``, a map ``B x B^ -> A x A^``."""
    return DoubledMap(dual(f.w), -dual(f.y), -dual(f.z), dual(f.x))


def tilde_matrix(f: DoubledMap) -> DoubledMap:
    """Same value as :func:`tilde_map`, read off as ``(W^t Y^t; Z^t X^t)``.

    Cheaper; used for inverses of elements already known to be isometric.
    """
    m = f.matrix
    p, q = f.source.rank, f.target.rank
    x, y = m.submatrix(0, q, 0, p), m.submatrix(0, q, p, 2 * p)
    z, w = m.submatrix(q, 2 * q, 0, p), m.submatrix(q, 2 * q, p, 2 * p)
    return DoubledMap.from_matrix(f.target, f.source, Matrix.block([[w.T, y.T], [z.T, x.T]]))


def hat_map(f: DoubledMap) -> DoubledMap:
    """``f^ = (w^ y^; z^ x^)``."""
    return DoubledMap(dual(f.w), dual(f.y), dual(f.z), dual(f.x))


def is_isometric(f: DoubledMap) -> bool:
    """True iff ``f`` is an isomorphism with ``f~ = f^-1``.

    Non-square or non-unimodular input is legal and simply answers False.
    """
    if not f.is_integral_iso():
        return False
    return (tilde_map(f) @ f) == DoubledMap.identity(f.source)


@dataclass(frozen=True)
class HyperbolicForm:
    """The form ``Q((x, l), (y, m)) = l(y) + m(x)`` on ``H_1(A x A^)``."""

    dim: int

    @cached_property
    def mat(self) -> Matrix:
        r = 2 * self.dim
        i, z = Matrix.identity(r), Matrix.zeros(r)
        return Matrix.block([[z, i], [i, z]])


def q_form_check(f: DoubledMap) -> bool:
    """True iff ``f`` is an isomorphism preserving the hyperbolic forms."""
    if not f.is_integral_iso():
        return False
    F = f.matrix
    qa = HyperbolicForm(f.source.dim).mat
    qb = HyperbolicForm(f.target.dim).mat
    return F.T @ qb @ F == qa


def fourier_element(model: VarietyModel) -> DoubledMap:
    """Isometric shadow of the Poincare-bundle transform: ``(0, -phi^-1; phi, 0)``."""
    if not model.is_principal:
        raise NotPrincipallyPolarized("model is not principally polarized")
    phi = model.ample_class
    z = Matrix.zeros(model.rank)
    return DoubledMap.from_blocks(model, model, z, -inverse(phi), phi, z)
