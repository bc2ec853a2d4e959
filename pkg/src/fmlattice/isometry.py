"""The group U(A x A^) of isometric automorphisms and its scalar models."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ConventionError, FactorizationNotFound, NotIsometric, ValidationError, WrongModel
from .homs import (
    ELLIPTIC_POWER,
    POLARIZED_SCALAR,
    DoubledMap,
    VarietyModel,
    fourier_element,
    is_isometric,
    tilde_matrix,
)
from .linalg import Matrix, det

DEFAULT_BUDGET = 3


@dataclass(frozen=True)
class UElement:
    """An element of U(A x A^); isometry is checked on construction."""

    underlying: DoubledMap

    def __post_init__(self):
        if self.underlying.source != self.underlying.target:
            raise NotIsometric("elements of U(A x A^) are automorphisms")
        if not is_isometric(self.underlying):
            raise NotIsometric("map is not isometric")

    @classmethod
    def identity(cls, model: VarietyModel) -> UElement:
        return _identity(model)

    @classmethod
    def from_scalars(cls, model: VarietyModel, a, b, c, d) -> UElement:
        return cls(DoubledMap.from_scalars(model, a, b, c, d))

    @property
    def model(self) -> VarietyModel:
        return self.underlying.source

    @property
    def matrix(self) -> Matrix:
        return self.underlying.matrix

    def __matmul__(self, other: UElement) -> UElement:
        return _trusted(self.underlying @ other.underlying)

    def inverse(self) -> UElement:
        return _inverse(self)

    def y_invertible(self) -> bool:
        return y_invertible(self.underlying)


@lru_cache(maxsize=64)
def _identity(model: VarietyModel) -> UElement:
    return UElement(DoubledMap.identity(model))


def _trusted(f: DoubledMap) -> UElement:
    # products and inverses of isometric maps stay isometric; skip the recheck
    u = object.__new__(UElement)
    object.__setattr__(u, "underlying", f)
    return u


@lru_cache(maxsize=65536)
def _inverse(u: UElement) -> UElement:
    # for isometric f the inverse is f~
    return _trusted(tilde_matrix(u.underlying))


@lru_cache(maxsize=65536)
def y_invertible(f: DoubledMap) -> bool:
    y = f.y.mat
    return y.is_square() and det(y) != 0


@lru_cache(maxsize=65536)
def _y_rows(u: UElement) -> Matrix:
    q = u.model.rank
    return u.matrix.submatrix(0, q, 0, 2 * q)


@lru_cache(maxsize=65536)
def _y_cols(u: UElement) -> Matrix:
    p = u.model.rank
    return u.matrix.submatrix(0, 2 * p, p, 2 * p)


def product_y_invertible(g: UElement, h: UElement) -> bool:
    """``(g h).y_invertible()`` without forming the whole product."""
    return det(_y_rows(g) @ _y_cols(h)) != 0


def membership(f: DoubledMap) -> bool:
    """Whether ``f`` lies in U(A x A^, B x B^)."""
    return is_isometric(f)


def is_symplectic(m: Matrix) -> bool:
    """``M^t J M == J`` for the standard ``J = (0 I; -I 0)``."""
    n = m.rows // 2
    if m.shape != (2 * n, 2 * n):
        return False
    i, z = Matrix.identity(n), Matrix.zeros(n)
    j = Matrix.block([[z, i], [-i, z]])
    return m.T @ j @ m == j


@dataclass(frozen=True)
class Gamma0Element:
    a: int
    b: int
    c: int
    d: int
    level: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValidationError("determinant must be 1")
        if self.c % self.level:
            raise ValidationError("lower-left entry must be divisible by the level")

    @property
    def matrix(self) -> Matrix:
        return Matrix([[self.a, self.b], [self.c, self.d]])

    def __matmul__(self, other: Gamma0Element) -> Gamma0Element:
        m = self.matrix @ other.matrix
        return Gamma0Element(m[0, 0], m[0, 1], m[1, 0], m[1, 1], self.level)


def to_gamma0(u: UElement) -> Gamma0Element:
    """``(a, b phi_M; c phi_L, d) -> (a, b; N c, d)``."""
    model = u.model
    if model.kind != POLARIZED_SCALAR:
        raise WrongModel("to_gamma0 needs a polarized-scalar model")
    s = u.underlying.scalars()
    if s is None:
        raise WrongModel("element is not of scalar form")
    a, b, c, d = (m[0, 0] for m in s)
    return Gamma0Element(a, b, model.level * c, d, model.level)


def from_gamma0(model: VarietyModel, g: Gamma0Element) -> UElement:
    if model.kind != POLARIZED_SCALAR or g.level != model.level:
        raise WrongModel("level does not match the model")
    return UElement.from_scalars(model, g.a, g.b, g.c // g.level, g.d)


# factorization into pieces with invertible y ----------------------------------------

def _skew_generators(model: VarietyModel, block: str) -> list[Matrix]:
    """Skew homology matrices used as unipotent off-diagonal blocks."""
    k = model.scalar_size
    if model.kind == ELLIPTIC_POWER:
        out = [Matrix.identity(k)]
        for i in range(k):
            for j in range(i, k):
                e = [[0] * k for _ in range(k)]
                e[i][j] = e[j][i] = 1
                if k > 1:
                    out.append(Matrix(e))
        return [model.embed_scalar(block, s) for s in out]
    if model.kind == POLARIZED_SCALAR:
        return [model.embed_scalar(block, 1)]
    r = model.rank
    phi = model.ample_class
    out = [phi]
    for i in range(r):
        for j in range(i + 1, r):
            e = [[0] * r for _ in range(r)]
            e[i][j], e[j][i] = 1, -1
            out.append(Matrix(e))
    return out


def _upper(model: VarietyModel, b: Matrix) -> UElement:
    i, z = Matrix.identity(model.rank), Matrix.zeros(model.rank)
    return UElement(DoubledMap.from_blocks(model, model, i, b, z, i))


def _lower(model: VarietyModel, c: Matrix) -> UElement:
    i, z = Matrix.identity(model.rank), Matrix.zeros(model.rank)
    return UElement(DoubledMap.from_blocks(model, model, i, z, c, i))


@lru_cache(maxsize=64)
def candidate_set(model: VarietyModel, budget: int = DEFAULT_BUDGET) -> tuple[tuple[str, UElement], ...]:
    """Deterministic list of ``(label, f2)`` candidates for the right factor.

    Order: ``S``, ``S^-1``, then for ``k = 1, -1, 2, -2, ...`` and each
    upper generator ``U`` the words ``S U^k``, ``U^k S``, ``U^k``, then the
    same for lower generators.  ``S`` is omitted for non-principal models.
    """
    out: list[tuple[str, UElement]] = []
    s = UElement(fourier_element(model)) if model.is_principal else None
    if s is not None:
        out += [("S", s), ("S^-1", s.inverse())]
    ks = [k for m in range(1, budget + 1) for k in (m, -m)]
    fams = [("U", _upper, _skew_generators(model, "y")), ("L", _lower, _skew_generators(model, "z"))]
    for k in ks:
        for tag, make, gens in fams:
            for idx, g in enumerate(gens):
                t = make(model, g * k)
                label = f"{tag}{idx}^{k}"
                if s is not None:
                    out.append((f"S*{label}", s @ t))
                    out.append((f"{label}*S", t @ s))
                out.append((label, t))
    return tuple(out)


@dataclass(frozen=True)
class Factorization:
    f1: DoubledMap
    f2: UElement
    label: str
    index: int


def factor_by_isogeny_y(f: DoubledMap | UElement, budget: int = DEFAULT_BUDGET) -> Factorization:
    """Write ``f = f1 o f2`` with ``f2`` in U(A x A^) and both y-blocks isogenies.

    The first candidate in :func:`candidate_set` order that works is returned.
    """
    if isinstance(f, UElement):
        f = f.underlying
    if not is_isometric(f):
        raise NotIsometric("factorization needs an isometric map")
    for index, (label, f2) in enumerate(candidate_set(f.source, budget)):
        if not f2.y_invertible():
            continue
        f1 = f @ f2.inverse().underlying
        if y_invertible(f1):
            if f1 @ f2.underlying != f:
                raise ConventionError("factorization does not recompose to the input")
            return Factorization(f1, f2, label, index)
    raise FactorizationNotFound(
        f"no factor with invertible y-blocks among {len(candidate_set(f.source, budget))} candidates")


def sample_word(model: VarietyModel, rng, length: int) -> UElement:
    """Random product of ``length`` generators (used by tests and the audit)."""
    gens = [g for g in _generators(model)]
    out = UElement.identity(model)
    for _ in range(length):
        g = rng.choice(gens)
        out = out @ (g if rng.random() < 0.5 else g.inverse())
    return out


@lru_cache(maxsize=32)
def _generators(model: VarietyModel) -> tuple[UElement, ...]:
    out = []
    if model.is_principal:
        out.append(UElement(fourier_element(model)))
    out += [_upper(model, b) for b in _skew_generators(model, "y")]
    out += [_lower(model, c) for c in _skew_generators(model, "z")]
    if model.kind == ELLIPTIC_POWER and model.dim > 1:
        # a block-diagonal generator diag(u, u^-t) mixes the factors
        n = model.dim
        u = [[int(i == j) for j in range(n)] for i in range(n)]
        u[0][1] = 1
        us = Matrix(u)
        uinvt = us.inverse().T
        z = Matrix.zeros(n)
        out.append(UElement.from_scalars(model, us, z, z, uinvt))
    return tuple(out)
