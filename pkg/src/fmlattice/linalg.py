"""Exact integer and rational matrix kernels.

Everything here works on Python ints and :class:`fractions.Fraction`; there is
no floating point anywhere.  Lattices are stored by their row-style Hermite
normal form, so two lattices are equal exactly when their bases are equal.
"""

from __future__ import annotations

import math
from operator import mul
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    NotSkew,
    NotSublattice,
    OddDimension,
    Singular,
)

Number = int | Fraction


def _canon(v) -> Number:
    if type(v) is int:
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        f = Fraction(v)
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"unsupported matrix entry {v!r}")


class Matrix:
    """Immutable dense matrix with exact entries.

    Integral entries are kept as ``int``; anything else is a reduced
    ``Fraction`` (so ``is_integral`` is a cheap type check).
    """

    __slots__ = ("rows", "cols", "_data", "_hash", "_integral")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(_canon(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        self._data = rows
        self.rows = len(rows)
        self.cols = cols
        self._hash = None
        self._integral = None

    @classmethod
    def _raw(cls, rows: tuple, cols: int, integral: bool | None = None) -> Matrix:
        # rows must already be canonical tuples
        m = object.__new__(cls)
        m._data = rows
        m.rows = len(rows)
        m.cols = cols
        m._hash = None
        m._integral = integral
        return m

    @classmethod
    def _computed(cls, rows, cols: int, integral: bool) -> Matrix:
        if integral:
            return cls._raw(tuple(tuple(r) for r in rows), cols, True)
        return cls(rows, cols)

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> Matrix:
        cols = rows if cols is None else cols
        return cls(((0,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(((1 if i == j else 0) for j in range(n)) for i in range(n))

    @classmethod
    def diag(cls, entries: Sequence) -> Matrix:
        n = len(entries)
        return cls(((entries[i] if i == j else 0) for j in range(n)) for i in range(n))

    @classmethod
    def block(cls, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
        rows = []
        for brow in blocks:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise DimensionMismatch("block row heights differ")
            for i in range(h):
                rows.append(tuple(x for b in brow for x in b._data[i]))
        cols = sum(b.cols for b in blocks[0]) if blocks else 0
        return cls._raw(tuple(rows), cols)

    @classmethod
    def block_diag(cls, *mats: Matrix) -> Matrix:
        n = sum(m.rows for m in mats)
        c = sum(m.cols for m in mats)
        out = [[0] * c for _ in range(n)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                out[r0 + i][c0:c0 + m.cols] = m._data[i]
            r0 += m.rows
            c0 += m.cols
        return cls(out, c)

    # access ---------------------------------------------------------------

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list[Number]]:
        return [list(r) for r in self._data]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> Matrix:
        return Matrix._raw(tuple(r[c0:c1] for r in self._data[r0:r1]), c1 - c0, self._integral or None)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> Matrix:
        if not self.rows:
            return Matrix.zeros(self.cols, 0)
        return Matrix._raw(tuple(zip(*self._data)), self.rows, self._integral)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_integral(self) -> bool:
        if self._integral is None:
            self._integral = all(type(x) is int for r in self._data for x in r)
        return self._integral

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_skew(self) -> bool:
        if not self.is_square():
            return False
        d = self._data
        return all(d[i][j] == -d[j][i] for i in range(self.rows) for j in range(i, self.cols))

    def denominator(self) -> int:
        """Least common multiple of the entry denominators."""
        out = 1
        for r in self._data:
            for x in r:
                if type(x) is not int:
                    out = math.lcm(out, x.denominator)
        return out

    def content(self) -> int:
        return math.gcd(*(x for r in self._data for x in r)) if self.is_integral() else 0

    # arithmetic -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self._data == other._data and self.cols == other.cols

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.cols, self._data))
        return self._hash

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix._computed(
            ((a + b for a, b in zip(ra, rb)) for ra, rb in zip(self._data, other._data)),
            self.cols, self.is_integral() and other.is_integral())

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __neg__(self) -> Matrix:
        return Matrix._raw(tuple(tuple(-x for x in r) for r in self._data), self.cols, self._integral)

    def __mul__(self, c) -> Matrix:
        c = _canon(c)
        return Matrix._computed(((c * x for x in r) for r in self._data), self.cols,
                                type(c) is int and self.is_integral())

    __rmul__ = __mul__

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._data))
        return Matrix._computed(
            ((sum(map(mul, r, c)) for c in cols) for r in self._data),
            other.cols, self.is_integral() and other.is_integral())

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length does not match matrix")
        return tuple(_canon(sum(a * b for a, b in zip(r, vec))) for r in self._data)

    def det(self) -> Number:
        return det(self)

    def inverse(self) -> Matrix:
        return inverse(self)

    def __repr__(self) -> str:
        return f"Matrix({self.tolist()!r})"


def as_matrix(m) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(m)


# determinants and inverses ---------------------------------------------------

def det(m: Matrix) -> Number:
    """Exact determinant (Bareiss for integer input, fraction elimination otherwise)."""
    if not m.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.tolist()
    if m.is_integral():
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            akk = a[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * akk - a[i][k] * a[k][j]) // prev
            prev = akk
        return sign * a[n - 1][n - 1]
    a = [[Fraction(x) for x in r] for r in a]
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            out = -out
        out *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return _canon(out)


@lru_cache(maxsize=4096)
def inverse(m: Matrix) -> Matrix:
    """Exact inverse over the rationals; raises :class:`Singular`."""
    if not m.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    n = m.rows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(m.tolist())]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise Singular("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return Matrix(r[n:] for r in a)


def solve_left(basis: Matrix, v: Sequence) -> tuple | None:
    """Coefficients ``c`` with ``c @ basis == v`` (rows of ``basis`` independent), or None."""
    k, n = basis.shape
    # Gaussian elimination on the augmented transpose system.
    a = [[Fraction(basis[i, j]) for i in range(k)] + [Fraction(v[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    if any(a[i][k] != 0 for i in range(r, n)):
        return None
    coeffs = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        coeffs[c] = a[i][k]
    return tuple(_canon(x) for x in coeffs)


def rank(m: Matrix) -> int:
    a = [[Fraction(x) for x in r] for r in m.tolist()]
    r = 0
    for c in range(m.cols):
        p = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, m.rows):
            f = a[i][c] / a[r][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


# normal forms ------------------------------------------------------------------

def _require_integral(m: Matrix) -> None:
    if not m.is_integral():
        raise TypeError("integer matrix required")


def hnf(m: Matrix) -> Matrix:
    """Row-style Hermite normal form with zero rows removed.

    Pivots are positive, strictly increasing in column, and entries above a
    pivot are reduced into ``[0, pivot)``.  The row span over Z is preserved.
    """
    _require_integral(m)
    a = [list(r) for r in m.tolist()]
    nrows, ncols = m.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        # gcd-combine every lower row into row r
        for i in range(r + 1, nrows):
            if a[i][c] == 0:
                continue
            x, y = a[r][c], a[i][c]
            g, s, t = _xgcd(x, y)
            u, v = x // g, y // g
            ra, rb = a[r], a[i]
            a[r] = [s * p + t * q for p, q in zip(ra, rb)]
            a[i] = [-v * p + u * q for p, q in zip(ra, rb)]
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        pivots.append(c)
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return Matrix(a[:r], ncols)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _pivot_step(p: int, b: int) -> tuple[int, int, int, int]:
    """Unimodular ``(s t; u v)`` sending ``(p, b)`` to ``(gcd, 0)``.

    Plain elimination when ``p | b`` keeps the pivot in place; a Bezout step
    with ``s = 0`` would swap lines and can cycle.
    """
    if b % p == 0:
        return 1, 0, -(b // p), 1
    g, s, t = _xgcd(p, b)
    return s, t, -b // g, p // g


def smith_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` and U, V unimodular.

    ``D`` is diagonal with ``d1 | d2 | ...`` and nonnegative entries.
    """
    _require_integral(m)
    nr, nc = m.shape
    a = [list(r) for r in m.tolist()]
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_comb(M, i, j, s, t, u, v):
        ri, rj = M[i], M[j]
        M[i] = [s * x + t * y for x, y in zip(ri, rj)]
        M[j] = [u * x + v * y for x, y in zip(ri, rj)]

    def col_comb(M, i, j, s, t, u, v):
        for r in M:
            x, y = r[i], r[j]
            r[i] = s * x + t * y
            r[j] = u * x + v * y

    for k in range(min(nr, nc)):
        # move a nonzero entry of smallest absolute value into (k, k)
        while True:
            best = None
            for i in range(k, nr):
                for j in range(k, nc):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _smith_finish(a, U, V, nr, nc)
            i, j = best
            if i != k:
                a[k], a[i] = a[i], a[k]
                U[k], U[i] = U[i], U[k]
            if j != k:
                for r in a:
                    r[k], r[j] = r[j], r[k]
                for r in V:
                    r[k], r[j] = r[j], r[k]
            done = True
            p = a[k][k]
            for i in range(k + 1, nr):
                if a[i][k]:
                    s, t, u, v = _pivot_step(p, a[i][k])
                    row_comb(a, k, i, s, t, u, v)
                    row_comb(U, k, i, s, t, u, v)
                    p = a[k][k]
            for j in range(k + 1, nc):
                if a[k][j]:
                    s, t, u, v = _pivot_step(p, a[k][j])
                    col_comb(a, k, j, s, t, u, v)
                    col_comb(V, k, j, s, t, u, v)
                    p = a[k][k]
            if any(a[i][k] for i in range(k + 1, nr)) or any(a[k][j] for j in range(k + 1, nc)):
                done = False
            if done:
                # enforce divisibility of the rest by the pivot
                bad = next(((i, j) for i in range(k + 1, nr) for j in range(k + 1, nc)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                i, _ = bad
                a[k] = [x + y for x, y in zip(a[k], a[i])]
                U[k] = [x + y for x, y in zip(U[k], U[i])]
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            U[k] = [-x for x in U[k]]
    return _smith_finish(a, U, V, nr, nc)


def _smith_finish(a, U, V, nr, nc):
    return Matrix(U, nr), Matrix(a, nc), Matrix(V, nc)


def snf(m: Matrix) -> tuple[Matrix, list[int]]:
    """Smith normal form and its nonzero invariant factors (``d1 | d2 | ...``)."""
    _, d, _ = smith_form(m)
    divisors = [d[i, i] for i in range(min(d.shape)) if d[i, i] != 0]
    return d, divisors


def elementary_divisors(m: Matrix) -> list[int]:
    return snf(m)[1]


# lattices ------------------------------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """A subgroup of Z^ambient_rank, stored by its HNF basis (rows)."""

    ambient_rank: int
    basis: Matrix

    @classmethod
    def span(cls, generators, ambient_rank: int | None = None) -> Lattice:
        g = as_matrix(generators)
        n = g.cols if ambient_rank is None else ambient_rank
        if g.rows and g.cols != n:
            raise DimensionMismatch("generator length does not match ambient rank")
        if g.rows == 0:
            return cls(n, Matrix.zeros(0, n))
        return cls(n, hnf(g))

    @classmethod
    def full(cls, n: int) -> Lattice:
        return cls(n, Matrix.identity(n))

    @property
    def rank(self) -> int:
        return self.basis.rows

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_rank:
            raise DimensionMismatch("vector length does not match ambient rank")
        v = [_canon(x) for x in v]
        if any(type(x) is not int for x in v):
            return False
        for i in range(self.basis.rows):
            row = self.basis.row(i)
            c = next(j for j, x in enumerate(row) if x)
            if any(v[j] for j in range(c)):
                return False
            q, r = divmod(v[c], row[c])
            if r:
                return False
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    def contains_lattice(self, other: Lattice) -> bool:
        return all(self.contains(other.basis.row(i)) for i in range(other.rank))

    def __contains__(self, v) -> bool:
        return self.contains(v)


def saturate(lat: Lattice) -> Lattice:
    """Smallest saturated sublattice (torsion-free quotient) containing ``lat``."""
    k = lat.rank
    if k == 0:
        return lat
    _, d, V = smith_form(lat.basis)
    # rows of basis span the rows of D @ V^-1; saturation drops the d_i
    vinv = inverse(V)
    return Lattice.span(vinv.submatrix(0, k, 0, vinv.cols), lat.ambient_rank)


def lattice_index(sub: Lattice, sup: Lattice) -> int | float:
    """Index ``[sup : sub]``; ``math.inf`` when the ranks differ."""
    if sub.ambient_rank != sup.ambient_rank:
        raise DimensionMismatch("lattices live in different ambient spaces")
    if not sup.contains_lattice(sub):
        raise NotSublattice("first lattice is not contained in the second")
    if sub.rank != sup.rank:
        return math.inf
    if sub.rank == 0:
        return 1
    coords = Matrix(solve_left(sup.basis, sub.basis.row(i)) for i in range(sub.rank))
    return abs(det(coords))


def rational_lattice_order(gens: Matrix) -> int:
    """Order of the finite group generated by the rows of ``gens`` modulo Z^n.

    The rows are rational vectors; the group is ``(Z^n + span(gens)) / Z^n``.
    """
    n = gens.cols
    den = gens.denominator()
    stacked = Matrix.block([[gens * den], [Matrix.identity(n) * den]])
    _, divs = snf(stacked)
    covol = math.prod(divs)
    return den ** n // covol


# Pfaffians -------------------------------------------------------------------------

def pfaffian(m: Matrix) -> Number:
    """Pfaffian of a skew-symmetric matrix by skew Gaussian elimination."""
    if not m.is_square():
        raise DimensionMismatch("Pfaffian of a non-square matrix")
    if not m.is_skew():
        raise NotSkew("matrix is not skew-symmetric")
    n = m.rows
    if n % 2:
        raise OddDimension("Pfaffian needs even dimension")
    if n == 0:
        return 1
    if n == 2:
        return m[0, 1]
    if n == 4:
        return m[0, 1] * m[2, 3] - m[0, 2] * m[1, 3] + m[0, 3] * m[1, 2]
    a = [[Fraction(x) for x in r] for r in m.tolist()]
    out = Fraction(1)
    for k in range(0, n, 2):
        j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
        if j is None:
            return 0
        if j != k + 1:
            # simultaneous row/column swap flips the sign
            a[k + 1], a[j] = a[j], a[k + 1]
            for r in a:
                r[k + 1], r[j] = r[j], r[k + 1]
            out = -out
        p = a[k][k + 1]
        out *= p
        for i in range(k + 2, n):
            c = a[k][i] / p
            d = a[k + 1][i] / -p
            if c:
                a[i] = [x - c * y for x, y in zip(a[i], a[k + 1])]
                for r in a:
                    r[i] -= c * r[k + 1]
            if d:
                a[i] = [x - d * y for x, y in zip(a[i], a[k])]
                for r in a:
                    r[i] -= d * r[k]
    return _canon(out)


def skew_standard(n: int) -> Matrix:
    """Block-diagonal sum of ``n`` copies of ``[[0, 1], [-1, 0]]``."""
    j = Matrix([[0, 1], [-1, 0]])
    return Matrix.block_diag(*([j] * n)) if n else Matrix.zeros(0, 0)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return Matrix(
        (a[i, j] * b[k, l] for j in range(a.cols) for l in range(b.cols))
        for i in range(a.rows) for k in range(b.rows)
    )
