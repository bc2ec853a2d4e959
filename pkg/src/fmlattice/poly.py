"""Univariate polynomials over Q and exact real-root counting.

A polynomial is a list of coefficients, constant term first.  Leading zeros are
trimmed by every function that returns a polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ZeroPolynomial

Poly = list  # list[Fraction], constant term first


def trim(p: Sequence) -> Poly:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence) -> int:
    p = trim(p)
    return len(p) - 1  # -1 for the zero polynomial


def evaluate(p: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> Poly:
    return trim([i * c for i, c in enumerate(p)][1:])


def mul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_poly(p: Sequence, q: Sequence) -> tuple[Poly, Poly]:
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    rem = list(p)
    lead = q[-1]
    while len(rem) >= len(q) and rem:
        c = rem[-1] / lead
        k = len(rem) - len(q)
        quo[k] = c
        for i, b in enumerate(q):
            rem[k + i] -= c * b
        rem = trim(rem)
    return trim(quo), rem


def monic(p: Sequence) -> Poly:
    p = trim(p)
    return [c / p[-1] for c in p] if p else []


def gcd(p: Sequence, q: Sequence) -> Poly:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def interpolate(xs: Sequence, ys: Sequence) -> Poly:
    """Lagrange interpolation through the points ``(xs[i], ys[i])``."""
    out: Poly = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = [Fraction(1)]
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = mul(basis, [-Fraction(xj), Fraction(1)])
                den *= Fraction(xi) - xj
        term = [c * yi / den for c in basis]
        out = [a + b for a, b in zip(out + [0] * len(term), term + [0] * len(out))]
    return trim(out)


def reflect(p: Sequence) -> Poly:
    """``t -> p(-t)``."""
    return trim([c if i % 2 == 0 else -c for i, c in enumerate(p)])


def sturm_sequence(p: Sequence) -> list[Poly]:
    p = trim(p)
    seq = [p, derivative(p)]
    while seq[-1]:
        r = divmod_poly(seq[-2], seq[-1])[1]
        seq.append([-c for c in r])
    seq.pop()
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _changes_at_minus_inf(seq) -> int:
    return _sign_changes(s[-1] * (-1) ** (len(s) - 1) for s in seq)


def _changes_at_plus_inf(seq) -> int:
    return _sign_changes(s[-1] for s in seq)


def _distinct_roots_by_side(p: Poly) -> tuple[int, int]:
    # p is squarefree with p(0) != 0
    seq = sturm_sequence(p)
    at_zero = _sign_changes(s[0] for s in seq)
    return _changes_at_minus_inf(seq) - at_zero, at_zero - _changes_at_plus_inf(seq)


def root_sign_counts(p: Sequence) -> tuple[int, int]:
    """``(negative, positive)`` real-root counts with multiplicity; zero roots excluded.

    Uses Sturm sequences on squarefree parts of the gcd tower
    ``p, gcd(p, p'), ...``; each level contributes the roots whose
    multiplicity exceeds the level index.
    """
    p = trim(p)
    if not p:
        raise ZeroPolynomial("polynomial is identically zero")
    while p[0] == 0:
        p = p[1:]
    neg = pos = 0
    while len(p) > 1:
        g = gcd(p, derivative(p))
        squarefree = divmod_poly(p, g)[0]
        a, b = _distinct_roots_by_side(squarefree)
        neg += a
        pos += b
        p = g
    return neg, pos


def count_negative_roots(p: Sequence) -> int:
    """Number of real roots strictly below zero, counted with multiplicity."""
    return root_sign_counts(p)[0]


def count_positive_roots(p: Sequence) -> int:
    return root_sign_counts(p)[1]
