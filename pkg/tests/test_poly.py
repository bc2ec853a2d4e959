import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fmlattice.errors import ZeroPolynomial
from fmlattice.poly import (
    count_negative_roots,
    count_positive_roots,
    divmod_poly,
    gcd,
    interpolate,
    mul,
    root_sign_counts,
)

from oracles import is_squarefree, negative_roots_bisection, poly_from_roots


def test_examples():
    # (t + 1)(t + 2)(t - 3)
    p = poly_from_roots([-1, -2, 3])
    assert count_negative_roots(p) == 2
    assert count_positive_roots(p) == 1
    # zero roots are neither
    assert root_sign_counts(poly_from_roots([0, 0, -1])) == (1, 0)
    # t^2 + 1 has no real roots
    assert count_negative_roots([1, 0, 1]) == 0
    with pytest.raises(ZeroPolynomial):
        count_negative_roots([0, 0])


def test_multiplicities_counted():
    p = poly_from_roots([-1, -1, -1, Fraction(-1, 3), Fraction(-1, 3), 2], scale=-7)
    assert root_sign_counts(p) == (5, 1)


def test_interpolation_and_division():
    p = [Fraction(c) for c in (3, -1, 0, 2)]
    xs = [0, 1, 2, 3]
    ys = [sum(c * x ** i for i, c in enumerate(p)) for x in xs]
    assert interpolate(xs, ys) == p
    q, r = divmod_poly(mul(p, [1, 1]), [1, 1])
    assert q == p and r == []
    assert gcd(poly_from_roots([1, 2]), poly_from_roots([2, 3])) == [-2, 1]


root = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=200, deadline=None)
@given(st.lists(root, max_size=6), st.integers(1, 5).flatmap(lambda s: st.sampled_from([s, -s])),
       st.lists(st.tuples(st.integers(1, 4), st.integers(-3, 3)), max_size=1))
def test_roots_from_construction(roots, scale, quads):
    # extra factors t^2 + b t + c with b^2 < 4c carry no real roots
    extra = [(c, b, 1) for c, b in quads if b * b < 4 * c]
    p = poly_from_roots(roots, scale, extra)
    neg = sum(1 for r in roots if r < 0)
    pos = sum(1 for r in roots if r > 0)
    assert root_sign_counts(p) == (neg, pos)


def test_against_bisection():
    rng = random.Random(7)
    checked = 0
    while checked < 200:
        d = rng.randint(1, 6)
        p = [rng.randint(-9, 9) for _ in range(d + 1)]
        if p[-1] == 0 or not is_squarefree(p):
            continue
        checked += 1
        assert count_negative_roots(p) == negative_roots_bisection(p)
