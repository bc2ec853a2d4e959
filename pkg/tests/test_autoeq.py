import random
from fractions import Fraction

import pytest

from fmlattice.autoeq import (
    AutoeqElement,
    TorsionPoint,
    conj_point,
    gamma_project,
    group_law,
    kernel_difference,
)
from fmlattice.errors import DimensionMismatch, ValidationError
from fmlattice.homs import VarietyModel, fourier_element
from fmlattice.isometry import UElement, sample_word

E1 = VarietyModel.elliptic_power(1)
S = UElement(fourier_element(E1))


def rand_point(rng, rank, den=6):
    return TorsionPoint([Fraction(rng.randrange(den), den) for _ in range(rank)])


def rand_elem(rng, model=E1):
    g = sample_word(model, rng, rng.randint(0, 6))
    return AutoeqElement(rng.randint(-3, 3), rand_point(rng, 2 * model.rank), g)


def test_torsion_points():
    p = TorsionPoint([Fraction(3, 2), Fraction(-1, 3)])
    assert p.coords == (Fraction(1, 2), Fraction(2, 3))
    assert p.order == 6
    assert (p + p + p).coords == (Fraction(1, 2), 0)
    assert (p - p).is_zero()
    with pytest.raises(DimensionMismatch):
        conj_point(S, TorsionPoint([0]))


def test_examples():
    s = AutoeqElement.lift(S)
    sq = s @ s
    assert sq.shift == -1 and sq.point.is_zero()
    assert sq.g == UElement.from_scalars(E1, -1, 0, 0, -1)
    e = AutoeqElement.identity(E1)
    assert e @ s == s @ e == s
    assert group_law(E1) == "split"
    assert group_law(VarietyModel.polarized_scalar(3)) == "model group law"


def test_group_axioms():
    rng = random.Random(0)
    e = AutoeqElement.identity(E1)
    for _ in range(60):
        a, b, c = rand_elem(rng), rand_elem(rng), rand_elem(rng)
        assert (a @ b) @ c == a @ (b @ c)
        assert a @ a.inverse() == e and a.inverse() @ a == e
        assert gamma_project(a @ b) == gamma_project(a) @ gamma_project(b)


def test_kernel():
    rng = random.Random(1)
    for _ in range(40):
        a = rand_elem(rng)
        k = AutoeqElement(rng.randint(-3, 3), rand_point(rng, 4), UElement.identity(E1))
        assert k.in_kernel()
        b = a @ k
        assert kernel_difference(a, b) == (k.shift, k.point)
    with pytest.raises(ValidationError):
        kernel_difference(AutoeqElement.lift(S), AutoeqElement.identity(E1))


def test_kernel_is_central_up_to_action():
    # conjugating a kernel element by g acts on the point through g
    rng = random.Random(2)
    for _ in range(20):
        a = rand_elem(rng)
        p = rand_point(rng, 4)
        k = AutoeqElement(0, p, UElement.identity(E1))
        c = a @ k @ a.inverse()
        assert c.in_kernel()
        assert c.point == conj_point(a.g, p) and c.shift == 0
