import random

import pytest

from fmlattice.errors import NotIsometric, ValidationError, WrongModel
from fmlattice.homs import DoubledMap, VarietyModel, fourier_element
from fmlattice.isometry import (
    Gamma0Element,
    UElement,
    candidate_set,
    factor_by_isogeny_y,
    from_gamma0,
    is_symplectic,
    membership,
    sample_word,
    to_gamma0,
)
from fmlattice.linalg import Matrix

E1 = VarietyModel.elliptic_power(1)
E2 = VarietyModel.elliptic_power(2)


def sc(model, a, b, c, d):
    return UElement.from_scalars(model, a, b, c, d)


def scalars(u):
    return tuple(m[0, 0] for m in u.underlying.scalars())


def test_membership_examples():
    assert membership(DoubledMap.identity(E1))
    assert membership(DoubledMap.from_scalars(E1, 1, 1, 0, 1))
    with pytest.raises(NotIsometric):
        sc(E1, 2, 0, 0, 1)


@pytest.mark.parametrize("n", [1, 2])
def test_elliptic_membership_is_symplectic(n):
    model = VarietyModel.elliptic_power(n)
    rng = random.Random(n)
    for _ in range(200):
        rows = [[rng.randint(-1, 1) for _ in range(2 * n)] for _ in range(2 * n)]
        m = Matrix(rows)
        a, b = m.submatrix(0, n, 0, n), m.submatrix(0, n, n, 2 * n)
        c, d = m.submatrix(n, 2 * n, 0, n), m.submatrix(n, 2 * n, n, 2 * n)
        f = DoubledMap.from_scalars(model, a, b, c, d)
        assert membership(f) == is_symplectic(m)
    for _ in range(50):
        u = sample_word(model, rng, 8)
        s = u.underlying.scalars()
        assert is_symplectic(Matrix.block([[s[0], s[1]], [s[2], s[3]]]))


def test_group_operations():
    rng = random.Random(3)
    for _ in range(30):
        g = sample_word(E2, rng, 6)
        h = sample_word(E2, rng, 6)
        assert g @ g.inverse() == UElement.identity(E2)
        assert (g @ h).inverse() == h.inverse() @ g.inverse()
        assert membership((g @ h).underlying)


def test_to_gamma0_examples():
    m5 = VarietyModel.polarized_scalar(5)
    assert to_gamma0(UElement.identity(m5)) == Gamma0Element(1, 0, 0, 1, 5)
    assert to_gamma0(sc(m5, 2, 1, 1, 3)) == Gamma0Element(2, 1, 5, 3, 5)
    with pytest.raises(WrongModel):
        to_gamma0(UElement.identity(E1))
    with pytest.raises(ValidationError):
        Gamma0Element(1, 0, 1, 1, 5)


@pytest.mark.parametrize("N", [2, 5, 6, 12])
def test_to_gamma0_is_homomorphism(N):
    model = VarietyModel.polarized_scalar(N)
    rng = random.Random(N)
    for _ in range(40):
        g, h = sample_word(model, rng, 6), sample_word(model, rng, 6)
        assert to_gamma0(g @ h) == to_gamma0(g) @ to_gamma0(h)
        assert from_gamma0(model, to_gamma0(g)) == g


def test_candidate_set_order():
    labels = [label for label, _ in candidate_set(E1)]
    assert labels[:5] == ["S", "S^-1", "S*U0^1", "U0^1*S", "U0^1"]
    assert len(labels) == len(set(labels))
    assert all(membership(c.underlying) for _, c in candidate_set(E2))
    # no Fourier element without a principal polarization
    assert "S" not in [label for label, _ in candidate_set(VarietyModel.polarized_scalar(3))]


def test_factor_examples():
    t = sc(E1, 1, 1, 0, 1)
    fac = factor_by_isogeny_y(t)
    assert fac.label == "S"
    assert scalars(UElement(fac.f1)) == (-1, 1, -1, 0)
    assert fac.f1 @ fac.f2.underlying == t.underlying

    s = UElement(fourier_element(E1))
    fac = factor_by_isogeny_y(s)
    assert fac.label == "U0^1*S"
    assert scalars(UElement(fac.f1)) == (1, -1, 0, 1)
    assert scalars(fac.f2) == (1, -1, 1, 0)
    assert fac.f1 @ fac.f2.underlying == s.underlying


def test_factor_covers_degenerate_elements():
    rng = random.Random(4)
    for model in (E1, E2, VarietyModel.polarized_scalar(6)):
        for _ in range(40):
            u = sample_word(model, rng, rng.randint(0, 8))
            fac = factor_by_isogeny_y(u)
            assert fac.f1 @ fac.f2.underlying == u.underlying
            assert fac.f2.y_invertible()
    assert factor_by_isogeny_y(UElement.identity(E1)).label == "S"
