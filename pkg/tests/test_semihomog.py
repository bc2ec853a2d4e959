import itertools
import math
import random
from fractions import Fraction

import pytest

from fmlattice.audit import random_slope
from fmlattice.errors import DegenerateProjection, NotIsometric, NotSkew, YNotInvertible
from fmlattice.homs import DoubledMap, VarietyModel, fourier_element
from fmlattice.isometry import sample_word
from fmlattice.linalg import Matrix
from fmlattice.semihomog import (
    SlopeClass,
    graph_projection_degrees,
    kernel_slope_from_isometry,
    kernel_slope_matrix,
    phi_mu_contains,
    proj_degrees,
    rank_chi,
    restriction_slope,
    sigma0_order,
    sigma0_order_snf,
    slope_correspondence,
)

E1 = VarietyModel.elliptic_power(1)
RANK4 = VarietyModel.lattice(2, Matrix.block_diag(Matrix([[0, 1], [-1, 0]]), Matrix([[0, 2], [-2, 0]])))


def elliptic(a, l):
    return SlopeClass(E1, Matrix([[0, a], [-a, 0]]), l)


def test_normalisation_and_validation():
    mu = elliptic(4, 6)
    assert mu.l == 3 and mu.L == Matrix([[0, 2], [-2, 0]])
    assert SlopeClass.from_rational(E1, Matrix([[0, Fraction(2, 3)], [Fraction(-2, 3), 0]])) == elliptic(2, 3)
    with pytest.raises(NotSkew):
        SlopeClass(E1, Matrix([[1, 0], [0, 1]]), 1)


@pytest.mark.parametrize("a,l", [(1, 1), (1, 2), (3, 2), (-2, 5), (7, 3), (5, 1)])
def test_elliptic_rank_chi(a, l):
    mu = elliptic(a, l)
    assert proj_degrees(slope_correspondence(mu)) == (l * l, a * a)
    assert rank_chi(mu) == (l, abs(a))
    assert sigma0_order(mu) == l * l


def test_degenerate_slope():
    mu = elliptic(0, 1)
    assert proj_degrees(slope_correspondence(mu)) == (1, math.inf)
    with pytest.raises(DegenerateProjection):
        rank_chi(mu)


def test_random_slopes_have_square_degrees():
    rng = random.Random(0)
    for k in range(60):
        mu = random_slope((E1, RANK4)[k % 2], rng)
        d1, d2 = proj_degrees(slope_correspondence(mu))
        assert math.isqrt(d1) ** 2 == d1 and math.isqrt(d2) ** 2 == d2
        assert sigma0_order_snf(mu) == d1


def test_phi_mu_membership_brute_force():
    # mu = 1/2: Phi = {(2x, x') : ...} ; compare with the defining span
    mu = elliptic(1, 2)
    for d in itertools.product([Fraction(k, 4) for k in range(4)], repeat=2):
        for delta in itertools.product([Fraction(k, 4) for k in range(4)], repeat=2):
            # (d, delta) = t (l e_i, L^t e_i) rows, solved over Q then tested mod Z
            t = [d[0] / 2, d[1] / 2]
            img = (-t[1], t[0])  # t L with L = [[0, 1], [-1, 0]]
            expected = all(((img[i] - delta[i]) % 1) == 0 for i in range(2))
            # d is only determined mod Z, so also allow the shifts of t by 1/2
            for s in itertools.product((0, Fraction(1, 2)), repeat=2):
                tt = [t[0] + s[0], t[1] + s[1]]
                im = (-tt[1], tt[0])
                expected = expected or all(((im[i] - delta[i]) % 1) == 0 for i in range(2))
            assert phi_mu_contains(mu, d, delta) == expected


def test_kernel_slope_of_fourier_element():
    s = fourier_element(E1)
    mu = kernel_slope_from_isometry(s)
    assert mu.l == 1
    assert graph_projection_degrees(mu, 2) == (1, 1)
    # the Poincare bundle restricts to degree-0 line bundles
    nu = restriction_slope(s)
    assert nu.L == Matrix.zeros(2)
    assert proj_degrees(slope_correspondence(nu))[0] == 1


def test_kernel_slope_errors():
    with pytest.raises(YNotInvertible):
        kernel_slope_matrix(DoubledMap.identity(E1))
    with pytest.raises(NotIsometric):
        kernel_slope_from_isometry(DoubledMap.from_scalars(E1, 1, 2, 1, 1))


def graph_violations(f):
    """Order-2 points where membership in Phi_mu disagrees with the flipped graph of f."""
    mu = kernel_slope_from_isometry(f)
    ra, rb = f.source.rank, f.target.rank
    half = (0, Fraction(1, 2))
    bad = 0
    for src in itertools.product(half, repeat=2 * ra):
        image = f.matrix.apply(src)
        for tgt in itertools.product(half, repeat=2 * rb):
            a, alpha = src[:ra], src[ra:]
            b, beta = tgt[:rb], tgt[rb:]
            on_graph = all((image[i] - tgt[i]) % 1 == 0 for i in range(2 * rb))
            point = list(a) + list(b) + [-v for v in alpha] + list(beta)
            if slope_correspondence(mu).contains_point(point) != on_graph:
                bad += 1
    return bad


@pytest.mark.parametrize("model,maps", [(E1, 10), (VarietyModel.polarized_scalar(3), 2)], ids=["E1", "PS3"])
def test_kernel_slope_graph(model, maps):
    rng = random.Random(1)
    done = 0
    while done < maps:
        u = sample_word(model, rng, rng.randint(1, 8))
        if not u.y_invertible():
            continue
        done += 1
        f = u.underlying
        g = kernel_slope_matrix(f)
        assert g.is_skew()
        mu = kernel_slope_from_isometry(f)
        assert graph_projection_degrees(mu, model.rank) == (1, 1)
        assert graph_violations(f) == 0
