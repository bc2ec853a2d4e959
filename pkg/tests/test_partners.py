import itertools
import math

import pytest

from fmlattice.errors import NotIsogeny, ValidationError
from fmlattice.homs import VarietyModel
from fmlattice.linalg import Matrix
from fmlattice.partners import factorize, partner_count, torsion_kernel_order, unitary_divisors

from oracles import omega_sieve, torsion_kernel_brute


def test_examples():
    r = partner_count(12)
    assert r.divisors == (1, 3, 4, 12)
    assert r.kernel_orders == ((1, 1), (3, 9), (4, 16), (12, 144))
    assert partner_count(210).count == 16
    assert partner_count(1).unique and partner_count(1).divisors == (1,)
    assert partner_count(12).to_dict()["count"] == 4


def test_factorize():
    assert factorize(1) == {}
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(99991) == {99991: 1}
    with pytest.raises(ValidationError):
        factorize(0)


def test_unitary_divisors_definition():
    for n in range(1, 400):
        brute = [d for d in range(1, n + 1) if n % d == 0 and math.gcd(d, n // d) == 1]
        assert unitary_divisors(n) == brute


def test_count_is_power_of_two():
    omega = omega_sieve(5000)
    for n in range(1, 5001):
        assert partner_count(n).count == 2 ** omega[n]


def test_multiplicative():
    for m, n in itertools.product(range(1, 40), repeat=2):
        if math.gcd(m, n) == 1:
            assert partner_count(m * n).count == partner_count(m).count * partner_count(n).count


def test_torsion_kernel_order():
    assert torsion_kernel_order(Matrix.identity(2) * 2, 2) == 4
    assert torsion_kernel_order(Matrix.identity(2), 5) == 1
    with pytest.raises(NotIsogeny):
        torsion_kernel_order(Matrix([[1, 1], [1, 1]]), 2)
    with pytest.raises(ValidationError):
        torsion_kernel_order(Matrix.identity(2), 0)


def test_torsion_kernel_brute_force():
    for rows in itertools.product(range(-3, 4), repeat=4):
        m = [list(rows[:2]), list(rows[2:])]
        d = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if d == 0:
            continue
        for k in range(1, 7):
            assert torsion_kernel_order(Matrix(m), k) == torsion_kernel_brute(m, k)


def test_polarized_kernel_orders():
    for N in (2, 6, 30):
        phi = VarietyModel.polarized_scalar(N).ample_class
        for k in unitary_divisors(N):
            assert torsion_kernel_order(phi, k) == k * k
