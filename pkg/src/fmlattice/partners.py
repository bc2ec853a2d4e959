"""Fourier-Mukai partners of an abelian variety with End(A) = Z.

For a polarization of type ``(1, N)`` the partners are indexed by the unitary
divisors ``k`` of ``N`` (``gcd(k, N/k) = 1``); partner ``k`` is the quotient of
``A`` by ``Ker(phi_L) & A_k``.  There are ``2^s`` of them, ``s`` the number of
distinct primes of ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, prod

from .errors import NotIsogeny, ValidationError
from .homs import Homo, VarietyModel
from .linalg import Matrix, as_matrix, det, snf


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise ValidationError("N must be a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def unitary_divisors(N: int) -> list[int]:
    divs = [1]
    for p, e in factorize(N).items():
        q = p ** e
        divs += [d * q for d in divs]
    return sorted(divs)


def torsion_kernel_order(phi: Homo | Matrix, k: int) -> int:
    """Order of ``{p in (1/k)L / L : phi(p) in L'}``.

    With ``phi = U D V`` in Smith form the condition decouples into
    ``d_i w_i = 0 mod k``, giving ``prod gcd(d_i, k)``.
    """
    m = phi.mat if isinstance(phi, Homo) else as_matrix(phi)
    if k < 1:
        raise ValidationError("k must be a positive integer")
    if not m.is_square() or not m.is_integral() or det(m) == 0:
        raise NotIsogeny("map is not an isogeny")
    _, divisors = snf(m)
    return prod(gcd(d, k) for d in divisors)


@dataclass(frozen=True)
class PartnerReport:
    N: int
    divisors: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.divisors)

    @property
    def unique(self) -> bool:
        """A single partner, necessarily A itself."""
        return self.count == 1

    @cached_property
    def kernel_orders(self) -> tuple[tuple[int, int], ...]:
        phi = VarietyModel.polarized_scalar(self.N).ample_class
        return tuple((k, torsion_kernel_order(phi, k)) for k in self.divisors)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "count": self.count,
            "divisors": list(self.divisors),
            "kernel_orders": [list(pair) for pair in self.kernel_orders],
            "unique": self.unique,
        }


def partner_count(N: int) -> PartnerReport:
    return PartnerReport(N, tuple(unitary_divisors(N)))
