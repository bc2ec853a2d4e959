"""Exact lattice invariants of derived equivalences of abelian varieties."""

from .autoeq import AutoeqElement, TorsionPoint, conj_point, gamma_project, kernel_difference
from .cocycle import SlopeVector, UtildeElement, lambda_cocycle, maslov_mu, p_index, signature
from .homs import DoubledMap, Homo, VarietyModel, dual, fourier_element, is_isometric, q_form_check, tilde_map
from .isometry import Gamma0Element, UElement, factor_by_isogeny_y, from_gamma0, membership, to_gamma0
from .linalg import Lattice, Matrix, hnf, lattice_index, pfaffian, saturate, snf
from .partners import PartnerReport, partner_count, torsion_kernel_order, unitary_divisors
from .poly import count_negative_roots
from .semihomog import (
    SlopeClass,
    kernel_slope_from_isometry,
    phi_mu_contains,
    proj_degrees,
    rank_chi,
    sigma0_order,
    slope_correspondence,
)

__version__ = "0.1.0"
