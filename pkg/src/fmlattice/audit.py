"""Randomised convention audits shared by the CLI and the test-suite."""

from __future__ import annotations

import math
import random

from .homs import DoubledMap, VarietyModel, is_isometric, q_form_check
from .isometry import sample_word
from .linalg import Matrix, det
from .semihomog import SlopeClass, proj_degrees, sigma0_order_snf, slope_correspondence


def perturb(f: DoubledMap, rng: random.Random) -> DoubledMap:
    """``f`` with one entry of its homology matrix shifted by +-1."""
    rows = [list(r) for r in f.matrix.tolist()]
    i, j = rng.randrange(len(rows)), rng.randrange(len(rows[0]))
    rows[i][j] += rng.choice((-1, 1))
    return DoubledMap.from_matrix(f.source, f.target, Matrix(rows))


def isometry_agreement(rng: random.Random, members: int = 1000, non_members: int = 200,
                       max_length: int = 12) -> dict:
    """Compare the block criterion with the hyperbolic-form criterion."""
    models = [VarietyModel.elliptic_power(1), VarietyModel.elliptic_power(2)]
    maps = []
    for k in range(members):
        maps.append(sample_word(models[k % 2], rng, rng.randint(0, max_length)).underlying)
    for k in range(non_members):
        maps.append(perturb(maps[k % len(maps)] if maps else DoubledMap.identity(models[k % 2]), rng))
    disagreements = sum(is_isometric(f) != q_form_check(f) for f in maps)
    return {"checked": len(maps), "isometric": sum(is_isometric(f) for f in maps),
            "disagreements": disagreements}


def random_skew(rank: int, rng: random.Random, bound: int = 4) -> Matrix:
    rows = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i + 1, rank):
            v = rng.randint(-bound, bound)
            rows[i][j], rows[j][i] = v, -v
    return Matrix(rows)


def random_slope(model: VarietyModel, rng: random.Random, max_l: int = 6) -> SlopeClass:
    """A random slope whose correspondence has two finite projections."""
    while True:
        L = random_skew(model.rank, rng)
        if det(L) != 0:
            return SlopeClass(model, L, rng.randint(1, max_l))


def audit_models() -> list[VarietyModel]:
    return [VarietyModel.elliptic_power(1),
            VarietyModel.lattice(2, Matrix.block_diag(Matrix([[0, 1], [-1, 0]]),
                                                      Matrix([[0, 2], [-2, 0]])))]


def perfect_square_suite(rng: random.Random, count: int = 200) -> dict:
    """Both projection degrees are squares and ``r^2 = |q2(Ker q1)|``."""
    models = audit_models()
    not_square = sigma_mismatch = 0
    for k in range(count):
        mu = random_slope(models[k % len(models)], rng)
        d1, d2 = proj_degrees(slope_correspondence(mu))
        squares = [math.isqrt(d) ** 2 == d for d in (d1, d2)]
        if not all(squares):
            not_square += 1
            continue
        if sigma0_order_snf(mu) != d1:
            sigma_mismatch += 1
    return {"checked": count, "not_square": not_square, "sigma0_mismatch": sigma_mismatch}


def run_audit(seed: int = 0, members: int = 1000, non_members: int = 200, slopes: int = 200) -> dict:
    rng = random.Random(seed)
    iso = isometry_agreement(rng, members, non_members)
    sq = perfect_square_suite(rng, slopes)
    ok = iso["disagreements"] == 0 and sq["not_square"] == 0 and sq["sigma0_mismatch"] == 0
    return {"seed": seed, "isometry_criteria": iso, "perfect_squares": sq, "ok": ok}
