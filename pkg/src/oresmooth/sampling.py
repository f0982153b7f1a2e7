"""Seeded random generation of base polynomials and Ore elements."""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .basering import BaseKind, BasePoly
from .ore import AlgebraSpec, OreElement

SEED_ENV = "ORESMOOTH_SEED"
DEFAULT_SEED = 20161


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    value = os.environ.get(SEED_ENV)
    return int(value) if value not in (None, "") else default


def make_rng(seed: int | None = None) -> random.Random:
    return random.Random(seed_from_env() if seed is None else seed)


def random_scalar(rng: random.Random, size: int = 5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, 3))


def random_nonzero_scalar(rng: random.Random, size: int = 5) -> Fraction:
    while True:
        c = random_scalar(rng, size)
        if c:
            return c


def random_base_poly(rng: random.Random, kind=BaseKind.POLY, degree: int = 5, terms: int = 4) -> BasePoly:
    kind = BaseKind(kind)
    lo = -degree if kind is BaseKind.LAURENT else 0
    coeffs = {}
    for _ in range(rng.randint(1, terms)):
        coeffs[rng.randint(lo, degree)] = random_scalar(rng)
    return BasePoly(coeffs, kind)


def random_element(rng: random.Random, spec: AlgebraSpec, degree: int = 3, terms: int = 4) -> OreElement:
    """Random element supported on monomials x^k y^l with |k| + l <= degree."""
    out = {}
    for _ in range(rng.randint(1, terms)):
        l = rng.randint(0, degree)
        rest = degree - l
        k = rng.randint(-rest if spec.is_laurent else 0, rest)
        out[(k, l)] = random_nonzero_scalar(rng)
    return OreElement(out, spec)


def monomials(spec: AlgebraSpec, bound: int):
    """All exponent pairs (k, l) with |k| + l <= bound admissible in the base ring."""
    lo = -bound if spec.is_laurent else 0
    return [(k, l) for l in range(bound + 1) for k in range(lo, bound + 1) if abs(k) + l <= bound]
