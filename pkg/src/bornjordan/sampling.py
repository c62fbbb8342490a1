"""Seeded random polynomials for property checks."""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .classical import ClassicalPoly
from .exact import GaussianRational, HBarPolynomial

__all__ = ["DEFAULT_SEED", "seed_from_env", "random_coefficient", "random_poly", "random_q_only", "random_p_only"]

DEFAULT_SEED = 20250101


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    """Seed for randomized checks; ``BJQ_SEED`` overrides the default."""
    value = os.environ.get("BJQ_SEED")
    return int(value) if value not in (None, "") else default


def random_coefficient(rng: random.Random, *, complex_ok: bool = True, hbar_ok: bool = True) -> HBarPolynomial:
    re = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    im = Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if complex_ok and rng.random() < 0.25 else 0
    if not re and not im:
        re = Fraction(1)
    c = HBarPolynomial.constant(GaussianRational(re, im))
    if hbar_ok and rng.random() < 0.2:
        c = c.shift(rng.randint(1, 2))
    return c


def _random_exponents(rng: random.Random, dof: int, degree: int) -> tuple[int, ...]:
    exps = [0] * dof
    for _ in range(degree):
        exps[rng.randrange(dof)] += 1
    return tuple(exps)


def random_poly(rng: random.Random, dof: int = 1, max_degree: int = 6, max_terms: int = 5,
                *, q: bool = True, p: bool = True, real: bool = False) -> ClassicalPoly:
    terms = {}
    z = (0,) * dof
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        if q and p:
            dq = rng.randint(0, deg)
            key = (_random_exponents(rng, dof, dq), _random_exponents(rng, dof, deg - dq))
        elif q:
            key = (_random_exponents(rng, dof, deg), z)
        elif p:
            key = (z, _random_exponents(rng, dof, deg))
        else:
            key = (z, z)
        c = random_coefficient(rng, complex_ok=not real, hbar_ok=not real)
        terms[key] = terms[key] + c if key in terms else c
    return ClassicalPoly(dof, terms)


def random_q_only(rng: random.Random, dof: int = 1, max_degree: int = 6, max_terms: int = 4) -> ClassicalPoly:
    return random_poly(rng, dof, max_degree, max_terms, p=False)


def random_p_only(rng: random.Random, dof: int = 1, max_degree: int = 6, max_terms: int = 4) -> ClassicalPoly:
    return random_poly(rng, dof, max_degree, max_terms, q=False)
