"""Random cases shared by property tests and the acceptance suite."""

from __future__ import annotations

import random

from pseudolie import linalg as la
from pseudolie.cohomology import (
    Cocycle,
    central_extension,
    cocycle_radical,
    independent_mod_coboundaries,
    pairs,
    scalar_cocycles,
)
from pseudolie.corpus import load_algebra
from pseudolie.lie.algebra import abelian, heisenberg
from pseudolie.lie.isomorphism import Yes, isomorphic
from pseudolie.lie.structure import center, direct_sum
from pseudolie.scalars import Scalar

COEFFS = [Scalar(k) for k in (-2, -1, 0, 0, 1, 1, 2)] + [Scalar.gauss(0, 1), Scalar.gauss(1, -1)]


def base_pool():
    h1 = heisenberg(1)
    return [
        abelian(1),
        abelian(2),
        abelian(3),
        abelian(4),
        h1,
        direct_sum(h1, abelian(1), name="h1+i"),
        load_algebra("l43"),
        load_algebra("so3"),
        load_algebra("metabelian"),
    ]


def random_cocycle(g, d, pick):
    Z = scalar_cocycles(g)
    npairs = len(pairs(g.dim))
    forms = [la.lincomb([pick() for _ in Z], Z, npairs) for _ in range(d)]
    return Cocycle.from_forms(g, forms)


def random_coboundary(g, d, pick):
    """``mu(x, y) = nu([x, y])`` for a random linear ``nu: g -> V``."""
    forms = []
    for _ in range(d):
        nu = [pick() for _ in range(g.dim)]
        forms.append(tuple(sum((nu[k] * c for k, c in enumerate(g.basis_bracket(i, j)) if c), Scalar(0))
                           for i, j in pairs(g.dim)))
    return Cocycle.from_forms(g, forms)


def check_extension_case(g, d, pick) -> dict:
    """Run the three cohomology properties on one random ``(g, theta, mu)``."""
    theta = random_cocycle(g, d, pick)
    mu = random_coboundary(g, d, pick)
    ext = central_extension(g, theta)
    ext2 = central_extension(g, theta + mu)
    from pseudolie.lie.algebra import validate

    jacobi_ok = not validate(ext.algebra) and not validate(ext2.algebra)
    iso = isomorphic(ext.algebra, ext2.algebra)
    meets = cocycle_radical(theta).intersect(center(g)).dim
    admissible = independent_mod_coboundaries(theta) and meets == 0
    zdim = center(ext.algebra).dim
    return {
        "jacobi": jacobi_ok,
        "coboundary_iso": isinstance(iso, Yes),
        "iso_result": iso,
        "admissible": admissible,
        "center_is_v": ext.center_is_v,
        # Z(l_theta) = (Z(g) meet rad theta) + V holds without any hypothesis
        "center_formula": zdim == meets + d,
        "dim": ext.algebra.dim,
    }


def seeded_cases(count: int, seed: int = 0, max_dim: int = 5):
    rng = random.Random(seed)
    pool = base_pool()
    for _ in range(count):
        g = rng.choice([b for b in pool if b.dim < max_dim])
        d = rng.randint(1, max_dim - g.dim)
        d = min(d, 2)
        yield g, d, (lambda: rng.choice(COEFFS))


def random_weyl(rng: random.Random, max_degree: int = 2):
    from pseudolie.weyl import WeylElement

    monos = [(m, n) for m in range(max_degree + 1) for n in range(max_degree + 1) if m + n <= max_degree]
    chosen = rng.sample(monos, rng.randint(0, len(monos)))
    vals = [Scalar.gauss(rng.randint(-3, 3), rng.randint(-3, 3)) / rng.randint(1, 4) for _ in chosen]
    return WeylElement(dict(zip(chosen, vals)))
