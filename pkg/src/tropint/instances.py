"""Seeded random lattice polytopes and tropical polynomials for checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .polytope import LatticePolytope
from .tropical import TropicalPolynomial

__all__ = ["random_polytope", "random_polynomial"]


def random_polytope(rng: random.Random, n: int, box: int = 3, full: bool = True, points: int | None = None) -> LatticePolytope:
    """Hull of random points of ``[0, box]^n``, redrawn until full-dimensional if asked."""
    while True:
        m = points if points is not None else rng.randint(n + 1, n + 4)
        pts = {tuple(rng.randint(0, box) for _ in range(n)) for _ in range(m)}
        p = LatticePolytope(pts)
        if not full or p.is_full_dimensional:
            return p


def random_polynomial(rng: random.Random, support, spread: int = 20) -> TropicalPolynomial:
    """Polynomial on ``support`` (points or a polytope's vertices) with random integer coefficients."""
    if isinstance(support, LatticePolytope):
        support = support.vertices
    support = list(support)
    n = len(support[0])
    return TropicalPolynomial(n, {a: Fraction(rng.randint(-spread, spread)) for a in support})
