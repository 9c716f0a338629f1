"""Privileged (regular) mixed subdivisions of Minkowski sums of Newton polytopes.

Each support is lifted by its coefficients, the lifted Minkowski sum is
hulled in R^(n+1) and the facets with an outer normal whose last
coordinate is positive (the upper hull) are projected back. The normal of
an upper facet picks out the canonical summand F_i of every polynomial.
Lower-dimensional cells are faces of full cells, carrying the induced
decomposition.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import isqrt, lcm
from typing import Sequence

from .exact_math import IntVector, SplitMix64
from .polytope import LatticePolytope, _affine_dim
from .tropical import TropicalPolynomial, newton_polytope

log = logging.getLogger(__name__)

__all__ = [
    "MixedCell",
    "MixedSubdivision",
    "TransversalityReport",
    "privileged_subdivision",
    "cell_faces",
    "is_transversal",
    "perturb_lifts",
    "ensure_transversal",
    "PerturbationError",
    "MAX_RETRIES",
]

MAX_RETRIES = 32
_NUMERATOR_BITS = 20


class PerturbationError(RuntimeError):
    pass


@dataclass(frozen=True)
class MixedCell:
    """A cell ``F_1 + ... + F_k`` with its canonical decomposition.

    ``summands[i]`` is the vertex set of ``F_i``; ``vertices`` is the vertex
    set of the cell polytope itself.
    """

    summands: tuple[frozenset, ...]
    vertices: frozenset
    dim: int
    on_boundary: bool

    @cached_property
    def type_vector(self) -> tuple[int, ...]:
        return tuple(_affine_dim(s) for s in self.summands)

    @property
    def is_mixed(self) -> bool:
        return all(d >= 1 for d in self.type_vector)

    @cached_property
    def cell_polytope(self) -> LatticePolytope:
        return LatticePolytope(self.vertices)

    @cached_property
    def summand_polytopes(self) -> tuple[LatticePolytope, ...]:
        return tuple(LatticePolytope(s) for s in self.summands)

    def sort_key(self):
        return (self.dim, sorted(self.vertices))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": sorted(list(v) for v in self.vertices),
            "summands": [sorted(list(v) for v in s) for s in self.summands],
            "type": list(self.type_vector),
            "on_boundary": self.on_boundary,
        }


class MixedSubdivision:
    """The privileged subdivision of ``P(f_1) + ... + P(f_k)``."""

    def __init__(self, polynomials, polytopes, total, full_cells, full_data):
        self.polynomials: tuple[TropicalPolynomial, ...] = tuple(polynomials)
        self.polytopes: tuple[LatticePolytope, ...] = tuple(polytopes)
        self.total_polytope: LatticePolytope = total
        self.full_cells: list[MixedCell] = full_cells
        self._full_data = full_data  # cell -> {vertex: summand vertices}

    @property
    def n(self) -> int:
        return self.total_polytope.ambient_dim

    @property
    def k(self) -> int:
        return len(self.polynomials)

    @cached_property
    def _poset(self):
        """All cells by dimension plus facet/coface relations between them."""
        n, k = self.n, self.k
        boundary = [(nrm, off) for nrm, off, _ in self.total_polytope.facets]

        def on_boundary(vs):
            return any(all(sum(a * b for a, b in zip(nrm, v)) == off for v in vs) for nrm, off in boundary)

        by_dim: dict[int, dict[frozenset, MixedCell]] = {d: {} for d in range(n + 1)}
        facets_of: dict[frozenset, set] = {}
        containing_full: dict[frozenset, list[MixedCell]] = {}
        for cell in self.full_cells:
            by_dim[n][cell.vertices] = cell
            decomp = self._full_data[cell]
            lat = cell.cell_polytope.face_lattice
            for d in range(n - 1, -1, -1):
                for vs in lat[d]:
                    containing_full.setdefault(vs, []).append(cell)
                    if vs in by_dim[d]:
                        continue
                    summands = tuple(frozenset(decomp[v][i] for v in vs) for i in range(k))
                    by_dim[d][vs] = MixedCell(summands, vs, d, on_boundary(vs))
            for d in range(n, 0, -1):
                for big in lat[d]:
                    rel = facets_of.setdefault(big, set())
                    rel.update(small for small in lat[d - 1] if small <= big)
        cofaces: dict[frozenset, set] = {}
        for big, smalls in facets_of.items():
            for s in smalls:
                cofaces.setdefault(s, set()).add(big)
        return by_dim, facets_of, cofaces, containing_full

    def cells(self, d: int) -> list[MixedCell]:
        if not 0 <= d <= self.n:
            raise ValueError(f"cell dimension {d} outside [0, {self.n}]")
        if d == self.n:
            return list(self.full_cells)
        return sorted(self._poset[0][d].values(), key=MixedCell.sort_key)

    def cell(self, vertices: frozenset) -> MixedCell:
        for level in self._poset[0].values():
            if vertices in level:
                return level[vertices]
        raise KeyError(vertices)

    def facets_of(self, cell: MixedCell) -> list[MixedCell]:
        by_dim, facets_of, _, _ = self._poset
        return sorted(
            (by_dim[cell.dim - 1][vs] for vs in facets_of.get(cell.vertices, ())),
            key=MixedCell.sort_key,
        )

    def cofaces(self, cell: MixedCell) -> list[MixedCell]:
        """Cells of dimension ``cell.dim + 1`` having ``cell`` as a facet."""
        by_dim, _, cofaces, _ = self._poset
        return sorted(
            (by_dim[cell.dim + 1][vs] for vs in cofaces.get(cell.vertices, ())),
            key=MixedCell.sort_key,
        )

    def full_cells_containing(self, cell: MixedCell) -> list[MixedCell]:
        if cell.dim == self.n:
            return [cell]
        return list(self._poset[3].get(cell.vertices, []))

    @property
    def is_mixed(self) -> bool:
        return all(sum(c.type_vector) == self.n for c in self.full_cells)

    def census(self) -> dict:
        """Cell counts by dimension and by type vector."""
        out = {}
        for d in range(self.n + 1):
            types: dict[str, int] = {}
            for c in self.cells(d):
                key = ",".join(map(str, c.type_vector))
                types[key] = types.get(key, 0) + 1
            out[str(d)] = {"count": len(self.cells(d)), "types": dict(sorted(types.items()))}
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "polynomials": [f.to_text() for f in self.polynomials],
            "cells": [c.to_json() for d in range(self.n, -1, -1) for c in self.cells(d)],
        }


def _lifted_points(f: TropicalPolynomial, scale: int) -> list[tuple[int, ...]]:
    out = []
    for a, c in f.terms.items():
        v = c * scale
        assert v.denominator == 1
        out.append(a + (int(v),))
    return out


def _lift_scale(fs: Sequence[TropicalPolynomial]) -> int:
    return lcm(*(c.denominator for f in fs for c in f.terms.values()))


def privileged_subdivision(fs: Sequence[TropicalPolynomial]) -> MixedSubdivision:
    """Subdivision of ``P(f_1) + ... + P(f_k)`` induced by the coefficients."""
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one polynomial")
    n = fs[0].n_vars
    if any(f.n_vars != n for f in fs):
        raise ValueError("all polynomials must have the same number of variables")
    scale = _lift_scale(fs)
    lifted = [_lifted_points(f, scale) for f in fs]

    # every vertex of a Minkowski sum splits uniquely into vertices of the summands
    hull = LatticePolytope(lifted[0])
    decomp = {v: (v,) for v in hull.vertices}
    for pts in lifted[1:]:
        cand: dict[tuple, tuple] = {}
        for u, du in decomp.items():
            for v in pts:
                cand.setdefault(tuple(x + y for x, y in zip(u, v)), du + (v,))
        hull = LatticePolytope(cand)
        decomp = {w: cand[w] for w in hull.vertices}
    total = LatticePolytope({v[:n] for v in decomp})
    if not total.is_full_dimensional:
        raise ValueError(
            f"P(f_1)+...+P(f_k) has dimension {total.dim} < {n}; subdivisions need a full-dimensional sum"
        )

    if hull.dim == n + 1:
        upper = [vs for nrm, _, vs in hull.facets if nrm[-1] > 0]
    else:
        upper = [frozenset(hull.vertices)]  # flat lift: one cell

    k = len(fs)
    full_cells: list[MixedCell] = []
    full_data = {}
    for vs in upper:
        proj = {v[:n]: tuple(a[:n] for a in decomp[v]) for v in vs}
        summands = tuple(frozenset(d[i] for d in proj.values()) for i in range(k))
        cell = MixedCell(summands, frozenset(proj), n, False)
        full_cells.append(cell)
        full_data[cell] = proj
    full_cells.sort(key=MixedCell.sort_key)
    polytopes = [newton_polytope(f) for f in fs]
    return MixedSubdivision(fs, polytopes, total, full_cells, full_data)


def cell_faces(s: MixedSubdivision, d: int) -> list[MixedCell]:
    return s.cells(d)


@dataclass(frozen=True)
class TransversalityReport:
    transversal: bool
    subset: tuple[int, ...] | None = None
    cell: MixedCell | None = None

    def __bool__(self) -> bool:
        return self.transversal

    def describe(self) -> str:
        if self.transversal:
            return "transversal"
        return (
            f"cell with vertices {sorted(self.cell.vertices)} of type {self.cell.type_vector} "
            f"has dimension {self.cell.dim} != sum of summand dimensions "
            f"(polynomials {[i + 1 for i in self.subset]})"
        )


def _first_violation(s: MixedSubdivision) -> MixedCell | None:
    # independence of the summand directions in full cells is inherited by all faces
    for c in s.full_cells:
        if sum(c.type_vector) != c.dim:
            return c
    return None


def is_transversal(s: MixedSubdivision, check_subsets: bool = True) -> TransversalityReport:
    """Whether every cell satisfies ``dim C = dim F_1 + ... + dim F_k``.

    With ``check_subsets`` the subdivision of every sub-collection of at least
    two polynomials is rebuilt and checked too. Single polynomials always pass.
    """
    bad = _first_violation(s)
    if bad is not None:
        return TransversalityReport(False, tuple(range(s.k)), bad)
    if check_subsets:
        for size in range(2, s.k):
            for sub in combinations(range(s.k), size):
                fs = [s.polynomials[i] for i in sub]
                try:
                    sub_s = privileged_subdivision(fs)
                except ValueError:
                    continue  # lower-dimensional sub-sum: no full cells to violate
                bad = _first_violation(sub_s)
                if bad is not None:
                    return TransversalityReport(False, sub, bad)
    return TransversalityReport(True)


def _perturbation_denominator(fs: Sequence[TropicalPolynomial], retry: int) -> int:
    """Denominator D such that perturbations below 1/D refine the subdivision.

    Any nonzero orientation determinant of lifted sum points is at least
    1/L (L the coefficient denominator) and moves by at most
    2(n+1) k H eps under perturbations of size eps, H a Hadamard bound on
    the n x n minors of point differences.
    """
    n, k = fs[0].n_vars, len(fs)
    terms = sum(len(f.terms) for f in fs)
    radius = 2 * sum(max(max(abs(x) for x in a) for a in f.terms) for f in fs) + 1
    hadamard = isqrt((n * radius * radius) ** n) + 1
    safety = 2 * (n + 1) * k * hadamard * _lift_scale(fs)
    return 2 ** (16 + retry) * (1 + terms) * safety


def _perturbed(fs, seed: int, retry: int, translate: bool) -> list[TropicalPolynomial]:
    rng = SplitMix64(seed)
    den = _perturbation_denominator(fs, retry) << _NUMERATOR_BITS
    out = []
    for f in fs:
        if translate:
            n = f.n_vars
            reach = n * (max(max(abs(x) for x in a) for a in f.terms) + 1)
            v = [Fraction(rng.signed(_NUMERATOR_BITS), den * reach) for _ in range(n)]
            out.append(f.translated(v))
        else:
            out.append(
                TropicalPolynomial(
                    f.n_vars,
                    {a: c + Fraction(rng.signed(_NUMERATOR_BITS), den) for a, c in f.terms.items()},
                )
            )
    return out


def perturb_lifts(
    fs: Sequence[TropicalPolynomial],
    seed: int,
    check_subsets: bool = True,
    translate: bool = False,
    max_retries: int = MAX_RETRIES,
) -> list[TropicalPolynomial]:
    """Seeded generic perturbation of all coefficients, retried until transversal.

    With ``translate=True`` each polynomial is perturbed by a linear
    functional instead, which moves its hypersurface rigidly (the
    perturbation used for stable intersections).
    """
    fs = list(fs)
    for retry in range(max_retries):
        cand = _perturbed(fs, seed + retry, retry, translate)
        if is_transversal(privileged_subdivision(cand), check_subsets):
            return cand
        log.debug("perturbation with seed %d not transversal, retrying", seed + retry)
    raise PerturbationError(f"no transversal perturbation found within {max_retries} retries")


def ensure_transversal(
    fs: Sequence[TropicalPolynomial], seed: int, check_subsets: bool = True
) -> tuple[list[TropicalPolynomial], MixedSubdivision, bool]:
    """Return ``(polys, subdivision, perturbed)`` with a transversal subdivision."""
    fs = list(fs)
    s = privileged_subdivision(fs)
    if is_transversal(s, check_subsets):
        return fs, s, False
    fs = perturb_lifts(fs, seed, check_subsets)
    return fs, privileged_subdivision(fs), True
