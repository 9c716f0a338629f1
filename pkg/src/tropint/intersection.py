"""Intersections of tropical hypersurfaces through the dual mixed subdivision.

A face ``A`` of ``X_1 ∩ ... ∩ X_k`` of dimension ``j`` corresponds to a mixed
cell ``C`` of dimension ``n - j``; ``A`` is unbounded iff ``C`` lies on the
boundary of ``P_1 + ... + P_k``. Everything here is combinatorial; point
coordinates are only computed for stable intersections and drawings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial, prod
from typing import Sequence

import networkx as nx

from .errors import IdentityCheckError
from .exact_math import SplitMix64, fraction_to_str
from .mixed_volume import mixed_volume_ie, relative_mixed_volume
from .polytope import LatticePolytope, face_in_direction, faces
from .subdivision import (
    MAX_RETRIES,
    MixedCell,
    MixedSubdivision,
    PerturbationError,
    TransversalityReport,
    ensure_transversal,
    is_transversal,
    perturb_lifts,
    privileged_subdivision,
)
from .tropical import TropicalPolynomial, dual_vertex_coordinates, newton_polytope, tropical_product

__all__ = [
    "IdentityCheckError",
    "NotTransversalError",
    "IntersectionCell",
    "IntersectionComplex",
    "intersection_complex",
    "multiplicity",
    "CountReport",
    "f_vector_counts",
    "unbounded_face_count",
    "CurveVertexCount",
    "vertex_count_curve",
    "CurveGraph",
    "curve_graph",
    "GenusReport",
    "genus",
    "smoothness_check",
    "stable_intersection_points",
    "generic_polynomials",
    "smooth_curve_polynomials",
]


class NotTransversalError(ValueError):
    def __init__(self, report: TransversalityReport):
        super().__init__(f"intersection is not transversal: {report.describe()}")
        self.report = report


def _types(k: int, total: int):
    """All ``(d_1, ..., d_k)`` with ``d_i >= 1`` summing to ``total``."""
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - k + 2):
        for rest in _types(k - 1, total - first):
            yield (first,) + rest


def multiplicity(cell: MixedCell, transversal: bool | None = None) -> Fraction:
    """Intersection multiplicity of the face dual to ``cell``.

    Transversal cells get ``MV'(F_1, d_1; ...; F_k, d_k)`` in the lattice of
    the cell; otherwise the sum over all ``e <= d`` with ``sum(e) = dim C``.
    ``transversal=None`` decides from the cell itself.
    """
    dims = cell.type_vector
    if not all(d >= 1 for d in dims):
        raise ValueError(f"cell of type {dims} is not mixed")
    if transversal is None:
        transversal = sum(dims) == cell.dim
    if transversal:
        if sum(dims) != cell.dim:
            raise ValueError(f"cell of type {dims} has dimension {cell.dim}: not transversal")
        return relative_mixed_volume(cell.summands, dims)
    if sum(dims) < cell.dim:
        raise ValueError("summand dimensions sum below the cell dimension")
    total = Fraction(0)
    for es in product(*(range(d + 1) for d in dims)):
        if sum(es) == cell.dim:
            total += relative_mixed_volume(cell.summands, es)
    return total


@dataclass(frozen=True)
class IntersectionCell:
    """A face of the intersection, represented by its dual mixed cell."""

    dual: MixedCell
    dim: int
    multiplicity: Fraction

    @property
    def bounded(self) -> bool:
        return not self.dual.on_boundary


@dataclass
class IntersectionComplex:
    source: MixedSubdivision
    cells_by_dim: dict[int, list[IntersectionCell]]
    # index pairs (dim, position) of a face to the faces containing it one dimension up
    adjacency: dict[tuple[int, int], list[tuple[int, int]]] = field(default_factory=dict)

    def cells(self, j: int) -> list[IntersectionCell]:
        return self.cells_by_dim.get(j, [])

    def f_vector(self) -> list[int]:
        return [len(self.cells(j)) for j in range(self.source.n + 1)]

    def to_json(self) -> dict:
        out = []
        for j in sorted(self.cells_by_dim):
            for i, c in enumerate(self.cells_by_dim[j]):
                out.append(
                    {
                        "dim": j,
                        "index": i,
                        "type": list(c.dual.type_vector),
                        "multiplicity": fraction_to_str(c.multiplicity),
                        "bounded": c.bounded,
                        "dual_vertices": sorted(list(v) for v in c.dual.vertices),
                        "contained_in": [list(x) for x in self.adjacency.get((j, i), [])],
                    }
                )
        return {"n": self.source.n, "k": self.source.k, "f_vector": self.f_vector(), "cells": out}


def intersection_complex(
    fs: Sequence[TropicalPolynomial] | MixedSubdivision,
) -> IntersectionComplex:
    s = fs if isinstance(fs, MixedSubdivision) else privileged_subdivision(fs)
    n = s.n
    by_dim: dict[int, list[IntersectionCell]] = {}
    index: dict[frozenset, tuple[int, int]] = {}
    for d in range(n, -1, -1):
        j = n - d
        level = []
        for c in s.cells(d):
            if c.is_mixed:
                index[c.vertices] = (j, len(level))
                level.append(IntersectionCell(c, j, multiplicity(c)))
        if level:
            by_dim[j] = level
    adjacency = {}
    for key in index.values():
        j, i = key
        # faces containing A are dual to mixed facets of C
        ups = [index[f.vertices] for f in s.facets_of(by_dim[j][i].dual) if f.vertices in index]
        adjacency[key] = sorted(ups)
    return IntersectionComplex(s, by_dim, adjacency)


def _require_transversal(s: MixedSubdivision, check_subsets: bool = True) -> None:
    rep = is_transversal(s, check_subsets)
    if not rep:
        raise NotTransversalError(rep)


@dataclass(frozen=True)
class CountReport:
    """Two independent evaluations of one face count."""

    j: int
    left: Fraction
    right: Fraction

    @property
    def equal(self) -> bool:
        return self.left == self.right

    @property
    def value(self) -> Fraction:
        return self.left

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "left": fraction_to_str(self.left),
            "right": fraction_to_str(self.right),
            "equal": self.equal,
        }


def _subdivision_of(fs) -> MixedSubdivision:
    return fs if isinstance(fs, MixedSubdivision) else privileged_subdivision(fs)


def f_vector_counts(fs, j: int, check_subsets: bool = True) -> CountReport:
    """Number of ``j``-faces of the intersection counted with multiplicity.

    ``left`` sums the multiplicities of the intersection faces; ``right`` sums
    ``d_1! ... d_k! vol'(C)`` over the cells of each admissible type.
    """
    s = _subdivision_of(fs)
    n, k = s.n, s.k
    if not 0 <= j <= n:
        raise ValueError(f"j={j} outside [0, {n}]")
    _require_transversal(s, check_subsets)
    left = sum((multiplicity(c, True) for c in s.cells(n - j) if c.is_mixed), Fraction(0))
    right = Fraction(0)
    by_type: dict[tuple, list[MixedCell]] = {}
    for c in s.cells(n - j):
        by_type.setdefault(c.type_vector, []).append(c)
    for t in _types(k, n - j):
        weight = prod(factorial(d) for d in t)
        right += sum((weight * c.cell_polytope.relative_volume for c in by_type.get(t, [])), Fraction(0))
    return CountReport(j, left, right)


def _face_sum(polytopes: Sequence[LatticePolytope], total: LatticePolytope, j: int) -> Fraction:
    """Sum over the ``(n-j)``-faces F of ``total`` of ``MV'`` of the faces of each summand."""
    n = total.ambient_dim
    d = n - j
    k = len(polytopes)
    if d >= n:
        return Fraction(0)  # the only n-face is P itself, which is not on the boundary
    out = Fraction(0)
    for face in faces(total, d):
        pieces = [face_in_direction(p, face.outer_normal_witness) for p in polytopes]
        for t in _types(k, d):
            out += relative_mixed_volume(pieces, t)
    return out


def unbounded_face_count(fs, j: int, check_subsets: bool = True) -> CountReport:
    """Unbounded ``j``-faces with multiplicity.

    ``left`` sums mixed volumes of the summand faces over the ``(n-j)``-faces
    of ``P``; ``right`` sums multiplicities of mixed cells on the boundary.
    """
    s = _subdivision_of(fs)
    n = s.n
    if not 0 <= j <= n:
        raise ValueError(f"j={j} outside [0, {n}]")
    _require_transversal(s, check_subsets)
    left = _face_sum(s.polytopes, s.total_polytope, j)
    right = sum(
        (multiplicity(c, True) for c in s.cells(n - j) if c.is_mixed and c.on_boundary),
        Fraction(0),
    )
    return CountReport(j, left, right)


def _curve_precondition(fs) -> tuple[int, int]:
    k = len(fs.polynomials) if isinstance(fs, MixedSubdivision) else len(fs)
    n = fs.n if isinstance(fs, MixedSubdivision) else fs[0].n_vars
    if k != n - 1:
        raise ValueError(f"a curve needs k = n - 1 hypersurfaces; got k={k}, n={n}")
    return n, k


@dataclass(frozen=True)
class CurveVertexCount:
    """Vertices of an intersection curve with multiplicity, computed up to three ways."""

    mixed_volume: Fraction
    cell_sum: Fraction
    stable_weight: Fraction | None

    @property
    def value(self) -> Fraction:
        return self.mixed_volume

    def to_json(self) -> dict:
        return {
            "value": fraction_to_str(self.value),
            "mixed_volume": fraction_to_str(self.mixed_volume),
            "cell_sum": fraction_to_str(self.cell_sum),
            "stable_weight": None if self.stable_weight is None else fraction_to_str(self.stable_weight),
        }


def vertex_count_curve(fs: Sequence[TropicalPolynomial], cross_check: bool = True, seed: int = 0) -> CurveVertexCount:
    """``MV_n(P_1, ..., P_{n-1}, P_1 + ... + P_{n-1})``, cross-checked.

    The value is compared with the multiplicity sum over the curve's vertices
    and, with ``cross_check``, with the weighted stable intersection of the
    curve and the hypersurface of ``f_1 ⊙ ... ⊙ f_{n-1}``, point by point.
    """
    fs = list(fs)
    _curve_precondition(fs)
    s = privileged_subdivision(fs)
    counts = f_vector_counts(s, 0, check_subsets=False)
    if not counts.equal:
        raise IdentityCheckError(f"vertex multiplicities {counts.left} != cell sum {counts.right}")
    polys = list(s.polytopes)
    mv = mixed_volume_ie(polys + [s.total_polytope])
    stable = None
    if cross_check:
        pts = stable_intersection_points(fs + [tropical_product(fs)], seed)
        stable = sum(pts.values(), Fraction(0))
        vertices: dict[tuple, Fraction] = {}
        for c in s.full_cells:
            if c.is_mixed:
                x = dual_vertex_coordinates(fs, c)
                vertices[x] = vertices.get(x, 0) + multiplicity(c, True)
        if vertices != pts:
            raise IdentityCheckError("stable intersection points differ from the curve's weighted vertices")
    if mv != counts.left or (stable is not None and stable != mv):
        raise IdentityCheckError(
            f"vertex count mismatch: mixed volume {mv}, cell sum {counts.left}, stable weight {stable}"
        )
    return CurveVertexCount(mv, counts.left, stable)


@dataclass
class CurveGraph:
    vertices: list[MixedCell]
    bounded_edges: list[MixedCell]
    rays: list[MixedCell]
    # edge position -> endpoint vertex positions; bounded edges first, then rays
    incidence: dict[int, tuple[int, ...]]
    valences: list[int]
    expected_valences: list[int]

    def graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(range(len(self.vertices)))
        for e in range(len(self.bounded_edges)):
            a, b = self.incidence[e]
            g.add_edge(a, b, key=e)
        return g

    @property
    def connected(self) -> bool:
        return bool(self.vertices) and nx.is_connected(self.graph())

    @property
    def betti_number(self) -> int | None:
        if not self.connected:
            return None
        return len(self.bounded_edges) - len(self.vertices) + 1

    @property
    def trivalent(self) -> bool:
        return all(v == 3 for v in self.valences)

    def to_json(self) -> dict:
        nb = len(self.bounded_edges)
        return {
            "vertices": len(self.vertices),
            "bounded_edges": nb,
            "rays": len(self.rays),
            "valences": self.valences,
            "edges": [list(self.incidence[e]) for e in range(nb)],
            "ray_endpoints": [self.incidence[nb + r][0] for r in range(len(self.rays))],
            "connected": self.connected,
            "betti_number": self.betti_number,
        }


def curve_graph(fs) -> CurveGraph:
    n, _ = _curve_precondition(fs)
    s = _subdivision_of(fs)
    _require_transversal(s, check_subsets=False)
    verts = [c for c in s.full_cells if c.is_mixed]
    pos = {c.vertices: i for i, c in enumerate(verts)}
    edges = [c for c in s.cells(n - 1) if c.is_mixed]
    bounded = [c for c in edges if not c.on_boundary]
    rays = [c for c in edges if c.on_boundary]
    incidence = {}
    for e, c in enumerate(bounded + rays):
        ends = tuple(pos[u.vertices] for u in s.cofaces(c))
        expected = 1 if c.on_boundary else 2
        if len(ends) != expected:
            raise IdentityCheckError(f"edge dual to {sorted(c.vertices)} has {len(ends)} endpoints")
        incidence[e] = ends
    valences = [0] * len(verts)
    for ends in incidence.values():
        for v in ends:
            valences[v] += 1
    expected_val = []
    for c in verts:
        two = next(p for p, d in zip(c.summand_polytopes, c.type_vector) if d == 2)
        expected_val.append(len(two.face_lattice[1]))
    if valences != expected_val:
        raise IdentityCheckError("vertex valences differ from the edge counts of the 2-dimensional summands")
    return CurveGraph(verts, bounded, rays, incidence, valences, expected_val)


def smoothness_check(f: TropicalPolynomial) -> bool:
    """Whether every maximal cell of the subdivision is a unimodular simplex."""
    s = privileged_subdivision([f])
    n = f.n_vars
    unit = Fraction(1, factorial(n))
    return all(
        len(c.vertices) == n + 1 and c.cell_polytope.euclidean_volume == unit for c in s.full_cells
    )


@dataclass(frozen=True)
class GenusReport:
    vertices_weighted: Fraction
    rays_weighted: Fraction
    genus_formula_value: Fraction
    genus_graph_value: int | None
    smooth: bool
    connected: bool
    trivalent_unit: bool = False
    perturbed: bool = False
    graph: CurveGraph | None = None

    @property
    def is_exact(self) -> bool:
        # the Euler count needs a trivalent curve whose vertices and rays have
        # multiplicity 1; smooth hypersurfaces alone do not guarantee that
        return self.connected and self.trivalent_unit

    @property
    def consistent(self) -> bool:
        """Formula and graph agree when exact; otherwise the formula bounds the graph."""
        if self.genus_graph_value is None:
            return True
        if self.is_exact:
            return self.genus_formula_value == self.genus_graph_value
        return self.genus_formula_value >= self.genus_graph_value

    def to_json(self) -> dict:
        return {
            "vertices_weighted": fraction_to_str(self.vertices_weighted),
            "rays_weighted": fraction_to_str(self.rays_weighted),
            "genus_formula_value": fraction_to_str(self.genus_formula_value),
            "genus_graph_value": self.genus_graph_value,
            "smooth": self.smooth,
            "connected": self.connected,
            "trivalent_unit": self.trivalent_unit,
            "is_exact": self.is_exact,
            "perturbed": self.perturbed,
            "graph": None if self.graph is None else self.graph.to_json(),
        }


def genus(fs: Sequence[TropicalPolynomial], seed: int = 0) -> GenusReport:
    """Genus of the curve ``X_1 ∩ ... ∩ X_{n-1}`` from mixed volumes and from the graph.

    Non-transversal inputs are perturbed with ``seed`` before the graph is built.
    """
    fs = list(fs)
    n, _ = _curve_precondition(fs)
    polys = [newton_polytope(f) for f in fs]
    total = privileged_subdivision(fs).total_polytope
    verts = mixed_volume_ie(polys + [total])
    rays = _face_sum(polys, total, 1)
    formula = (verts - rays) / 2 + 1
    used, s, perturbed = ensure_transversal(fs, seed, check_subsets=False)
    g = curve_graph(s)
    mults_one = all(multiplicity(c, True) == 1 for c in g.vertices + g.rays)
    smooth = all(smoothness_check(f) for f in used)
    return GenusReport(
        verts, rays, formula, g.betti_number, smooth, g.connected, g.trivalent and mults_one, perturbed, g
    )


def stable_intersection_points(
    fs: Sequence[TropicalPolynomial], seed: int = 0
) -> dict[tuple[Fraction, ...], Fraction]:
    """Stable intersection of ``n`` hypersurfaces in R^n as ``{point: weight}``.

    The hypersurfaces are moved by a small generic translation; each mixed
    cell of the moved arrangement is followed back to the limit point by
    solving its tie system with the original coefficients.
    """
    fs = list(fs)
    n = fs[0].n_vars
    if len(fs) != n:
        raise ValueError(f"stable intersection needs {n} hypersurfaces in R^{n}, got {len(fs)}")
    if any(newton_polytope(f).dim == 0 for f in fs):
        return {}  # a monomial has empty hypersurface
    try:
        moved = perturb_lifts(fs, seed, check_subsets=False, translate=True)
    except ValueError:
        return {}  # lower-dimensional Minkowski sum: mixed volume zero
    s = privileged_subdivision(moved)
    points: dict[tuple[Fraction, ...], Fraction] = {}
    for c in s.full_cells:
        if not c.is_mixed:
            continue
        x = dual_vertex_coordinates(fs, c)
        points[x] = points.get(x, Fraction(0)) + relative_mixed_volume(c.summands, (1,) * n)
    return dict(sorted(points.items()))


def _smooth_lift(p: LatticePolytope, rng: SplitMix64) -> TropicalPolynomial:
    from .ehrhart import lattice_points

    # a strictly concave lift uses every lattice point; independent noise per
    # polynomial breaks the ties between cospherical points differently for each
    return TropicalPolynomial(
        p.ambient_dim, {a: -64 * sum(x * x for x in a) + rng.signed(3) for a in lattice_points(p)}
    )


def generic_polynomials(
    polytopes: Sequence[LatticePolytope], seed: int = 0, full_support: bool = False, smooth: bool = False
) -> list[TropicalPolynomial]:
    """Transversal tropical polynomials with the given Newton polytopes.

    ``smooth`` asks for unimodular triangulations using every lattice point:
    lifts are ``-|a|^2`` plus small seeded noise, redrawn until each
    polynomial passes :func:`smoothness_check`.
    """
    from .ehrhart import lattice_points

    if smooth:
        for retry in range(MAX_RETRIES):
            rng = SplitMix64(seed + retry)
            out = [_smooth_lift(p, rng) for p in polytopes]
            if all(smoothness_check(f) for f in out):
                return perturb_lifts(out, seed, check_subsets=False)
        raise PerturbationError(f"no smooth lift found within {MAX_RETRIES} retries")
    out = []
    for p in polytopes:
        pts = lattice_points(p) if full_support else list(p.vertices)
        out.append(TropicalPolynomial(p.ambient_dim, {a: 0 for a in pts}))
    return perturb_lifts(out, seed, check_subsets=False)


def smooth_curve_polynomials(polytopes: Sequence[LatticePolytope], seed: int = 0) -> list[TropicalPolynomial]:
    """Smooth hypersurfaces whose intersection curve is connected, trivalent and of unit multiplicities.

    Seeds ``seed, seed + 1, ...`` of :func:`generic_polynomials` are tried in turn.
    """
    for retry in range(MAX_RETRIES):
        fs = generic_polynomials(polytopes, seed + retry, smooth=True)
        rep = genus(fs)
        if rep.is_exact and not rep.perturbed:
            return fs
    raise PerturbationError(f"no smooth intersection curve found within {MAX_RETRIES} retries")
