"""Lattice polytopes in V-representation with exact facet data.

A polytope of dimension ``d < n`` is handled in coordinates of its own
affine lattice: the saturated lattice of integer vectors parallel to its
affine hull. All face and volume logic runs full-dimensionally there, so
``relative_volume`` is simply the Euclidean volume in those coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import factorial
from typing import Iterable, Sequence

from .exact_math import (
    IntVector,
    determinant,
    lattice_coordinates,
    primitive,
    saturated_basis_of_span,
    solve_rational,
)
from .hull import quickhull

__all__ = [
    "LatticePolytope",
    "PFace",
    "convex_hull",
    "minkowski_sum",
    "faces",
    "face_in_direction",
    "euclidean_volume",
    "relative_volume",
    "simplex",
    "cube",
    "polytope_to_json",
    "polytope_from_json",
]


class LatticePolytope:
    """Convex hull of finitely many integer points."""

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = sorted({tuple(int(c) for c in p) for p in points})
        if not pts:
            raise ValueError("convex hull of an empty point set")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise ValueError("points of different dimensions")
        self.ambient_dim = n
        origin = pts[0]
        diffs = [tuple(a - b for a, b in zip(p, origin)) for p in pts[1:]]
        basis = saturated_basis_of_span(diffs, n)
        self.dim = len(basis)
        self._origin = origin
        self._basis = basis
        if self.dim == 0:
            self.vertices: tuple[IntVector, ...] = (origin,)
            self._local = {origin: ()}
            self._facets_local: list = []
            self._simplices: list = []
            return
        local = [(0,) * self.dim] + [lattice_coordinates(basis, v) for v in diffs]
        res = quickhull(local)
        self.vertices = tuple(pts[i] for i in res.vertices)
        self._local = {pts[i]: local[i] for i in res.vertices}
        self._facets_local = [
            (nrm, off, frozenset(pts[i] for i in vs)) for nrm, off, vs in res.facets
        ]
        self._simplices = [tuple(local[i] for i in s) for s in res.simplices]

    # -- basic queries -------------------------------------------------
    def __repr__(self) -> str:
        return f"LatticePolytope(dim={self.dim}, vertices={list(self.vertices)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @cached_property
    def facets(self) -> list[tuple[IntVector, int, frozenset]]:
        """Facet inequalities ``<normal, x> <= offset`` with primitive outer normals.

        For lower-dimensional polytopes the normals are ambient witnesses of
        the relative facets (the inequalities then only hold on the affine
        hull).
        """
        out = []
        for nrm, off, vs in self._facets_local:
            amb = self._ambient_normal(nrm)
            some = next(iter(vs))
            out.append((amb, sum(a * b for a, b in zip(amb, some)), vs))
        return out

    def _ambient_normal(self, local_normal: Sequence[int]) -> IntVector:
        if self.dim == self.ambient_dim:
            # the saturated basis of a full-dimensional span is the identity
            return tuple(local_normal)
        # v in the row span of B with B v = u
        b = self._basis
        gram = [[sum(x * y for x, y in zip(r, s)) for s in b] for r in b]
        lam = solve_rational(gram, list(local_normal))
        v = [sum(lam[i] * b[i][c] for i in range(len(b))) for c in range(self.ambient_dim)]
        return primitive(v)

    def contains(self, x: Sequence) -> bool:
        """Exact membership test for a rational point."""
        if self.dim < self.ambient_dim:
            diff = [Fraction(a) - b for a, b in zip(x, self._origin)]
            try:
                lam = self._local_coordinates_rational(diff)
            except ValueError:
                return False
            return all(
                sum(a * b for a, b in zip(nrm, lam)) <= off
                for nrm, off, _ in self._facets_local
            ) if self.dim else True
        return all(
            sum(a * b for a, b in zip(nrm, x)) <= off for nrm, off, _ in self.facets
        )

    def _local_coordinates_rational(self, diff):
        b = self._basis
        if not b:
            if any(diff):
                raise ValueError("not in affine hull")
            return []
        lam = solve_rational([[b[i][c] for i in range(len(b))] for c in range(self.ambient_dim)], diff)
        if lam is None:
            raise ValueError("not in affine hull")
        return lam

    def local_coordinates(self, x: Sequence[int]) -> IntVector:
        """Integer coordinates of a lattice point of the affine hull."""
        return lattice_coordinates(self._basis, [a - b for a, b in zip(x, self._origin)])

    @cached_property
    def euclidean_volume(self) -> Fraction:
        if self.dim < self.ambient_dim:
            return Fraction(0)
        return self.relative_volume

    @cached_property
    def relative_volume(self) -> Fraction:
        """Volume in the lattice of integer vectors parallel to the affine hull."""
        d = self.dim
        if d == 0:
            return Fraction(1)
        apex = self._local[self.vertices[0]]
        total = 0
        for s in self._simplices:
            if apex in s:
                continue
            total += abs(determinant([[a - b for a, b in zip(p, apex)] for p in s]))
        return Fraction(total, factorial(d))

    def translate(self, t: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope([tuple(a + b for a, b in zip(v, t)) for v in self.vertices])

    def dilate(self, t: int) -> "LatticePolytope":
        return LatticePolytope([tuple(t * a for a in v) for v in self.vertices])

    def __add__(self, other: "LatticePolytope") -> "LatticePolytope":
        return minkowski_sum(self, other)

    def __rmul__(self, t: int) -> "LatticePolytope":
        return self.dilate(t)

    # -- face lattice --------------------------------------------------
    @cached_property
    def face_lattice(self) -> dict[int, dict[frozenset, IntVector]]:
        """Faces by dimension: vertex set -> primitive witness outer normal."""
        d = self.dim
        full = frozenset(self.vertices)
        lattice: dict[int, dict[frozenset, IntVector]] = {d: {full: self._improper_witness()}}
        if d == 0:
            return lattice
        facet_sets = [vs for _, _, vs in self._facets_local]
        facet_normals = [nrm for nrm, _, _ in self._facets_local]
        level = {vs: (i,) for i, vs in enumerate(facet_sets)}
        for k in range(d - 1, -1, -1):
            lattice[k] = {}
            for vs, idx in level.items():
                local_normal = [sum(facet_normals[i][c] for i in idx) for c in range(d)]
                lattice[k][vs] = self._ambient_normal(primitive(local_normal))
            if k == 0:
                break
            nxt: dict[frozenset, tuple] = {}
            for vs in level:
                for i, fs in enumerate(facet_sets):
                    h = vs & fs
                    if not h or h == vs or h in nxt:
                        continue
                    if _affine_dim(h) == k - 1:
                        nxt[h] = tuple(j for j, g in enumerate(facet_sets) if h <= g)
            level = nxt
        return lattice

    def _improper_witness(self) -> IntVector:
        if self.dim == self.ambient_dim:
            return (0,) * self.ambient_dim
        from .exact_math import integer_kernel

        perp = integer_kernel(self._basis)
        return tuple(perp[0])


def _affine_dim(points: Iterable[IntVector]) -> int:
    pts = list(points)
    if len(pts) <= 1:
        return 0
    from .exact_math import rank

    p0 = pts[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in pts[1:]])


@dataclass(frozen=True)
class PFace:
    """A face of a lattice polytope together with a normal exposing it."""

    parent: LatticePolytope
    vertex_subset: frozenset
    dim: int
    outer_normal_witness: IntVector

    @cached_property
    def polytope(self) -> LatticePolytope:
        return LatticePolytope(self.vertex_subset)

    @property
    def vertices(self) -> frozenset:
        return self.vertex_subset


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    return LatticePolytope(points)


def minkowski_sum(a: LatticePolytope, b: LatticePolytope) -> LatticePolytope:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(
            f"Minkowski sum of polytopes in dimensions {a.ambient_dim} and {b.ambient_dim}"
        )
    return LatticePolytope(
        {tuple(x + y for x, y in zip(u, v)) for u, v in product(a.vertices, b.vertices)}
    )


def faces(p: LatticePolytope, d: int) -> list[PFace]:
    if not 0 <= d <= p.dim:
        raise ValueError(f"face dimension {d} outside [0, {p.dim}]")
    return [
        PFace(p, vs, d, w)
        for vs, w in sorted(p.face_lattice[d].items(), key=lambda kv: sorted(kv[0]))
    ]


def face_in_direction(p: LatticePolytope | PFace, v: Sequence[int]) -> PFace:
    """Face of ``p`` on which ``<v, .>`` is maximal."""
    if not any(v):
        raise ValueError("direction must be nonzero")
    parent = p.polytope if isinstance(p, PFace) else p
    vals = {x: sum(a * b for a, b in zip(v, x)) for x in parent.vertices}
    best = max(vals.values())
    vs = frozenset(x for x, val in vals.items() if val == best)
    return PFace(parent, vs, _affine_dim(vs), tuple(v))


def euclidean_volume(p: LatticePolytope) -> Fraction:
    return p.euclidean_volume


def relative_volume(f: LatticePolytope | PFace) -> Fraction:
    if isinstance(f, PFace):
        return f.polytope.relative_volume
    return f.relative_volume


def simplex(n: int, s: int = 1) -> LatticePolytope:
    """The dilated standard simplex ``s * conv{0, e_1, ..., e_n}``."""
    pts = [(0,) * n] + [tuple(s * int(i == j) for j in range(n)) for i in range(n)]
    return LatticePolytope(pts)


def cube(n: int, s: int = 1) -> LatticePolytope:
    return LatticePolytope(product((0, s), repeat=n))


def polytope_to_json(p: LatticePolytope) -> dict:
    return {"dim": p.ambient_dim, "vertices": [list(v) for v in p.vertices]}


def polytope_from_json(data: dict | str) -> LatticePolytope:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        n = int(data["dim"])
        verts = [tuple(int(c) for c in v) for v in data["vertices"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed polytope JSON: {exc}") from exc
    if any(len(v) != n for v in verts):
        raise ValueError(f"polytope JSON: every vertex must have {n} coordinates")
    return LatticePolytope(verts)
