"""Mixed volumes by polarization, by mixed cells, and relative to a face lattice."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial, prod
from typing import Sequence

from .exact_math import lattice_coordinates, saturated_basis_of_span
from .polytope import LatticePolytope, PFace
from .subdivision import perturb_lifts, privileged_subdivision
from .tropical import TropicalPolynomial

__all__ = [
    "MVQuery",
    "mixed_volume_ie",
    "mixed_volume_cells",
    "relative_mixed_volume",
    "bernstein_count",
]


@dataclass(frozen=True)
class MVQuery:
    """``MV(P_1, d_1; ...; P_k, d_k)``: polytope ``P_i`` repeated ``d_i`` times."""

    polytopes: tuple[LatticePolytope, ...]
    multiplicities: tuple[int, ...]

    def __init__(self, polytopes, multiplicities=None):
        polytopes = tuple(polytopes)
        if multiplicities is None:
            multiplicities = (1,) * len(polytopes)
        multiplicities = tuple(int(d) for d in multiplicities)
        if len(multiplicities) != len(polytopes):
            raise ValueError("one multiplicity per polytope required")
        if any(d < 0 for d in multiplicities):
            raise ValueError("multiplicities must be non-negative")
        if len({p.ambient_dim for p in polytopes}) > 1:
            raise ValueError("polytopes live in different ambient dimensions")
        object.__setattr__(self, "polytopes", polytopes)
        object.__setattr__(self, "multiplicities", multiplicities)

    @property
    def dimension(self) -> int:
        return sum(self.multiplicities)


def _query(q, multiplicities) -> MVQuery:
    if isinstance(q, MVQuery):
        return q
    return MVQuery(q, multiplicities)


def _scaled_sum(polytopes: Sequence[LatticePolytope], coeffs: Sequence[int]) -> LatticePolytope:
    n = polytopes[0].ambient_dim
    pts = {(0,) * n}
    for p, c in zip(polytopes, coeffs):
        if c == 0:
            continue
        pts = {tuple(a + c * b for a, b in zip(u, v)) for u in pts for v in p.vertices}
        pts = set(LatticePolytope(pts).vertices)
    return LatticePolytope(pts)


def _polarize(polytopes: Sequence[LatticePolytope], mults: Sequence[int], n: int) -> Fraction:
    total = Fraction(0)
    for cs in product(*(range(d + 1) for d in mults)):
        s = sum(cs)
        if s == 0:
            continue
        weight = prod(comb(d, c) for d, c in zip(mults, cs))
        vol = _scaled_sum(polytopes, cs).euclidean_volume
        total += (-1) ** (n - s) * weight * vol
    return total


def mixed_volume_ie(q: MVQuery | Sequence[LatticePolytope], multiplicities=None) -> Fraction:
    """``MV_n`` by inclusion-exclusion over Minkowski sums.

    Normalized so that ``MV_n(P, ..., P) = n! vol_n(P)``.
    """
    q = _query(q, multiplicities)
    n = q.polytopes[0].ambient_dim
    if q.dimension != n:
        raise ValueError(f"multiplicities sum to {q.dimension}, ambient dimension is {n}")
    used = [(p, d) for p, d in zip(q.polytopes, q.multiplicities) if d]
    return _polarize([p for p, _ in used], [d for _, d in used], n)


def mixed_volume_cells(
    q: MVQuery | Sequence[LatticePolytope], multiplicities=None, seed: int = 0
) -> Fraction:
    """``MV_n`` as a sum over the cells of one type in a generic mixed subdivision.

    Each cell ``C`` of type ``(d_1, ..., d_k)`` contributes
    ``d_1! ... d_k! vol_n(C)``.
    """
    q = _query(q, multiplicities)
    n = q.polytopes[0].ambient_dim
    if q.dimension != n:
        raise ValueError(f"multiplicities sum to {q.dimension}, ambient dimension is {n}")
    # slots with d_i = 0 do not influence the cell sum
    used = [(p, d) for p, d in zip(q.polytopes, q.multiplicities) if d]
    polys = [TropicalPolynomial(n, {v: 0 for v in p.vertices}) for p, _ in used]
    total_dim = _scaled_sum([p for p, _ in used], [1] * len(used)).dim
    if total_dim < n:
        return Fraction(0)
    target = tuple(d for _, d in used)
    s = privileged_subdivision(perturb_lifts(polys, seed, check_subsets=False))
    weight = prod(factorial(d) for d in target)
    return sum(
        (weight * c.cell_polytope.euclidean_volume for c in s.full_cells if c.type_vector == target),
        Fraction(0),
    )


def _face_points(f) -> list[tuple[int, ...]]:
    if isinstance(f, PFace):
        return sorted(f.vertex_subset)
    if isinstance(f, LatticePolytope):
        return list(f.vertices)
    return sorted({tuple(v) for v in f})


def relative_mixed_volume(faces: Sequence, multiplicities: Sequence[int]) -> Fraction:
    """``MV'`` of faces measured in the integer lattice parallel to their joint span.

    Faces may be :class:`PFace`, :class:`LatticePolytope` or vertex
    collections. The joint span must have dimension ``sum(multiplicities)``.
    """
    pts = [_face_points(f) for f in faces]
    if len(pts) != len(multiplicities):
        raise ValueError("one multiplicity per face required")
    n = len(pts[0][0])
    diffs = [tuple(a - b for a, b in zip(v, p[0])) for p in pts for v in p[1:]]
    basis = saturated_basis_of_span(diffs, n)
    r = sum(multiplicities)
    if len(basis) != r:
        raise ValueError(
            f"faces span a lattice of rank {len(basis)}, multiplicities sum to {r}"
        )
    if r == 0:
        return Fraction(1)
    local = [
        LatticePolytope(lattice_coordinates(basis, [a - b for a, b in zip(v, p[0])]) for v in p)
        for p in pts
    ]
    return mixed_volume_ie(local, multiplicities)


def bernstein_count(polytopes: Sequence[LatticePolytope]) -> Fraction:
    """Number of intersection points of n generic hypersurfaces, with multiplicity."""
    polytopes = list(polytopes)
    if not polytopes:
        raise ValueError("need n polytopes")
    n = polytopes[0].ambient_dim
    if len(polytopes) != n:
        raise ValueError(f"Bernstein count needs exactly {n} polytopes in dimension {n}, got {len(polytopes)}")
    return mixed_volume_ie(polytopes)
