"""Lattice point counts, Ehrhart and mixed Ehrhart polynomials, toric genus.

Counting happens in the lattice coordinates of the polytope's affine hull,
so lower-dimensional polytopes are counted correctly as well. Interior
points of a lower-dimensional polytope are defined to be zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Sequence

from .errors import IdentityCheckError
from .exact_math import fraction_to_str, solve_rational
from .polytope import LatticePolytope

__all__ = [
    "lattice_points",
    "count_lattice_points",
    "count_interior_lattice_points",
    "count_boundary_lattice_points",
    "EhrhartPolynomial",
    "MixedEhrhartPolynomial",
    "ehrhart_polynomial",
    "mixed_ehrhart",
    "mixed_ehrhart_predicted",
    "toric_genus",
    "IdentityReport",
    "genus_comparison",
    "pick_surface_check",
    "macdonald_check",
]


def _scan(p: LatticePolytope, t: int, interior: bool):
    """Yield lattice coordinates ``y`` of the points of ``t * P`` in local coordinates."""
    d = p.dim
    slack = 1 if interior else 0
    ineqs = [(nrm, t * off - slack) for nrm, off, _ in p._facets_local]
    # local facet offsets are relative to the local origin, which is P's first point
    local_verts = [p._local[v] for v in p.vertices]
    lo = [t * min(v[c] for v in local_verts) for c in range(d)]
    hi = [t * max(v[c] for v in local_verts) for c in range(d)]
    last = [(nrm[d - 1], nrm[: d - 1], rhs) for nrm, rhs in ineqs]

    def rec(prefix: list[int]):
        c = len(prefix)
        if c == d - 1:
            a, b = lo[d - 1], hi[d - 1]
            for coef, rest, rhs in last:
                r = rhs - sum(x * y for x, y in zip(rest, prefix))
                if coef > 0:
                    b = min(b, r // coef)
                elif coef < 0:
                    a = max(a, -(r // -coef))
                elif r < 0:
                    return
                if a > b:
                    return
            for y in range(a, b + 1):
                yield tuple(prefix) + (y,)
            return
        for y in range(lo[c], hi[c] + 1):
            prefix.append(y)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def lattice_points(p: LatticePolytope, t: int = 1) -> list[tuple[int, ...]]:
    """All integer points of ``t * P``, sorted."""
    if t < 0:
        raise ValueError("dilation factor must be non-negative")
    if t == 0:
        return [(0,) * p.ambient_dim]
    origin = tuple(t * x for x in p._origin)
    if p.dim == 0:
        return [origin]
    out = []
    for y in _scan(p, t, False):
        out.append(
            tuple(o + sum(y[i] * p._basis[i][c] for i in range(p.dim)) for c, o in enumerate(origin))
        )
    return sorted(out)


def count_lattice_points(p: LatticePolytope, t: int = 1) -> int:
    """``#(tP ∩ Z^n)``; for ``t = 0`` this is the Euler characteristic 1."""
    if t < 0:
        raise ValueError("dilation factor must be non-negative")
    if t == 0 or p.dim == 0:
        return 1
    return sum(1 for _ in _scan(p, t, False))


def count_interior_lattice_points(p: LatticePolytope, t: int = 1) -> int:
    """Integer points in the interior of ``tP`` (zero unless P is full-dimensional)."""
    if t < 0:
        raise ValueError("dilation factor must be non-negative")
    if not p.is_full_dimensional or t == 0:
        return 0
    return sum(1 for _ in _scan(p, t, True))


def count_boundary_lattice_points(p: LatticePolytope, t: int = 1) -> int:
    """``B(t * boundary)``; at ``t = 0`` the Euler characteristic of a sphere."""
    if not p.is_full_dimensional:
        raise ValueError("boundary counts need a full-dimensional polytope")
    if t == 0:
        return 1 + (-1) ** (p.ambient_dim - 1)
    return count_lattice_points(p, t) - count_interior_lattice_points(p, t)


def _interpolate(values: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
    """Coefficients ``c_0..c_m`` of the polynomial with ``q(t) = values[t]``."""
    m = len(values) - 1
    rows = [[Fraction(t) ** r for r in range(m + 1)] for t in range(m + 1)]
    return tuple(solve_rational(rows, values))


def _horner(coeffs, t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class EhrhartPolynomial:
    """``E_P(t) = e_0 + e_1 t + ... + e_n t^n``."""

    coeffs: tuple[Fraction, ...]

    def __call__(self, t) -> Fraction:
        return _horner(self.coeffs, Fraction(t))

    @property
    def degree(self) -> int:
        return max((i for i, c in enumerate(self.coeffs) if c), default=0)

    def to_json(self) -> dict:
        return {"coefficients": [fraction_to_str(c) for c in self.coeffs]}


@dataclass(frozen=True)
class MixedEhrhartPolynomial:
    coeffs: tuple[Fraction, ...]
    k: int

    def __call__(self, t) -> Fraction:
        return _horner(self.coeffs, Fraction(t))

    def to_json(self) -> dict:
        return {"k": self.k, "coefficients": [fraction_to_str(c) for c in self.coeffs]}


def half_facet_volume(p: LatticePolytope) -> Fraction:
    """Half the sum of the facets' volumes, each in its own lattice."""
    return sum((LatticePolytope(vs).relative_volume for _, _, vs in p.facets), Fraction(0)) / 2


def ehrhart_polynomial(p: LatticePolytope, validate: bool = True) -> EhrhartPolynomial:
    """Ehrhart polynomial by exact interpolation at ``t = 0..n``.

    With ``validate`` the constant, leading and subleading coefficients are
    checked against their geometric meaning and reciprocity is checked at
    ``t = 1, 2``.
    """
    if not p.is_full_dimensional:
        raise ValueError(f"Ehrhart polynomial needs a full-dimensional polytope (dim {p.dim} < {p.ambient_dim})")
    n = p.ambient_dim
    e = EhrhartPolynomial(_interpolate([count_lattice_points(p, t) for t in range(n + 1)]))
    if validate:
        c = e.coeffs
        if c[0] != 1:
            raise IdentityCheckError(f"constant coefficient {c[0]} != 1")
        if c[n] != p.euclidean_volume:
            raise IdentityCheckError(f"leading coefficient {c[n]} != volume {p.euclidean_volume}")
        if c[n - 1] != half_facet_volume(p):
            raise IdentityCheckError(f"coefficient e_(n-1) {c[n - 1]} != half facet volume")
        for t in (1, 2):
            if count_interior_lattice_points(p, t) != (-1) ** n * e(-t):
                raise IdentityCheckError(f"reciprocity fails at t={t}")
    return e


def _subset_sums(polytopes: Sequence[LatticePolytope]):
    """Yield ``(|J|, sum_J P_j)`` for all nonempty ``J``."""
    k = len(polytopes)
    for size in range(1, k + 1):
        for sub in combinations(range(k), size):
            acc = polytopes[sub[0]]
            for i in sub[1:]:
                acc = acc + polytopes[i]
            yield size, acc


def _check_full(polytopes: Sequence[LatticePolytope]):
    if not polytopes:
        raise ValueError("need at least one polytope")
    for p in polytopes:
        if not p.is_full_dimensional:
            raise ValueError(f"polytope {list(p.vertices)} is not full-dimensional")


def mixed_ehrhart(polytopes: Sequence[LatticePolytope], validate: bool = True) -> MixedEhrhartPolynomial:
    """Alternating sum of the Ehrhart polynomials of all nonempty sub-sums."""
    polytopes = list(polytopes)
    _check_full(polytopes)
    k, n = len(polytopes), polytopes[0].ambient_dim
    values = [Fraction(0)] * (n + 1)
    for size, q in _subset_sums(polytopes):
        sign = (-1) ** (k - size)
        for t in range(n + 1):
            values[t] += sign * count_lattice_points(q, t)
    me = MixedEhrhartPolynomial(_interpolate(values), k)
    if validate:
        bad = [r for r in range(1, min(k, n + 1)) if me.coeffs[r] != 0]
        if bad:
            raise IdentityCheckError(f"coefficients {bad} of the mixed Ehrhart polynomial do not vanish")
    return me


def mixed_ehrhart_predicted(polytopes: Sequence[LatticePolytope]) -> MixedEhrhartPolynomial:
    """Closed form for ``k = n - 1``: only ``t^n``, ``t^(n-1)`` and ``t^0`` survive."""
    from .intersection import _face_sum
    from .mixed_volume import mixed_volume_ie

    polytopes = list(polytopes)
    _check_full(polytopes)
    n, k = polytopes[0].ambient_dim, len(polytopes)
    if k != n - 1:
        raise ValueError(f"closed form needs k = n - 1 polytopes; got k={k}, n={n}")
    total = polytopes[0]
    for p in polytopes[1:]:
        total = total + p
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[0] = Fraction((-1) ** n)
    coeffs[n] = mixed_volume_ie(polytopes + [total]) / 2
    coeffs[n - 1] = _face_sum(polytopes, total, 1) / 2
    return MixedEhrhartPolynomial(tuple(coeffs), k)


def toric_genus(polytopes: Sequence[LatticePolytope]) -> Fraction:
    """Alternating sum of interior point counts over all nonempty sub-sums."""
    polytopes = list(polytopes)
    _check_full(polytopes)
    k = len(polytopes)
    return Fraction(
        sum((-1) ** (k - size) * count_interior_lattice_points(q) for size, q in _subset_sums(polytopes))
    )


@dataclass(frozen=True)
class IdentityReport:
    name: str
    left: Fraction
    right: Fraction
    terms: dict | None = None

    @property
    def equal(self) -> bool:
        return self.left == self.right

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "left": fraction_to_str(self.left),
            "right": fraction_to_str(self.right),
            "equal": self.equal,
        }
        if self.terms:
            out["terms"] = {k: fraction_to_str(v) for k, v in self.terms.items()}
        return out


def genus_comparison(polytopes: Sequence[LatticePolytope]) -> IdentityReport:
    """Tropical genus from mixed volumes against the toric genus from interior points."""
    from .intersection import _face_sum
    from .mixed_volume import mixed_volume_ie

    polytopes = list(polytopes)
    _check_full(polytopes)
    n, k = polytopes[0].ambient_dim, len(polytopes)
    if k != n - 1:
        raise ValueError(f"genus comparison needs k = n - 1 polytopes; got k={k}, n={n}")
    total = polytopes[0]
    for p in polytopes[1:]:
        total = total + p
    mv = mixed_volume_ie(polytopes + [total])
    rays = _face_sum(polytopes, total, 1)
    left = mv / 2 - rays / 2 + 1
    right = toric_genus(polytopes)
    return IdentityReport("genus", left, right, {"mixed_volume": mv, "facet_mixed_volumes": rays})


def pick_surface_check(p: LatticePolytope) -> IdentityReport:
    """Normalized surface volume against an alternating sum of boundary point counts."""
    if not p.is_full_dimensional:
        raise ValueError("surface identity needs a full-dimensional polytope")
    n = p.ambient_dim
    left = sum(
        (factorial(n - 1) * LatticePolytope(vs).relative_volume for _, _, vs in p.facets), Fraction(0)
    )
    terms = {f"B({k}*boundary)": Fraction(count_boundary_lattice_points(p, k)) for k in range(n)}
    right = (-1) ** (n - 1) * sum(
        (-1) ** k * comb(n - 1, k) * terms[f"B({k}*boundary)"] for k in range(n)
    )
    return IdentityReport("surface", left, Fraction(right), terms)


def macdonald_check(p: LatticePolytope) -> tuple[IdentityReport, IdentityReport]:
    """Macdonald's volume identity and its interior-point corollary."""
    if not p.is_full_dimensional:
        raise ValueError("Macdonald identity needs a full-dimensional polytope")
    n = p.ambient_dim
    vol = p.euclidean_volume
    B = [Fraction(count_lattice_points(p, k)) for k in range(n)]
    Bd = [Fraction(count_boundary_lattice_points(p, k)) for k in range(n)]
    Bi = [Fraction(count_interior_lattice_points(p, k)) for k in range(n)]
    left = Fraction(n - 1, 2) * factorial(n) * vol
    right = sum(
        ((-1) ** (n - 1 - k) * comb(n - 1, k) * (B[k] - Bd[k] / 2) for k in range(n)), Fraction(0)
    )
    terms = {f"B({k}P)": B[k] for k in range(n)} | {f"B({k}*boundary)": Bd[k] for k in range(n)}
    first = IdentityReport("macdonald", left, right, terms)
    surface = sum(
        (factorial(n - 1) * LatticePolytope(vs).relative_volume for _, _, vs in p.facets), Fraction(0)
    )
    left2 = left - surface / 2 + 1
    right2 = sum(((-1) ** (n - 1 - k) * comb(n - 1, k) * Bi[k] for k in range(1, n)), Fraction(0))
    second = IdentityReport(
        "macdonald-interior", left2, right2, {f"B+({k}P)": Bi[k] for k in range(1, n)}
    )
    return first, second
