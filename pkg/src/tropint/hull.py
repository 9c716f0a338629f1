"""Exact Quickhull for full-dimensional integer point sets.

Internal engine behind :mod:`tropint.polytope`. The boundary is maintained
as a triangulation into simplices; visibility is strict, so points coplanar
with a facet never see it and the triangulation may contain coplanar pieces.
These are merged into true facets at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .exact_math import determinant, rank

Point = tuple[int, ...]


@dataclass
class HullResult:
    dim: int
    vertices: list[int]  # indices into the input, sorted
    # (primitive outer normal, offset, frozenset of vertex indices)
    facets: list[tuple[tuple[int, ...], int, frozenset[int]]]
    simplices: list[tuple[int, ...]] = field(default_factory=list)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _normal(pts: list[Point]) -> tuple[int, ...]:
    """A normal vector of the hyperplane through ``len(pts) == d`` points."""
    p0 = pts[0]
    d = len(p0)
    rows = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    if d == 2:
        (a, b), = rows
        n = (b, -a)
    elif d == 3:
        (a, b, c), (e, f, g) = rows
        n = (b * g - c * f, c * e - a * g, a * f - b * e)
    else:
        n = []
        for j in range(d):
            minor = [row[:j] + row[j + 1:] for row in rows]
            det = determinant(minor)
            n.append(det if j % 2 == 0 else -det)
        n = tuple(n)
    g = 0
    for x in n:
        g = gcd(g, x)
    if g > 1:
        n = tuple(x // g for x in n)
    return n


def _initial_simplex(points: list[Point], d: int) -> list[int]:
    chosen = [0]
    # extreme points along coordinates first: they tend to give a fat simplex
    order = []
    for c in range(d):
        order.append(min(range(len(points)), key=lambda i: points[i][c]))
        order.append(max(range(len(points)), key=lambda i: points[i][c]))
    order.extend(range(len(points)))
    base = points[0]
    diffs: list[list[int]] = []
    for i in order:
        if len(chosen) == d + 1:
            break
        if i in chosen:
            continue
        cand = [a - b for a, b in zip(points[i], base)]
        if rank(diffs + [cand]) == len(diffs) + 1:
            diffs.append(cand)
            chosen.append(i)
    if len(chosen) != d + 1:
        raise ValueError("point set is not full-dimensional")
    return chosen


class _Facet:
    __slots__ = ("verts", "normal", "offset", "outside", "alive")

    def __init__(self, verts, normal, offset):
        self.verts = verts
        self.normal = normal
        self.offset = offset
        self.outside: list[int] = []
        self.alive = True


def quickhull(points: list[Point]) -> HullResult:
    """Convex hull of a full-dimensional set of integer points in Z^d, d >= 1."""
    d = len(points[0])
    if d == 1:
        lo = min(range(len(points)), key=lambda i: points[i][0])
        hi = max(range(len(points)), key=lambda i: points[i][0])
        if points[lo][0] == points[hi][0]:
            raise ValueError("point set is not full-dimensional")
        return HullResult(
            1,
            sorted({lo, hi}),
            [((-1,), -points[lo][0], frozenset([lo])), ((1,), points[hi][0], frozenset([hi]))],
            [(lo,), (hi,)],
        )

    init = _initial_simplex(points, d)
    # (d+1) * interior point, to keep arithmetic integral
    inner = [sum(points[i][c] for i in init) for c in range(d)]
    scale = d + 1

    ridges: dict[tuple[int, ...], list[_Facet]] = {}

    def make_facet(verts: tuple[int, ...]) -> _Facet:
        normal = _normal([points[i] for i in verts])
        offset = _dot(normal, points[verts[0]])
        side = _dot(normal, inner) - scale * offset
        if side > 0:
            normal = tuple(-x for x in normal)
            offset = -offset
        elif side == 0:
            raise AssertionError("degenerate facet")
        f = _Facet(verts, normal, offset)
        for k in range(d):
            key = verts[:k] + verts[k + 1:]
            ridges.setdefault(key, []).append(f)
        return f

    def drop_facet(f: _Facet) -> None:
        f.alive = False
        v = f.verts
        for k in range(d):
            key = v[:k] + v[k + 1:]
            lst = ridges[key]
            lst.remove(f)
            if not lst:
                del ridges[key]

    facets = [make_facet(tuple(sorted(init[:k] + init[k + 1:]))) for k in range(d + 1)]
    in_init = set(init)
    for i, p in enumerate(points):
        if i in in_init:
            continue
        for f in facets:
            if _dot(f.normal, p) > f.offset:
                f.outside.append(i)
                break

    pending = [f for f in facets if f.outside]
    all_facets = list(facets)
    while pending:
        f = pending.pop()
        if not f.alive or not f.outside:
            continue
        nrm, off = f.normal, f.offset
        apex = max(f.outside, key=lambda i: _dot(nrm, points[i]) - off)
        p = points[apex]
        visible = {id(f): f}
        stack = [f]
        horizon: list[tuple[int, ...]] = []
        while stack:
            g = stack.pop()
            v = g.verts
            for k in range(d):
                key = v[:k] + v[k + 1:]
                for h in ridges[key]:
                    if h is g or id(h) in visible:
                        continue
                    if _dot(h.normal, p) > h.offset:
                        visible[id(h)] = h
                        stack.append(h)
                    else:
                        horizon.append(key)
        orphans: list[int] = []
        for g in visible.values():
            orphans.extend(g.outside)
            drop_facet(g)
        new = []
        for key in horizon:
            # a ridge may be recorded twice if reached from both sides; guard
            if key not in ridges or len(ridges[key]) != 1:
                continue
            verts = tuple(sorted(key + (apex,)))
            new.append(make_facet(verts))
        all_facets.extend(new)
        for i in orphans:
            if i == apex:
                continue
            q = points[i]
            for g in new:
                if _dot(g.normal, q) > g.offset:
                    g.outside.append(i)
                    break
        pending.extend(g for g in new if g.outside)

    alive = [f for f in all_facets if f.alive]
    merged: dict[tuple, set[int]] = {}
    for f in alive:
        merged.setdefault((f.normal, f.offset), set()).update(f.verts)
    # a triangulation vertex is a true vertex iff the facet normals through it span R^d
    candidates = set()
    for f in alive:
        candidates.update(f.verts)
    keys = list(merged)
    vertices = []
    for i in sorted(candidates):
        p = points[i]
        through = [list(n) for n, o in keys if _dot(n, p) == o]
        if rank(through) == d:
            vertices.append(i)
    vset = set(vertices)
    facets_out = [(n, o, frozenset(merged[(n, o)] & vset)) for n, o in keys]
    return HullResult(d, vertices, facets_out, [f.verts for f in alive])
