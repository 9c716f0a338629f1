"""SVG drawings of plane tropical curves.

Geometry is exact up to the final coordinate formatting; the picture is
built from the dual subdivision, so vertices, edges and rays are
combinatorially faithful. Ray ends are dashed where they leave the view.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .polytope import LatticePolytope
from .subdivision import privileged_subdivision
from .tropical import TropicalPolynomial, dual_vertex_coordinates, newton_polytope

__all__ = ["curve_geometry", "render_svg"]

_SIZE = 480
_MARGIN = Fraction(1, 5)


def _boundary_ray(edge: frozenset, total: LatticePolytope) -> tuple[int, int]:
    a, b = sorted(edge)
    u = (b[1] - a[1], a[0] - b[0])
    if any(u[0] * p[0] + u[1] * p[1] > u[0] * a[0] + u[1] * a[1] for p in total.vertices):
        u = (-u[0], -u[1])
    return u


def curve_geometry(f: TropicalPolynomial) -> dict:
    """Vertices, bounded edges, rays and full lines of the plane curve ``X(f)``.

    Edges and rays carry the lattice length of their dual edge as weight.
    """
    if f.n_vars != 2:
        raise ValueError(f"drawing needs a polynomial in 2 variables, got {f.n_vars}")
    p = newton_polytope(f)
    out = {"vertices": [], "edges": [], "rays": [], "lines": []}
    if p.dim == 0:
        return out
    if p.dim == 1:
        # parallel lines at the breakpoints of the induced univariate function
        a0, a1 = sorted(p.vertices)
        g = gcd(a1[0] - a0[0], a1[1] - a0[1])
        w = ((a1[0] - a0[0]) // g, (a1[1] - a0[1]) // g)
        norm = w[0] * w[0] + w[1] * w[1]
        pts = sorted(
            (((x[0] - a0[0]) * w[0] + (x[1] - a0[1]) * w[1]) // norm, c) for x, c in f.terms.items()
        )
        hull: list = []
        for q in pts:
            while len(hull) >= 2:
                (m1, c1), (m2, c2) = hull[-2], hull[-1]
                if (c2 - c1) * (q[0] - m1) <= (q[1] - c1) * (m2 - m1):
                    hull.pop()
                else:
                    break
            hull.append(q)
        for (m1, c1), (m2, c2) in zip(hull, hull[1:]):
            t = Fraction(c1 - c2, m2 - m1)  # the line <w, x> = t
            base = (t * w[0] / norm, t * w[1] / norm)
            out["lines"].append({"point": base, "direction": (-w[1], w[0]), "weight": m2 - m1})
        return out
    s = privileged_subdivision([f])
    coords = {c.vertices: dual_vertex_coordinates([f], c) for c in s.full_cells}
    order = {vs: i for i, vs in enumerate(coords)}
    out["vertices"] = list(coords.values())
    for e in s.cells(1):
        weight = e.cell_polytope.relative_volume
        ends = [order[c.vertices] for c in s.cofaces(e)]
        if e.on_boundary:
            out["rays"].append({"from": ends[0], "direction": _boundary_ray(e.vertices, s.total_polytope), "weight": weight})
        else:
            out["edges"].append({"ends": tuple(ends), "weight": weight})
    return out


def _clip(p, d, box, t0=None, t1=None):
    """Parameter range of ``p + t d`` inside ``box`` (Liang-Barsky); ``None`` bounds are open."""
    for pi, di, lo, hi in ((p[0], d[0], box[0], box[2]), (p[1], d[1], box[1], box[3])):
        if di == 0:
            if pi < lo or pi > hi:
                return None
            continue
        a, b = (lo - pi) / Fraction(di), (hi - pi) / Fraction(di)
        if a > b:
            a, b = b, a
        t0 = a if t0 is None else max(t0, a)
        t1 = b if t1 is None else min(t1, b)
        if t0 > t1:
            return None
    return t0, t1


def _auto_viewport(geo) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    pts = list(geo["vertices"]) + [line["point"] for line in geo["lines"]]
    if not pts:
        return (Fraction(-1), Fraction(-1), Fraction(1), Fraction(1))
    xs = [Fraction(x) for x, _ in pts]
    ys = [Fraction(y) for _, y in pts]
    w = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    pad = w * _MARGIN
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def _fmt(x) -> str:
    return f"{float(x):.4f}".rstrip("0").rstrip(".")


def render_svg(
    f: TropicalPolynomial, viewport: Sequence | None = None, negate: bool = False
) -> str:
    """SVG 1.1 drawing of ``X(f)``; ``negate`` mirrors through the origin (min-plus view)."""
    geo = curve_geometry(f)
    if negate:
        geo["vertices"] = [(-x, -y) for x, y in geo["vertices"]]
        for r in geo["rays"]:
            r["direction"] = (-r["direction"][0], -r["direction"][1])
        for line in geo["lines"]:
            line["point"] = (-line["point"][0], -line["point"][1])
    box = tuple(Fraction(v) for v in viewport) if viewport else _auto_viewport(geo)
    xmin, ymin, xmax, ymax = box
    if xmin >= xmax or ymin >= ymax:
        raise ValueError("viewport must satisfy xmin < xmax and ymin < ymax")
    scale = Fraction(_SIZE) / max(xmax - xmin, ymax - ymin)
    width, height = (xmax - xmin) * scale, (ymax - ymin) * scale

    def sx(x):
        return _fmt((Fraction(x) - xmin) * scale)

    def sy(y):
        return _fmt((ymax - Fraction(y)) * scale)

    def stroke(wt):
        return _fmt(2 * wt)

    body = []
    verts = geo["vertices"]
    for e in geo["edges"]:
        a, b = verts[e["ends"][0]], verts[e["ends"][1]]
        d = (b[0] - a[0], b[1] - a[1])
        rng = _clip(a, d, box, 0, 1)
        if rng is None:
            continue
        t0, t1 = rng
        body.append(
            f'<line class="edge" x1="{sx(a[0] + t0 * d[0])}" y1="{sy(a[1] + t0 * d[1])}" '
            f'x2="{sx(a[0] + t1 * d[0])}" y2="{sy(a[1] + t1 * d[1])}" stroke-width="{stroke(e["weight"])}"/>'
        )
    for r in geo["rays"]:
        a, d = verts[r["from"]], r["direction"]
        rng = _clip(a, d, box, 0)
        if rng is None:
            continue
        t0, t1 = rng
        mid = t0 + (t1 - t0) * 4 / 5
        pts = [(a[0] + t * d[0], a[1] + t * d[1]) for t in (t0, mid, t1)]
        sw = stroke(r["weight"])
        body.append(
            f'<line class="ray" x1="{sx(pts[0][0])}" y1="{sy(pts[0][1])}" '
            f'x2="{sx(pts[1][0])}" y2="{sy(pts[1][1])}" stroke-width="{sw}"/>'
        )
        body.append(
            f'<line class="ray-end" x1="{sx(pts[1][0])}" y1="{sy(pts[1][1])}" '
            f'x2="{sx(pts[2][0])}" y2="{sy(pts[2][1])}" stroke-width="{sw}" stroke-dasharray="6,4"/>'
        )
    for line in geo["lines"]:
        rng = _clip(line["point"], line["direction"], box)
        if rng is None:
            continue
        t0, t1 = rng
        p, d = line["point"], line["direction"]
        body.append(
            f'<line class="line" x1="{sx(p[0] + t0 * d[0])}" y1="{sy(p[1] + t0 * d[1])}" '
            f'x2="{sx(p[0] + t1 * d[0])}" y2="{sy(p[1] + t1 * d[1])}" stroke-width="{stroke(line["weight"])}"/>'
        )
    for x, y in verts:
        if xmin <= x <= xmax and ymin <= y <= ymax:
            body.append(f'<circle class="vertex" cx="{sx(x)}" cy="{sy(y)}" r="3"/>')
    return "\n".join(
        [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" '
            f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
            f"<title>{f.to_text()}</title>",
            '<g stroke="black" fill="black" stroke-linecap="round">',
            *body,
            "</g>",
            "</svg>",
            "",
        ]
    )
