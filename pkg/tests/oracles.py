"""Brute-force reference computations used to freeze expected values."""

from fractions import Fraction
from itertools import combinations


def planar_upper_cells(terms):
    """Maximal cells of the regular subdivision of a planar lifted point set.

    Every triple of lifted points spanning a non-vertical plane with all
    other points weakly below it gives one cell: the points on that plane.
    Returns the set of cells as frozensets of the hull vertices.
    """
    pts = [(a[0], a[1], Fraction(c)) for a, c in terms.items()]
    cells = set()
    for p, q, r in combinations(pts, 3):
        u = [q[i] - p[i] for i in range(3)]
        v = [r[i] - p[i] for i in range(3)]
        nrm = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
        if nrm[2] == 0:
            continue
        if nrm[2] < 0:
            nrm = tuple(-x for x in nrm)
        off = sum(a * b for a, b in zip(nrm, p))
        side = [sum(a * b for a, b in zip(nrm, x)) - off for x in pts]
        if all(s <= 0 for s in side):
            on = [x[:2] for x, s in zip(pts, side) if s == 0]
            cells.add(frozenset(_hull_vertices(on)))
    return cells


def _hull_vertices(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def lattice_length(a, b):
    from math import gcd

    return gcd(abs(a[0] - b[0]), abs(a[1] - b[1]))
