from fractions import Fraction
from itertools import product

import pytest

from tropint.ehrhart import (
    count_boundary_lattice_points,
    count_interior_lattice_points,
    count_lattice_points,
    ehrhart_polynomial,
    genus_comparison,
    half_facet_volume,
    lattice_points,
    macdonald_check,
    mixed_ehrhart,
    mixed_ehrhart_predicted,
    pick_surface_check,
    toric_genus,
)
from tropint.polytope import convex_hull, cube, euclidean_volume, simplex


def _brute_count(p, t, interior=False):
    # scan the dilated bounding box and test facet inequalities directly
    q = p.dilate(t)
    lo = [min(v[i] for v in q.vertices) for i in range(q.ambient_dim)]
    hi = [max(v[i] for v in q.vertices) for i in range(q.ambient_dim)]
    n = 0
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        vals = [sum(a * b for a, b in zip(nrm, x)) - off for nrm, off, _ in q.facets]
        n += all(v < 0 for v in vals) if interior else all(v <= 0 for v in vals)
    return n


def test_counts():
    assert count_lattice_points(cube(2)) == 4
    assert count_lattice_points(simplex(2), 3) == 10
    assert count_lattice_points(convex_hull([(0, 0, 0), (2, 1, 3), (1, 3, 0)]), 0) == 1


def test_interior_counts():
    assert count_interior_lattice_points(cube(2)) == 0
    assert count_interior_lattice_points(cube(2), 2) == 1
    assert count_interior_lattice_points(simplex(2, 3)) == 1
    assert count_interior_lattice_points(simplex(3, 4)) == 1


def test_interior_of_lower_dimensional_is_empty():
    assert count_interior_lattice_points(convex_hull([(0, 0, 0), (3, 0, 0), (0, 3, 0)])) == 0


def test_boundary_counts():
    assert count_boundary_lattice_points(cube(3), 0) == 2
    assert count_boundary_lattice_points(cube(2), 0) == 0
    assert count_boundary_lattice_points(cube(3), 2) == 26


def test_counts_match_brute_force():
    p = convex_hull([(0, 0, 0), (3, 1, 0), (0, 2, 1), (1, 1, 3), (2, 3, 2)])
    for t in (1, 2):
        assert count_lattice_points(p, t) == _brute_count(p, t)
        assert count_interior_lattice_points(p, t) == _brute_count(p, t, interior=True)
    assert len(lattice_points(p)) == count_lattice_points(p)


def test_lower_dimensional_points():
    seg = convex_hull([(0, 0, 0), (2, 2, 2)])
    assert lattice_points(seg, 2) == [(i, i, i) for i in range(5)]


def test_ehrhart_coefficients():
    assert ehrhart_polynomial(cube(3)).coeffs == (1, 3, 3, 1)
    assert ehrhart_polynomial(simplex(2)).coeffs == (1, Fraction(3, 2), Fraction(1, 2))


def test_ehrhart_basic_identities():
    p = convex_hull([(0, 0, 0), (3, 1, 0), (0, 2, 1), (1, 1, 3)])
    e = ehrhart_polynomial(p)
    assert e.coeffs[0] == 1
    assert e.coeffs[3] == euclidean_volume(p)
    assert e.coeffs[2] == half_facet_volume(p)
    for t in (1, 2, 3):
        assert e(t) == count_lattice_points(p, t)
        assert (-1) ** 3 * e(-t) == count_interior_lattice_points(p, t)


def test_mixed_ehrhart_examples():
    assert mixed_ehrhart([simplex(3), simplex(3)]).coeffs == (-1, 0, 2, 1)
    assert mixed_ehrhart([cube(3), cube(3)]).coeffs == (-1, 0, 6, 6)
    assert mixed_ehrhart_predicted([simplex(3), simplex(3)]).coeffs == (-1, 0, 2, 1)
    assert mixed_ehrhart_predicted([cube(3), cube(3)]).coeffs == (-1, 0, 6, 6)


def test_mixed_ehrhart_enumeration_oracle():
    # B(2t C) - 2 B(t C) for the unit cube
    me = mixed_ehrhart([cube(3), cube(3)])
    for t in range(4):
        assert me(t) == (2 * t + 1) ** 3 - 2 * (t + 1) ** 3


def test_mixed_ehrhart_triple_vanishing():
    me = mixed_ehrhart([simplex(3), cube(3), simplex(3, 2)])
    assert me.coeffs[1] == me.coeffs[2] == 0


def test_toric_genus():
    assert toric_genus([simplex(2, 3)]) == 1
    assert toric_genus([simplex(3), simplex(3)]) == 0
    assert toric_genus([simplex(3, 2), simplex(3, 2)]) == 1


@pytest.mark.parametrize(
    "ps, expected",
    [([simplex(3), simplex(3)], 0), ([simplex(3, 2), simplex(3, 2)], 1), ([cube(3), cube(3)], 1)],
)
def test_genus_comparison(ps, expected):
    r = genus_comparison(ps)
    assert r.equal and r.left == r.right == expected


@pytest.mark.parametrize("p, expected", [(cube(2), 4), (cube(3), 12), (simplex(3, 2), 16), (simplex(2), 3)])
def test_pick_surface(p, expected):
    r = pick_surface_check(p)
    assert r.equal and r.left == expected


@pytest.mark.parametrize("p, expected", [(cube(2), 1), (cube(3), 6), (simplex(3), 1), (simplex(2), Fraction(1, 2))])
def test_macdonald(p, expected):
    a, b = macdonald_check(p)
    assert a.equal and b.equal
    assert a.left == expected


def test_reports_serialize():
    j = pick_surface_check(cube(3)).to_json()
    assert j["left"] == "12" and j["equal"] is True
