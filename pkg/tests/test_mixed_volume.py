from fractions import Fraction
from itertools import product
from math import factorial

import pytest

from tropint.mixed_volume import (
    MVQuery,
    bernstein_count,
    mixed_volume_cells,
    mixed_volume_ie,
    relative_mixed_volume,
)
from tropint.polytope import convex_hull, cube, euclidean_volume, faces, simplex


def test_relative_mixed_volume_examples():
    facet = convex_hull([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert relative_mixed_volume([facet, facet], [1, 1]) == 1
    assert relative_mixed_volume([convex_hull([(0, 0, 0), (1, 0, 0)]), convex_hull([(0, 0, 0), (0, 1, 0)])], [1, 1]) == 1
    assert relative_mixed_volume([convex_hull([(0, 0), (2, 0)])], [1]) == 2


def test_relative_mixed_volume_faces():
    p = simplex(3, 2)
    for f in faces(p, 2):
        assert relative_mixed_volume([f, f], [1, 1]) == 4


def test_relative_mixed_volume_bad_rank():
    seg = convex_hull([(0, 0), (1, 0)])
    with pytest.raises(ValueError):
        relative_mixed_volume([seg, seg], [1, 1])


@pytest.mark.parametrize(
    "polys, expected",
    [
        ([simplex(2), simplex(2)], 1),
        ([simplex(2, 2), simplex(2, 2)], 4),
        ([simplex(3)] * 3, 1),
        ([cube(3)] * 3, 6),
    ],
)
def test_mixed_volume_both_ways(polys, expected):
    assert mixed_volume_ie(polys) == expected
    assert mixed_volume_cells(polys) == expected


def test_multiplicities():
    q = MVQuery([simplex(3), simplex(3, 2)], [2, 1])
    assert q.dimension == 3
    assert mixed_volume_ie(q) == 2
    assert mixed_volume_cells([cube(3), cube(3)], [1, 2]) == 6
    assert mixed_volume_ie([cube(3), cube(3)], [1, 2]) == 6


def test_diagonal_is_normalized_volume():
    p = convex_hull([(0, 0, 0), (3, 1, 0), (0, 2, 1), (1, 1, 3)])
    assert mixed_volume_ie([p], [3]) == factorial(3) * euclidean_volume(p)


def test_symmetric_and_multilinear():
    a = convex_hull([(0, 0), (2, 1), (1, 3)])
    b = convex_hull([(0, 0), (1, 0), (0, 2), (1, 1)])
    c = convex_hull([(0, 0), (0, 1)])
    assert mixed_volume_ie([a, b]) == mixed_volume_ie([b, a])
    assert mixed_volume_ie([a, b + c]) == mixed_volume_ie([a, b]) + mixed_volume_ie([a, c])


def test_lower_dimensional_sum_zero():
    seg = convex_hull([(0, 0), (1, 0)])
    assert mixed_volume_ie([seg, seg]) == 0
    assert mixed_volume_cells([seg, seg]) == 0


def test_bernstein_count_two_conics():
    assert bernstein_count([simplex(2, 2), simplex(2, 2)]) == 4


def _planar_mv(polys):
    # brute-force oracle in the plane: MV(A, B) = vol(A+B) - vol(A) - vol(B)
    a, b = polys
    return euclidean_volume(a + b) - euclidean_volume(a) - euclidean_volume(b)


def test_planar_oracle():
    pts = [(0, 0), (3, 0), (1, 2), (0, 3), (2, 2), (1, 1)]
    for i, j in product(range(2), repeat=2):
        a = convex_hull(pts[i:i + 4])
        b = convex_hull(pts[j + 1:j + 5])
        assert mixed_volume_ie([a, b]) == _planar_mv([a, b]) == mixed_volume_cells([a, b])
        assert isinstance(mixed_volume_ie([a, b]), Fraction)
