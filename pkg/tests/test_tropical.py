from fractions import Fraction

import pytest

from tropint.subdivision import privileged_subdivision
from tropint.tropical import (
    ParseError,
    TropicalPolynomial,
    dual_vertex_coordinates,
    evaluate,
    infer_n_vars,
    newton_polytope,
    parse_tropical_polynomial,
    tropical_product,
)

from conftest import F_TEXT, polys


def test_parse_curve_f(curve_f):
    assert curve_f.terms == {
        (1, 0): -62,
        (2, 0): 97,
        (0, 2): -73,
        (3, 1): -4,
        (2, 2): -83,
        (0, 4): -10,
    }


def test_parse_line_and_merge():
    line = parse_tropical_polynomial("0 + x + y")
    assert line.terms == {(0, 0): 0, (1, 0): 0, (0, 1): 0}
    assert parse_tropical_polynomial("1x + 2x").terms == {(1,): 2}


def test_parse_rationals_and_parens():
    f = parse_tropical_polynomial("(-1/2)x*y + 3/4 + x^2", 2)
    assert f.terms[(1, 1)] == Fraction(-1, 2)
    assert f.terms[(0, 0)] == Fraction(3, 4)


@pytest.mark.parametrize("bad", ["", "0+", "x^", "0 + q", "1//2x"])
def test_parse_errors(bad):
    with pytest.raises(ParseError) as info:
        parse_tropical_polynomial(bad, 2)
    assert info.value.column >= 1


def test_laurent_exponents():
    assert parse_tropical_polynomial("x^-1 + y", 2).terms == {(-1, 0): 0, (0, 1): 0}


def test_roundtrip_text(curve_f):
    assert parse_tropical_polynomial(curve_f.to_text(), 2) == curve_f


def test_infer_n_vars():
    assert infer_n_vars(["0+x", "0+y"]) == 2
    assert infer_n_vars(["0+x+y+z"]) == 3


def test_evaluate_line():
    line = parse_tropical_polynomial("0+x+y")
    assert evaluate(line, (3, 5)) == (5, frozenset({(0, 1)}))
    value, arg = evaluate(line, (0, 0))
    assert value == 0 and len(arg) == 3


def test_evaluate_curve_f(curve_f):
    assert evaluate(curve_f, (0, 0)) == (97, frozenset({(2, 0)}))


def test_newton_polytopes(curve_f):
    assert set(newton_polytope(parse_tropical_polynomial("0+x+y")).vertices) == {(0, 0), (1, 0), (0, 1)}
    assert set(newton_polytope(curve_f).vertices) == {(1, 0), (2, 0), (3, 1), (0, 4), (0, 2)}
    assert newton_polytope(parse_tropical_polynomial("3x^2y", 2)).dim == 0


def test_product_support():
    f, g = polys("0+x", "0+y")
    h = tropical_product([f, g])
    assert h.terms == {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 0}


def _vertex(fs, cell_vertices):
    s = privileged_subdivision(fs)
    (cell,) = [c for c in s.full_cells if set(c.vertices) == set(cell_vertices)]
    return dual_vertex_coordinates(fs, cell)


def test_dual_vertex_line():
    fs = polys("0+x+y")
    assert _vertex(fs, [(0, 0), (1, 0), (0, 1)]) == (0, 0)


def test_dual_vertex_square_split():
    fs = polys("0+x+y+(-1)xy")
    x = _vertex(fs, [(0, 0), (1, 0), (0, 1)])
    assert x == (0, 0)
    # the xy-term is strictly below at that point
    assert -1 + x[0] + x[1] < 0


def test_dual_vertex_two_segments():
    fs = polys("0+x", "0+y")
    assert _vertex(fs, [(0, 0), (1, 0), (0, 1), (1, 1)]) == (0, 0)


def test_translated_and_negated(curve_f):
    g = curve_f.translated((1, 0))
    assert g.terms[(2, 0)] == 99
    assert curve_f.negated().negated() == curve_f


def test_hashable():
    assert len({parse_tropical_polynomial(F_TEXT, 2), parse_tropical_polynomial(F_TEXT, 2)}) == 1
    assert isinstance(parse_tropical_polynomial("0"), TropicalPolynomial)
