import xml.etree.ElementTree as ET

import pytest

from tropint.draw import curve_geometry, render_svg
from tropint.tropical import parse_tropical_polynomial

SVG = "{http://www.w3.org/2000/svg}"


def _elements(svg, cls):
    root = ET.fromstring(svg)
    return [e for e in root.iter() if e.get("class") == cls]


def test_line_geometry():
    geo = curve_geometry(parse_tropical_polynomial("0+x+y"))
    assert geo["vertices"] == [(0, 0)]
    assert {r["direction"] for r in geo["rays"]} == {(0, -1), (-1, 0), (1, 1)}
    assert geo["edges"] == []


def test_monomial_is_empty():
    svg = render_svg(parse_tropical_polynomial("3xy", 2))
    root = ET.fromstring(svg)
    assert root.tag == SVG + "svg"
    assert not _elements(svg, "vertex") and not _elements(svg, "ray")


def test_parallel_lines():
    geo = curve_geometry(parse_tropical_polynomial("0+x^2+1x", 2))
    assert sorted(line["point"][0] for line in geo["lines"]) == [-1, 1]
    assert len(_elements(render_svg(parse_tropical_polynomial("0+x^2+1x", 2)), "line")) == 2


def test_sextic_curve(curve_f):
    geo = curve_geometry(curve_f)
    assert len(geo["vertices"]) == 3
    assert sorted(e["weight"] for e in geo["edges"]) == [2, 2]
    assert sorted(r["weight"] for r in geo["rays"]) == [1, 1, 1, 2, 3]
    svg = render_svg(curve_f)
    widths = sorted(float(e.get("stroke-width")) for e in _elements(svg, "edge"))
    assert widths == [4.0, 4.0]


def test_rays_have_dashed_ends():
    svg = render_svg(parse_tropical_polynomial("0+x+y"))
    ends = _elements(svg, "ray-end")
    assert len(ends) == 3 and all(e.get("stroke-dasharray") for e in ends)
    assert not any(e.get("stroke-dasharray") for e in _elements(svg, "ray"))


def test_deterministic(curve_f):
    assert render_svg(curve_f) == render_svg(curve_f)


def test_viewport_clipping():
    f = parse_tropical_polynomial("0+x+y")
    svg = render_svg(f, viewport=(5, 5, 6, 6))
    # the vertex lies outside; only the diagonal ray crosses the box
    assert not _elements(svg, "vertex")
    assert len(_elements(svg, "ray")) == 1
    with pytest.raises(ValueError):
        render_svg(f, viewport=(1, 0, 0, 1))


def test_negated_view():
    geo_svg = render_svg(parse_tropical_polynomial("1+x+y"), negate=True)
    (v,) = _elements(geo_svg, "vertex")
    assert v.get("cx") == v.get("cy")


def test_needs_two_variables():
    with pytest.raises(ValueError):
        render_svg(parse_tropical_polynomial("0+x+y+z"))
