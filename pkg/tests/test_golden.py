"""Subdivisions of the two worked plane curves, frozen as a golden census."""

import json
import os
from pathlib import Path

import pytest

from tropint.subdivision import privileged_subdivision
from tropint.tropical import tropical_product

from oracles import lattice_length, planar_upper_cells

GOLDEN = Path(__file__).parent / "golden" / "plane_curves.json"


def _snapshot(curve_f, curve_g):
    out = {}
    for name, fs in (("f", [curve_f]), ("g", [curve_g]), ("f,g", [curve_f, curve_g])):
        s = privileged_subdivision(fs)
        out[name] = {
            "polynomials": [f.to_text() for f in fs],
            "census": s.census(),
            "full_cells": sorted(sorted(list(v) for v in c.vertices) for c in s.full_cells),
        }
    return out


def test_golden_census(curve_f, curve_g):
    snap = _snapshot(curve_f, curve_g)
    if os.environ.get("TROPINT_UPDATE_GOLDEN"):
        GOLDEN.write_text(json.dumps(snap, indent=2) + "\n")
    assert snap == json.loads(GOLDEN.read_text())


@pytest.mark.parametrize("which", ["f", "g"])
def test_single_curves_match_oracle(which, curve_f, curve_g):
    h = curve_f if which == "f" else curve_g
    cells = {frozenset(c.vertices) for c in privileged_subdivision([h]).full_cells}
    assert cells == planar_upper_cells(h.terms)


def test_f_cells_and_edge_lengths(curve_f):
    s = privileged_subdivision([curve_f])
    assert {frozenset(c.vertices) for c in s.full_cells} == {
        frozenset({(0, 2), (0, 4), (2, 0)}),
        frozenset({(0, 2), (1, 0), (2, 0)}),
        frozenset({(0, 4), (2, 0), (3, 1)}),
    }
    interior = {tuple(sorted(e.vertices)): lattice_length(*sorted(e.vertices)) for e in s.cells(1) if not e.on_boundary}
    assert interior == {((0, 2), (2, 0)): 2, ((0, 4), (2, 0)): 2}
    rays = sorted(lattice_length(*sorted(e.vertices)) for e in s.cells(1) if e.on_boundary)
    assert rays == [1, 1, 1, 2, 3]


def test_product_subdivision_equals_pair(curve_f, curve_g):
    pair = privileged_subdivision([curve_f, curve_g])
    prod = privileged_subdivision([tropical_product([curve_f, curve_g])])
    for d in range(3):
        assert {frozenset(c.vertices) for c in pair.cells(d)} == {frozenset(c.vertices) for c in prod.cells(d)}
    assert {frozenset(c.vertices) for c in prod.full_cells} == planar_upper_cells(
        tropical_product([curve_f, curve_g]).terms
    )
