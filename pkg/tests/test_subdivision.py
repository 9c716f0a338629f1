from fractions import Fraction

import pytest

from tropint.polytope import euclidean_volume
from tropint.subdivision import (
    MAX_RETRIES,
    PerturbationError,
    cell_faces,
    is_transversal,
    perturb_lifts,
    privileged_subdivision,
)
from tropint.mixed_volume import mixed_volume_ie
from tropint.tropical import dual_vertex_coordinates, evaluate, parse_tropical_polynomial

from conftest import polys


def _vertex_sets(cells):
    return {frozenset(c.vertices) for c in cells}


def test_square_split_along_antidiagonal():
    s = privileged_subdivision(polys("0+x+y+(-1)xy"))
    assert _vertex_sets(s.full_cells) == {
        frozenset({(0, 0), (1, 0), (0, 1)}),
        frozenset({(1, 0), (0, 1), (1, 1)}),
    }


def test_flat_lift_single_cell():
    s = privileged_subdivision(polys("0+x+y+xy+x^2"))
    assert len(s.full_cells) == 1
    assert set(s.full_cells[0].vertices) == set(s.total_polytope.vertices)


def test_two_segments_single_mixed_cell():
    s = privileged_subdivision(polys("0+x", "0+y"))
    (cell,) = s.full_cells
    assert cell.type_vector == (1, 1)
    assert cell.is_mixed
    assert not cell.on_boundary
    assert is_transversal(s)


def test_cell_faces_of_simplex():
    s = privileged_subdivision(polys("0+x+y+z"))
    facets = cell_faces(s, 2)
    assert len(facets) == 4
    assert all(c.on_boundary for c in facets)
    assert len(cell_faces(s, 1)) == 6 and len(cell_faces(s, 0)) == 4


def test_cell_faces_square():
    s = privileged_subdivision(polys("0+x", "0+y"))
    (sq,) = cell_faces(s, 2)
    assert not sq.on_boundary
    assert len(cell_faces(s, 1)) == 4
    assert all(c.on_boundary for c in cell_faces(s, 1))


def test_perturbed_planes_cell_count():
    fs = perturb_lifts(polys("0+x+y+z", "0+x+y+z"), seed=0)
    s = privileged_subdivision(fs)
    assert is_transversal(s)
    # mixed full cells are dual to the vertices of the tropical line: MV(D3, D3, 2D3) = 2
    mixed = [c for c in s.full_cells if c.is_mixed]
    assert len(mixed) == 2
    assert sum(euclidean_volume(c.cell_polytope) for c in s.full_cells) == Fraction(8, 6)


def test_transversality_examples():
    assert is_transversal(privileged_subdivision(polys("0+x", "0+y")))
    rep = is_transversal(privileged_subdivision(polys("0+x+y", "0+x+y")))
    assert not rep
    assert rep.cell is not None
    assert "dimension" in rep.describe()


def test_single_polynomial_transversal():
    fs = perturb_lifts(polys("0+x+y+x^2+xy+y^2"), seed=3)
    s = privileged_subdivision(fs)
    assert is_transversal(s)
    assert all(c.dim == 2 and c.type_vector == (2,) for c in s.full_cells)


def test_zero_lifts_on_conic_get_triangulated():
    fs = perturb_lifts(polys("0+x+y+x^2+xy+y^2"), seed=0)
    s = privileged_subdivision(fs)
    assert all(sum(c.type_vector) == 2 for c in s.full_cells)
    assert sum(euclidean_volume(c.cell_polytope) for c in s.full_cells) == 2


def test_generic_input_unchanged(curve_f):
    before = _vertex_sets(privileged_subdivision([curve_f]).full_cells)
    after = _vertex_sets(privileged_subdivision(perturb_lifts([curve_f], seed=5)).full_cells)
    assert before == after


def test_perturbation_reproducible():
    fs = polys("0+x+y+z", "0+x+y+z")
    assert perturb_lifts(fs, seed=11) == perturb_lifts(fs, seed=11)
    assert perturb_lifts(fs, seed=11) != perturb_lifts(fs, seed=12)


def test_perturbation_small():
    fs = polys("0+x+y+z", "0+x+y+z")
    for f, g in zip(fs, perturb_lifts(fs, seed=2)):
        assert all(abs(g.terms[a] - c) < Fraction(1, 2**16) for a, c in f.terms.items())


def test_retry_limit_reported(monkeypatch):
    # generic lifts always refine to a fine mixed subdivision, so force the failure
    import tropint.subdivision as sub

    monkeypatch.setattr(sub, "is_transversal", lambda s, check_subsets=True: sub.TransversalityReport(False))
    with pytest.raises(PerturbationError, match="3 retries"):
        perturb_lifts(polys("0+x", "0+y"), seed=0, max_retries=3)


def test_counts_independent_of_seed():
    fs = polys("0+x+y+z+x^2", "0+x+y+z")
    vals = set()
    for seed in (0, 1, 2):
        s = privileged_subdivision(perturb_lifts(fs, seed=seed))
        vals.add(sum(1 for c in s.full_cells if c.is_mixed))
    assert vals == {mixed_volume_ie([s.polytopes[0], s.polytopes[1], s.total_polytope])}


def test_volumes_add_up(curve_f, curve_g):
    s = privileged_subdivision([curve_f, curve_g])
    assert sum(euclidean_volume(c.cell_polytope) for c in s.full_cells) == euclidean_volume(s.total_polytope)


def test_dual_vertices_are_ties(curve_f):
    s = privileged_subdivision([curve_f])
    for c in s.full_cells:
        _, arg = evaluate(curve_f, dual_vertex_coordinates([curve_f], c))
        assert arg == {a for a in curve_f.terms if c.cell_polytope.contains(a)} & arg
        assert set(c.vertices) <= arg


def test_mismatched_variables():
    with pytest.raises(ValueError):
        privileged_subdivision([parse_tropical_polynomial("0+x", 1), parse_tropical_polynomial("0+x+y", 2)])


def test_retry_constant():
    assert MAX_RETRIES == 32
