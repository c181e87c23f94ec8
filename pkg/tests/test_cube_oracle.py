import pytest

from polyprod.cube_oracle import CapExceeded, CubicalComplex, oracle_cohomology
from polyprod.realmac_chain import ck_cohomology
from polyprod.simplicial import SimplicialComplex, enumerate_complexes, validate


def ranks(groups):
    return {k: (g.rank, tuple(g.torsion)) for k, g in groups.items() if g.rank or g.torsion}


def test_two_points_is_circle():
    assert ranks(oracle_cohomology(validate([[1], [2]], 2))) == {0: (1, ()), 1: (1, ())}


def test_boundary_of_triangle_is_sphere():
    assert ranks(oracle_cohomology(SimplicialComplex.simplex_boundary(3))) == {0: (1, ()), 2: (1, ())}


def test_ghost_vertex_doubles_components():
    assert ranks(oracle_cohomology(validate([[1, 2]], 3))) == {0: (2, ())}


def test_boundary_squares_to_zero():
    X = CubicalComplex(SimplicialComplex.polygon(5))
    for k in range(1, 3):
        assert (X.boundary(k) @ X.boundary(k + 1)).is_zero()


def test_cell_count():
    X = CubicalComplex(SimplicialComplex.polygon(4))
    assert {k: len(v) for k, v in X.cells.items()} == {0: 16, 1: 32, 2: 16}


def test_cap(monkeypatch):
    monkeypatch.setenv("POLYPROD_MAX_M", "3")
    with pytest.raises(CapExceeded):
        oracle_cohomology(SimplicialComplex.polygon(4))


@pytest.mark.parametrize("coeffs", ["Z", "F2", "F3", "Q"])
def test_agrees_with_ck_small(coeffs):
    for K in enumerate_complexes(3):
        a = ranks(ck_cohomology(K, coeffs).groups)
        b = ranks(oracle_cohomology(K, coeffs))
        assert a == b, K
