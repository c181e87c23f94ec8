import numpy as np
import pytest

from polyprod.graded_algebra import (
    PairData,
    PairDataError,
    PoincareSeries,
    VertexData,
    coefficients,
    cp_pair,
    d1s0,
    three_block_pair,
    homology_of_complex,
    invariant_factors,
    smith_normal_form,
    validate_pair_data,
)
from polyprod.graded_algebra.linalg import InvalidComplexError, rank, rational_rank


def test_snf_transforms():
    A = np.array([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], dtype=object)
    r = smith_normal_form(A, inverses=True)
    assert r.diagonal == [2, 6, 12]
    assert (r.U.dot(A).dot(r.V) == r.D).all()
    assert (r.U.dot(r.U_inv) == np.identity(3, dtype=object)).all()


def test_invariant_factors_and_rank():
    A = [[2, 0], [0, 3]]
    assert invariant_factors(A) == [1, 6]
    assert rank(A) == 2
    assert rank([[2, 0], [0, 4]], "F2") == 0
    assert rational_rank([[1, 2], [2, 4]]) == 1


def test_coefficient_parsing():
    assert coefficients("F5").p == 5
    assert coefficients("Q").name == "Q"
    with pytest.raises(ValueError):
        coefficients("F4")


def test_homology_detects_bad_complex():
    with pytest.raises(InvalidComplexError):
        homology_of_complex({0: [[1]], 1: [[1]]}, kind="cochain")


def test_homology_of_rp2_cells():
    # chain complex Z -2-> Z -0-> Z of RP^2
    H = homology_of_complex({2: [[2]], 1: [[0]]}, kind="chain")
    assert H[1].torsion == (2,) and H[2].rank == 0 and H[0].rank == 1


def test_series_arithmetic_and_printing():
    t = PoincareSeries.monomial(1)
    p = (1 + t) ** 2
    assert str(p) == "1+2t+t^2"
    assert PoincareSeries.parse("t^9+t^11+3t^12") == "t^9+t^11+3t^12"
    assert str(PoincareSeries({-1: 1, 0: -2})) == "t^-1-2"
    assert p.at(-1) == 0
    assert PoincareSeries.parse("1+2t^3+t^6").to_tex() == "1+2t^{3}+t^{6}"


def test_presets_validate():
    for pd in (d1s0(), three_block_pair(), cp_pair(3)):
        assert validate_pair_data(pd).ok, pd


def test_example_data_shape():
    v = three_block_pair().vertex(1, 3)
    assert v.E.labels() == ["e2"] and v.B.labels() == ["1", "b4"] and v.C.labels() == ["c6"]
    assert v.W.degree("w3") == 3


def test_validation_reports_problems():
    bad = VertexData.build(E=[("e", 1)], W=[("w", 3)], delta={"e": "w"})
    assert any("degree" in s for s in bad.issues())
    nounit = VertexData.build(B=[("b", 2)])
    assert any("unit" in s for s in nounit.issues())
    with pytest.raises(PairDataError):
        PairData.from_json({"E": [], "bogus": 1})


def test_json_roundtrip_and_commutativity_fill():
    pd = cp_pair(2)
    back = PairData.from_json(pd.to_json())
    v = back.vertex(1, 2)
    assert v.mulX("v", "v") == {"v^2": 1}
    assert back.issues() == []


def test_max_degree_rejects_large_generators():
    v = VertexData.build(C=[("c", 6)], max_degree=4)
    assert v.issues()
