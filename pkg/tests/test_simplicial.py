import pytest

from polyprod.simplicial import (
    ComplexError,
    SimplicialComplex,
    corpus,
    enumerate_complexes,
    face_of_weight,
    faces_in_lex_order,
    lex_weight,
    validate,
)


def test_lex_weight_three_vertices():
    order = faces_in_lex_order(3)
    assert order == ((), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3))
    assert [lex_weight(f, 3) for f in order] == list(range(8))
    assert face_of_weight(5, 3) == (1, 3)


def test_weights_are_ambient_not_compacted():
    K = validate([[2, 3]], 3)
    assert lex_weight((2, 3), K.m) == 6
    assert lex_weight((3,), 4) == 3
    assert lex_weight((1, 2), 4) == 5


def test_closure_and_facets():
    K = validate([[1, 2, 3]], 4)
    assert len(K) == 8
    assert K.facets_sorted() == [(1, 2, 3)]
    assert K.ghost_vertices() == [4]
    assert K.f_vector() == [1, 3, 3, 1]


def test_validate_rejects_bad_vertex():
    with pytest.raises(ComplexError):
        validate([[1, 4]], 3)


def test_polygon_and_minimal_nonfaces():
    P = SimplicialComplex.polygon(5)
    assert P.is_ngon()
    assert sorted(P.minimal_nonfaces()) == [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)]
    assert SimplicialComplex.simplex_boundary(3).minimal_nonfaces() == [(1, 2, 3)]
    assert not validate([[1, 2], [2, 3]], 3).is_ngon()


def test_link_complement_maximal_gives_empty_face():
    K = validate([[1, 2], [1, 3]], 3)
    assert K.link_complement((1, 2, 3), (1, 2)).faces == {()}
    N = K.link_complement((1,), ())
    assert N.faces == {(), (2,), (3,)}
    with pytest.raises(ComplexError):
        K.link_complement((1,), (2, 3))


def test_full_subcomplex_keeps_ambient_m():
    K = SimplicialComplex.polygon(4)
    KI = K.full_subcomplex((1, 3))
    assert KI.m == 4 and KI.faces == {(), (1,), (3,)}


def test_enumeration_counts():
    # labelled complexes on at most m vertices, ghosts allowed, {()} included
    assert [len(enumerate_complexes(m)) for m in (1, 2, 3, 4)] == [2, 5, 19, 167]


def test_corpus_shape():
    C = corpus()
    assert len(C) == 193 + 200
    assert {K.m for K in C[193:]} == {5, 6}


def test_json_roundtrip():
    K = SimplicialComplex.polygon(6)
    assert SimplicialComplex.from_json(K.to_json()) == K
    with pytest.raises(ComplexError):
        SimplicialComplex.from_json({"facets": []})
