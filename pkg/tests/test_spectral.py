from fractions import Fraction

import pytest

from polyprod.graded_algebra import cp_pair, d1s0, d2s1, disk_wedge_pair, three_block_pair, sphere_pair
from polyprod.simplicial import SimplicialComplex, enumerate_complexes, validate
from polyprod.spectral import (
    SpectralConsistencyError,
    SpectralSequence,
    block_pairing,
    build_e1,
    coboundary,
    filtration_steps,
    growth_tables,
    run_to_einfty,
    split_by_subcomplex,
    turn_page,
    variant_name,
)

WORKED = validate([[1, 2], [1, 3]], 3)


def test_variant_names():
    assert variant_name("Z") == "Z" and variant_name("zhat") == "Zhat"
    with pytest.raises(ValueError):
        variant_name("W")


def test_e1_counts_three_points():
    e1 = build_e1(validate([[1], [2], [3]], 3), d1s0(), "Zhat")
    assert [c.label for c in e1.classes] == [
        "e_0 ⊗ e_0 ⊗ e_0", "w_1 ⊗ e_0 ⊗ e_0", "e_0 ⊗ w_1 ⊗ e_0", "e_0 ⊗ e_0 ⊗ w_1"]
    assert [(c.s, c.t) for c in e1.classes] == [(0, 0), (1, 1), (2, 1), (3, 1)]
    assert len(e1.differentials) == 1


def test_coboundary_sign():
    K = validate([[1, 2]], 2)
    d = coboundary({("e_0", "e_0"): 1}, K, d1s0())
    assert d == {("w_1", "e_0"): 1, ("e_0", "w_1"): 1}
    d = coboundary({("w_1", "e_0"): 1}, K, d1s0())
    assert d == {("w_1", "w_1"): -1}


def test_example_totals():
    assert run_to_einfty(WORKED, three_block_pair(), "Zhat").total == "t^9+t^11+3t^12+5t^14+2t^16"
    assert run_to_einfty(SimplicialComplex.polygon(4), d2s1(), "Z").total == "1+2t^3+t^6"


@pytest.mark.parametrize("K,pd,z,zhat", [
    # [DERIVED] products of wedges / independent Kunneth counts
    (SimplicialComplex.polygon(4), sphere_pair(3), "1+4t^3+4t^6", "0"),
    (SimplicialComplex.polygon(4), cp_pair(2), "1+4t^2+8t^4+8t^6+4t^8", "0"),
    (SimplicialComplex.polygon(4), disk_wedge_pair(), "1+6t^3+4t^4+9t^6+12t^7+4t^8", "t^6+4t^7+4t^8"),
    (validate([[1], [2]], 2), d2s1(), "1+t^3", "t^3"),
    (SimplicialComplex.simplex_boundary(3), d2s1(), "1+t^5", "t^5"),
])
def test_frozen_totals(K, pd, z, zhat):
    assert run_to_einfty(K, pd, "Z").total == z
    assert run_to_einfty(K, pd, "Zhat").total == zhat


def test_pages_square_zero_and_turn():
    ss = SpectralSequence(SimplicialComplex.polygon(4), d2s1(), "Z")
    pages = ss.pages()
    assert all(p.check_square_zero() for p in pages)
    assert pages[-1].total() == ss.total(None)
    assert len(pages) == ss.max_length() + 1


def test_literal_check_small():
    for K in enumerate_complexes(3):
        run_to_einfty(K, d1s0(), "Z", check=True)
        run_to_einfty(K, disk_wedge_pair(), "Zhat", check=True)


def test_block_pairing_lengths():
    bp = block_pairing(validate([[1], [2], [3]], 3), (1, 2, 3), ())
    lengths = sorted(p[1] for p in bp.partner.values() if p[3])
    assert lengths == [1]
    assert len(bp.essential) == 2


def test_split_by_subcomplex():
    ss = SpectralSequence(SimplicialComplex.polygon(4), d1s0(), "Z")
    pieces = split_by_subcomplex(ss.page(1))
    assert sum(len(p.classes) for p in pieces.values()) == len(ss.page(1).classes)
    assert len(pieces) == 16


def test_split_needs_z():
    ss = SpectralSequence(WORKED, d1s0(), "Zhat")
    with pytest.raises(ValueError):
        split_by_subcomplex(ss.page(1))


def test_filtration_steps():
    steps = filtration_steps(SimplicialComplex.full_simplex(3), 3)
    assert [len(K) for K in steps] == [4, 5, 6, 7, 8]


def test_growth_tables_d2():
    tables = growth_tables(filtration_steps(SimplicialComplex.full_simplex(3), 3), d1s0())
    assert [T.differentials for T in tables] == [[(0, 1)], [(2, 4)], [(3, 5)], [], [(6, 7)]]


def test_coefficients_are_units_for_d1s0():
    ss = SpectralSequence(SimplicialComplex.polygon(5), d1s0(), "Z")
    for p in ss.pages():
        assert all(abs(c) == Fraction(1) for _, _, c in p.differentials)
