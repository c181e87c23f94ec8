"""Property tests over random complexes and cochains."""
import itertools
import random

from hypothesis import given
from hypothesis import strategies as st

from conftest import complexes
from polyprod.cube_oracle import oracle_cohomology
from polyprod.decomposition import (
    CohomologyRing,
    decompose,
    poincare,
    reduced_cohomology,
    sr_presentation,
)
from polyprod.graded_algebra import (
    PoincareSeries,
    cp_pair,
    d1s0,
    d2s1,
    disk_wedge_pair,
    three_block_pair,
    poincare_series,
    sphere_pair,
)
from polyprod.realmac_chain import (
    CKComplex,
    cai_product,
    ck_cohomology,
    ck_differential,
    euler_characteristic,
    random_cochain,
)
from polyprod.simplicial import lex_weight
from polyprod.spectral import SpectralSequence, run_to_einfty

PRESETS = [d1s0, d2s1, three_block_pair, disk_wedge_pair, lambda: sphere_pair(2), lambda: cp_pair(2)]
preset = st.sampled_from(PRESETS).map(lambda f: f())
variant = st.sampled_from(["Z", "Zhat"])


@given(complexes())
def test_faces_closed_and_weights_injective(K):
    for f in K.faces:
        for i in range(len(f)):
            assert f[:i] + f[i + 1:] in K.faces
    ws = [lex_weight(f, K.m) for f in K.faces]
    assert len(set(ws)) == len(ws)


@given(complexes(max_m=4))
def test_ck_square_zero(K):
    X = CKComplex(K)
    for k in range(K.m):
        assert (X.differential(k + 1) @ X.differential(k)).is_zero()


@given(complexes(max_m=4))
def test_ck_matches_oracle(K):
    a = {k: (g.rank, g.torsion) for k, g in ck_cohomology(K).groups.items() if g.rank or g.torsion}
    b = {k: (g.rank, g.torsion) for k, g in oracle_cohomology(K).items() if g.rank or g.torsion}
    assert a == b


@given(complexes(max_m=5))
def test_euler_formula(K):
    assert euler_characteristic(K) == ck_cohomology(K).euler_characteristic()


@given(complexes(max_m=4), st.integers(0, 10 ** 6))
def test_cai_leibniz(K, seed):
    rng = random.Random(seed)
    for _ in range(5):
        p, q = rng.randint(0, 2), rng.randint(0, 2)
        x, y = random_cochain(K, p, rng), random_cochain(K, q, rng)
        lhs = ck_differential(cai_product(x, y, K), K)
        r1 = cai_product(ck_differential(x, K), y, K)
        r2 = cai_product(x, ck_differential(y, K), K)
        rhs = dict(r1)
        for w, c in r2.items():
            rhs[w] = rhs.get(w, 0) + (-1) ** p * c
        assert lhs == {w: c for w, c in rhs.items() if c}


@given(complexes(max_m=4), preset, variant)
def test_spectral_matches_decomposition(K, pd, v):
    assert run_to_einfty(K, pd, v).total == poincare(K, pd, v)


@given(complexes(max_m=4), preset)
def test_z_splits_over_full_subcomplexes(K, pd):
    total = PoincareSeries()
    for k in range(K.m + 1):
        for I in itertools.combinations(range(1, K.m + 1), k):
            total = total + SpectralSequence(K.full_subcomplex(I), pd, "Zhat", coords=I).total(None)
    assert total == poincare(K, pd, "Z")


@given(complexes(max_m=4), preset)
def test_pages_square_zero(K, pd):
    for page in SpectralSequence(K, pd, "Zhat").pages():
        assert page.check_square_zero()


@given(complexes(max_m=3))
def test_literal_pages_agree(K):
    run_to_einfty(K, disk_wedge_pair(), "Z", check=True)


@given(complexes(max_m=4), st.sampled_from([lambda: sphere_pair(3), lambda: cp_pair(2)]))
def test_sr_collapse(K, mk):
    pd = mk()
    ss = SpectralSequence(K, pd, "Z")
    assert ss.max_length() == 0
    sr = sr_presentation(K, pd)
    assert sr.quotient_series() == sr.quotient_series_by_elimination() == poincare(K, pd, "Z")


@given(complexes(max_m=4), preset)
def test_wedge_summand_count(K, pd):
    D = decompose(K, pd, "Zhat")
    vd = pd.for_m(K.m)
    link = sum(g.rank for g in reduced_cohomology(K).values())
    expected = link
    for v in vd:
        expected *= len(v.E)
    got = sum(s.dims.total() for s in D.summands if s.I == ())
    assert got == expected


@given(complexes(max_m=3), st.sampled_from([d1s0, d2s1, three_block_pair, disk_wedge_pair]), st.integers(0, 10 ** 6))
def test_ring_associative_and_commutative(K, mk, seed):
    R = CohomologyRing(K, mk(), "Z")
    if not len(R):
        return
    rng = random.Random(seed)
    for _ in range(10):
        a, b, c = (R.element(rng.randrange(len(R))) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        da, db = (R.basis[next(iter(x.coeffs))].degree for x in (a, b))
        assert a * b == (b * a).scale((-1) ** (da * db))
    assert R.series() == poincare(K, R.data, "Z")


@given(st.lists(st.integers(0, 6), max_size=6), st.lists(st.integers(0, 6), max_size=6))
def test_poincare_series_is_multiplicative(a, b):
    pa = poincare_series([(str(i), d) for i, d in enumerate(a)])
    pb = poincare_series([(str(i), d) for i, d in enumerate(b)])
    prod = poincare_series([("x", x + y) for x in a for y in b])
    assert pa * pb == prod
