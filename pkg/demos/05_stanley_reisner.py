"""When every E_i vanishes the spectral sequence collapses and the answer is
a Stanley-Reisner style quotient of H*(X_1 x ... x X_m).
"""
from polyprod import SimplicialComplex, SpectralSequence, poincare, sr_presentation, validate
from polyprod.graded_algebra import cp_pair

data = cp_pair(3)
for K in (validate([[1], [2]], 2), SimplicialComplex.simplex_boundary(3), SimplicialComplex.polygon(4)):
    sr = sr_presentation(K, data)
    print("facets", K.facets_sorted(), " relations on", [list(t) for t, _ in sr.relations])
    print("  quotient by counting:    ", sr.quotient_series())
    print("  quotient by elimination: ", sr.quotient_series_by_elimination())
    print("  summands:                ", poincare(K, data, "Z"))
    print("  longest differential:    ", SpectralSequence(K, data, "Z").max_length())
