"""Products in the summand basis.

The 4-gon moment angle complex is S^3 x S^3, so the two degree 3 classes
multiply to a generator of degree 6.  On the pentagon the cup product
pairing in the middle degree of the genus 5 surface is unimodular.
"""
from polyprod import CohomologyRing, SimplicialComplex
from polyprod.graded_algebra import d1s0, d2s1, smith_normal_form

R = CohomologyRing(SimplicialComplex.polygon(4), d2s1(), "Z")
a, b = R.elements_of_degree(3)
print("basis:", [str(x) for x in R.basis])
print("a*b =", a * b, "   b*a =", b * a, "   a*a =", a * a)

P = CohomologyRing(SimplicialComplex.polygon(5), d1s0(), "Z")
h1 = P.elements_of_degree(1)
top = next(iter(P.elements_of_degree(2)[0].coeffs))
M = [[(x * y).coeffs.get(top, 0) for y in h1] for x in h1]
for row in M:
    print(" ".join(f"{c:2d}" for c in row))
print("invariant factors:", smith_normal_form(M).diagonal)
