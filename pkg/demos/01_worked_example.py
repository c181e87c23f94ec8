"""Three vertices, two edges, and pair data with E, B and C all nonzero.

Walks through the summand decomposition of the smash product and checks it
against the spectral sequence.
"""
from polyprod import decompose, run_to_einfty, validate
from polyprod.graded_algebra import three_block_pair

K = validate([[1, 2], [1, 3]], 3)
data = three_block_pair()
v = data.vertex(1, 3)
print("E =", v.E.labels(), " B =", v.B.labels(), " C =", v.C.labels())

# every (I, sigma) with sigma inside I; the link N(I, sigma) lives on [m] - I
D = decompose(K, data, "Zhat", check=True)
for s in D.summands:
    print(f"I={list(s.I)!s:10} sigma={list(s.sigma)!s:7} link betti {s.link_betti}  ->  {s.dims}")
print("Poincare series:", D.poincare)

# the E_infinity page of the lex filtration has the same size
print("E_inf total:   ", run_to_einfty(K, data, "Zhat").total)
