"""Real moment angle complexes of polygons are closed orientable surfaces.

For the boundary of an n-gon we compare the genus formula with the ranks of
H*(C_K), and for small n with the cube oracle.
"""
import time

from polyprod import SimplicialComplex, ck_cohomology, euler_characteristic, genus_ngon
from polyprod.cube_oracle import oracle_cohomology

for n in range(4, 11):
    K = SimplicialComplex.polygon(n)
    t0 = time.perf_counter()
    betti = ck_cohomology(K).betti()
    dt = time.perf_counter() - t0
    g = genus_ngon(K)
    line = f"n={n:2}  genus {g:5}  chi {euler_characteristic(K):6}  betti {betti}  ({dt:.2f}s)"
    if n <= 7:
        oracle = oracle_cohomology(K)
        line += "  oracle " + str([oracle[k].rank for k in sorted(oracle)])
    print(line)
