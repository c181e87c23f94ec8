"""Add the faces of the 2-simplex one at a time and watch the pages.

Each table lists, by filtration degree, the classes that are still alive and
the new E_1 classes; differentials are reported as filtration pairs.
"""
from polyprod import SimplicialComplex, filtration_steps, growth_tables
from polyprod.cli import growth_table_text
from polyprod.graded_algebra import d1s0

steps = filtration_steps(SimplicialComplex.full_simplex(3), start=3)
for K, table in zip(steps, growth_tables(steps, d1s0())):
    print("K facets:", K.facets_sorted())
    print(growth_table_text(table))
    print()
