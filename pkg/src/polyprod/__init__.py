"""Cohomology of polyhedral products and polyhedral smash products."""
from .graded_algebra import PairData, PoincareSeries, VertexData
from .simplicial import SimplicialComplex, lex_weight, validate
from .realmac_chain import ck_cohomology, cai_product, euler_characteristic, genus_ngon
from .cube_oracle import oracle_cohomology
from .spectral import SpectralSequence, run_to_einfty, growth_tables, filtration_steps
from .decomposition import CohomologyRing, decompose, maximal_subring, poincare, sr_presentation

__version__ = "0.1.0"

__all__ = [
    "CohomologyRing", "PairData", "PoincareSeries", "SimplicialComplex", "SpectralSequence",
    "VertexData", "cai_product", "ck_cohomology", "decompose", "euler_characteristic",
    "filtration_steps", "genus_ngon", "growth_tables", "lex_weight", "maximal_subring",
    "oracle_cohomology", "poincare", "run_to_einfty", "sr_presentation", "validate",
]
