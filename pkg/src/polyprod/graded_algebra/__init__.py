"""Exact linear algebra, Laurent series and strong freeness pair data."""
from .linalg import (
    QQ,
    ZZ,
    Coefficients,
    DegreeCohomology,
    HomologyGroup,
    InvalidComplexError,
    SNFResult,
    SparseMatrix,
    coefficients,
    cohomology_with_representatives,
    homology_of_complex,
    invariant_factors,
    rank,
    smith_normal_form,
)
from .pairdata import (
    UNIT,
    GradedBasis,
    PairData,
    PairDataError,
    ValidationReport,
    VertexData,
    cp_pair,
    d1s0,
    d2s1,
    disk_wedge_pair,
    three_block_pair,
    sphere_pair,
    validate_pair_data,
)
from .series import PoincareSeries, poincare_series
