"""Exact-arithmetic toolkit for banded totally positive matrices.

Everything is computed over arbitrary-precision rationals: minor-based
positivity criteria, bidiagonal factorizations and their cyclic (Darboux)
permutations, recursion polynomial families with step-line degree checks,
and certified real spectra with discrete mixed biorthogonality.
"""

from .band import (
    BandedMatrix,
    DeltaMinorReport,
    band_profile,
    delta_minors,
    enumerate_nontrivial_contiguous,
    enumerate_nontrivial_initial,
    is_trivial_submatrix,
    nontrivial_test_by_order,
)
from .core import (
    DenseMatrix,
    IndexSeq,
    Rational,
    dispersion,
    minor,
    seq,
    seq_leq,
    submatrix,
    translate,
)
from .criteria import (
    CriterionVerdict,
    PinkusTriple,
    find_pinkus_submatrices,
    is_BTP_contiguous,
    is_BTP_delta,
    is_BTP_initial,
    is_BTP_oracle,
    is_InTN_gasca_pena,
    is_TN_bruteforce,
    is_TN_cryer,
    is_TP_fekete,
    is_lower_triangular_tp,
    is_oscillatory_price,
    is_upper_triangular_tp,
    oscillatory_power_exponent,
)
from .errors import (
    BandedTPError,
    CapacityError,
    ContractViolationError,
    MultipleEigenvalueError,
    NotBTPError,
    ParseError,
    PreconditionError,
    SpectralInconsistencyError,
)
from .fuzz import FuzzReport, fuzz_equivalence
from .pbf import (
    PBFactorization,
    darboux,
    lambda_matrix,
    pbf_compose,
    pbf_factorize,
    random_pbf,
    upsilon_matrix,
)
from .recpoly import (
    InitialConditions,
    Polynomial,
    RecursionTable,
    build_recursion_table,
    check_normality,
    degree_bound,
    leading_block,
    leading_block_signs,
    left_recursion,
    make_tp_initial_conditions,
    right_recursion,
)
from .spectral import (
    DiscreteWeights,
    SpectrumReport,
    char_poly,
    discrete_biorthogonality,
    eigen_consistency,
    eigenvalues_hp,
    favard_initial_conditions,
    positivity_audit,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
