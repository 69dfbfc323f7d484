"""Exact linear algebra behind commuting-family dimension bounds.

Builds generated matrix algebras, commutants and Jordan types over the
rationals and checks the associated dimension bounds as exact integer
inequalities.
"""

from .algebra_closure import (
    AlgebraBasis,
    commuting_bound_check,
    compare_hecke_bounds,
    crossover_index,
    generated_algebra_basis,
    hecke_bound_bernstein,
    hecke_bound_new,
    integrality_probe,
    max_irrep_dimension,
    monomial_span_dimension,
    optimal_split,
    rep_dim_bound_check,
    verify_commuting_algebra_bound,
)
from .commutant import (
    CommutantBasis,
    commutant_basis,
    commutant_dimension_formula,
    shifted_commutant_dimension,
    verify_shifted_commutant_bound,
)
from .errors import (
    AdmissibilityError,
    DimensionMismatch,
    MatrixFormatError,
    NotCommuting,
    NotNilpotent,
    NotSplitOverRationals,
    OracleMismatch,
    OverflowGuard,
    SizeCapExceeded,
)
from .exact_core import (
    CommutingFamily,
    Matrix,
    Subspace,
    devectorize,
    kernel_basis,
    rref,
    span_dimension,
    vectorize,
)
from .families import (
    FamilySpec,
    TightnessRecord,
    build_family,
    kronecker_shift_family,
    polynomial_family,
    random_commuting_family,
    schur_family,
    tightness_search,
)
from .report import BoundReport
from .spectral import (
    JointBlock,
    Partition,
    is_nilpotent,
    joint_spectral_decomposition,
    jordan_matrix,
    jordan_type,
    nilpotent_reduction,
    partitions,
)

__version__ = "0.1.0"
