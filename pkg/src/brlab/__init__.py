"""brlab: certified lower bounds on the border rank of 3-tensors.

Builds wedge-power flattenings of sparse exact tensors (in particular the
matrix multiplication tensor and its projection through binary-form
multiplication), computes their ranks over Q or prime fields, and packages
the results as auditable bound certificates cross-validated against
representation-theoretic kernel formulas.
"""

from .bounds import (
    BoundCertificate,
    bound_classical,
    bound_formula_theorem1,
    bound_koszul,
    bound_matmul_restricted,
    compare_table,
    corollary_2nl,
    lickteig_square,
)
from .binaryforms import (
    BinaryForm,
    RestrictedSetup,
    dual_surjectivity_check,
    restricted_koszul,
    restriction_projector,
)
from .errors import BrlabError
from .exterior import (
    KoszulMatrix,
    SubsetIndex,
    enumerate_subsets,
    koszul_flattening,
    wedge_insert,
)
from .rank_engine import (
    ExactQ,
    MultiPrime,
    RankResult,
    SparseMatrix,
    rank_certified,
    rank_exact_q,
    rank_mod_p,
    read_matrix,
    write_matrix,
)
from .repcomb import (
    IsotypicSummand,
    cauchy_wedge,
    conjugate,
    dim_schur,
    equation_degree,
    kernel_dim_formula,
    kernel_dim_pieri,
    kernel_modules,
    pieri_add_box,
)
from .scalars import (
    DEFAULT_CERTIFICATION_PRIMES,
    FieldTag,
    PrimeFieldElement,
    Rational,
    certification_primes,
    field_inverse,
    normalize,
)
from .tensor import (
    FactorMap,
    Tensor3,
    add_tensors,
    flatten_classical,
    load_tensor,
    matmul_tensor,
    project_factor_A,
    rank_one_tensor,
    save_tensor,
    scale_tensor,
)

__version__ = "0.1.0"

__all__ = [
    "BoundCertificate",
    "BinaryForm",
    "BrlabError",
    "DEFAULT_CERTIFICATION_PRIMES",
    "ExactQ",
    "FactorMap",
    "FieldTag",
    "IsotypicSummand",
    "KoszulMatrix",
    "MultiPrime",
    "PrimeFieldElement",
    "RankResult",
    "Rational",
    "RestrictedSetup",
    "SparseMatrix",
    "SubsetIndex",
    "Tensor3",
    "add_tensors",
    "bound_classical",
    "bound_formula_theorem1",
    "bound_koszul",
    "bound_matmul_restricted",
    "cauchy_wedge",
    "certification_primes",
    "compare_table",
    "conjugate",
    "corollary_2nl",
    "dim_schur",
    "dual_surjectivity_check",
    "enumerate_subsets",
    "equation_degree",
    "field_inverse",
    "flatten_classical",
    "kernel_dim_formula",
    "kernel_dim_pieri",
    "kernel_modules",
    "koszul_flattening",
    "lickteig_square",
    "load_tensor",
    "matmul_tensor",
    "normalize",
    "pieri_add_box",
    "project_factor_A",
    "rank_certified",
    "rank_exact_q",
    "rank_mod_p",
    "rank_one_tensor",
    "read_matrix",
    "restricted_koszul",
    "restriction_projector",
    "save_tensor",
    "scale_tensor",
    "wedge_insert",
    "write_matrix",
]
