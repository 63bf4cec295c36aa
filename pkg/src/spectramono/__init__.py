"""Exact spectra of Hermitian pair-labeled structures.

The package computes characteristic polynomials of Hermitian l2-structures
in exact rational arithmetic, decides k-spectral monomorphy by enumeration,
classifies monomorphic structures into their canonical shapes, and builds
and certifies the extremal objects behind the k = n - 3 case: doubly
regular tournaments, skew conference matrices and skew Hadamard matrices.
"""

from .charpoly import (
    RealPolynomial,
    char_poly,
    determinant,
    poly_x_squared_minus,
    principal_minor_sum,
    scaled_poly,
)
from .classify import (
    CanonicalReduction,
    Classification,
    CRepTransitive,
    IRepDominatedNonTransitive,
    IRepDRTHat,
    NotMonomorphic,
    RealConstant,
    c3_via_determinants,
    classify_k3,
    classify_k4,
    classify_mid_k,
    classify_n_minus_3,
    reduce_to_canonical_labels,
)
from .combinat import colex_subsets, subset_bitmask
from .constructions import (
    DeletionSpectraReport,
    DrtCertificate,
    HomogeneityReport,
    SignMatrix,
    SignValidationReport,
    closed_form_deletion_poly,
    drt_from_skew_hadamard,
    hat,
    i_weighted,
    is_doubly_regular,
    is_homogeneous,
    paley_tournament,
    pair_cycle_counts,
    skew_adjacency,
    skew_hadamard_from_drt,
    validate_sign_matrix,
    verify_deletion_spectra,
)
from .core import (
    ConstantRepresentationWarning,
    EquivalenceReport,
    HermitianStructure,
    Selector,
    Tournament,
    apply_selector,
    are_equivalent,
    c_representation,
    constant_structure,
    descending_score_order,
    first_three_cycle,
    i_representation,
    is_transitive,
    normalize_at,
    substructure,
    transitive_tournament,
)
from .documents import LoadedDocument, parse_document, serialize_document
from .errors import (
    ExactnessError,
    InputError,
    InvariantError,
    ModeMixError,
    NotTwoMonomorphicError,
    ReductionError,
    SpectramonoError,
    TheoremRangeError,
)
from .monomorphy import (
    DetConstancyReport,
    MonomorphyReport,
    WindowTransferReport,
    det_constancy,
    is_k_spectrally_monomorphic,
    monomorphy_profile,
    pouzet_transfer_check,
)
from .scalars import (
    APPROX,
    EXACT,
    GaussianScalar,
    get_eps,
    parse_scalar,
    rational,
    rational_sqrt,
    set_eps,
    two_square_root,
)

__version__ = "0.1.0"

__all__ = [
    "APPROX",
    "CanonicalReduction",
    "Classification",
    "ConstantRepresentationWarning",
    "CRepTransitive",
    "DeletionSpectraReport",
    "DetConstancyReport",
    "DrtCertificate",
    "EXACT",
    "EquivalenceReport",
    "ExactnessError",
    "GaussianScalar",
    "HermitianStructure",
    "HomogeneityReport",
    "IRepDominatedNonTransitive",
    "IRepDRTHat",
    "InputError",
    "InvariantError",
    "LoadedDocument",
    "ModeMixError",
    "MonomorphyReport",
    "NotMonomorphic",
    "NotTwoMonomorphicError",
    "RealConstant",
    "RealPolynomial",
    "ReductionError",
    "Selector",
    "SignMatrix",
    "SignValidationReport",
    "SpectramonoError",
    "TheoremRangeError",
    "Tournament",
    "WindowTransferReport",
    "apply_selector",
    "are_equivalent",
    "c3_via_determinants",
    "c_representation",
    "char_poly",
    "classify_k3",
    "classify_k4",
    "classify_mid_k",
    "classify_n_minus_3",
    "closed_form_deletion_poly",
    "colex_subsets",
    "constant_structure",
    "descending_score_order",
    "det_constancy",
    "determinant",
    "drt_from_skew_hadamard",
    "first_three_cycle",
    "get_eps",
    "hat",
    "i_representation",
    "i_weighted",
    "is_doubly_regular",
    "is_homogeneous",
    "is_k_spectrally_monomorphic",
    "is_transitive",
    "monomorphy_profile",
    "normalize_at",
    "paley_tournament",
    "pair_cycle_counts",
    "parse_document",
    "parse_scalar",
    "poly_x_squared_minus",
    "pouzet_transfer_check",
    "principal_minor_sum",
    "rational",
    "rational_sqrt",
    "reduce_to_canonical_labels",
    "scaled_poly",
    "serialize_document",
    "set_eps",
    "skew_adjacency",
    "skew_hadamard_from_drt",
    "subset_bitmask",
    "substructure",
    "transitive_tournament",
    "two_square_root",
    "validate_sign_matrix",
    "verify_deletion_spectra",
]
