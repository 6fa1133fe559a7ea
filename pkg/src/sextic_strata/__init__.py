"""Exact stratification of plane sheaves with Hilbert polynomial 6m + 1.

Presentations of one-dimensional sheaves on the projective plane by
twisted matrix resolutions, their exact cohomology, the six-stratum
classifier, Kronecker-module semistability, per-stratum samplers and the
polarization window arithmetic.  Everything is computed over Q or F_p
with no floating point anywhere.
"""

from .errors import (
    AmbiguousCaseError,
    BudgetExceededError,
    DivisibilityFailure,
    FieldMismatchError,
    InvalidPresentationError,
    MembershipFailure,
    NotInjectiveError,
    NotSquareError,
    ProfileNotInTable,
    RejectionBudgetExceeded,
    SexticStrataError,
    WrongShapeError,
)
from .fields import GF, QQ, PrimeField, RationalField, parse_field
from .forms import Form, common_factor, divides, forms_rank, monomial_basis, mult_map, variables
from .kronecker import (
    KroneckerModule,
    Polarization,
    SemistabilityResult,
    Witness,
    gaussian_binomial,
    is_semistable,
    moduli_dimension,
    polarization_valid_42,
    polarization_window_42,
    verify_witness,
)
from .linalg import ScalarMatrix
from .orbit_oracle import orbit_pattern_oracle, orbit_patterns, orbit_patterns_bruteforce
from .polymatrix import PolyMatrix, det_poly, maximal_minors
from .presentation import (
    CohomologyProfile,
    HilbertPoly,
    Presentation,
    dual,
    dumps,
    fitting_determinant,
    h0,
    h0_omega,
    h1,
    hilbert_polynomial,
    load,
    loads,
    profile,
    save,
    validate,
)
from .rng import SplitMix64, derive_seed
from .sampler import SampleRequest, construct_x5, dual_shape, random_form, sample, sample_batch
from .strata import (
    EXPECTED_PROFILES,
    SHAPES,
    PatternId,
    StratumLabel,
    classification_report,
    classify,
    stratum_dimensions,
    validate_shape,
    x0_condition,
    x1_patterns,
    x2_conditions,
    x3_conditions,
    x4_conditions,
    x5_conditions,
)

__version__ = "0.1.0"
