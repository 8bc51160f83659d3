"""Maps preserving the sum-difference ratio: checks and classification.

The defining equation, for a self-map f of a field and all pairs x != y:

    f((x + y) / (x - y)) = (f(x) + f(y)) / (f(x) - f(y))

The package verifies the structure such maps are forced into (fixing 0 and
1, oddness, multiplicativity, injectivity), classifies them over odd prime
fields, certifies the identity/conjugation dichotomy over Q(sqrt(d)), and
exhibits equation-satisfying maps of Q(x) that are not surjective.
"""

from .classifier import (
    BudgetExceeded,
    ClassificationResult,
    FpMap,
    InternalInconsistency,
    PowerMapCheck,
    classify,
    classify_range,
    is_sd_power_map,
    oracle_all_maps,
    oracle_constrained,
    power_map_candidates,
)
from .core import (
    CertificationFailed,
    InjectivityViolation,
    InvalidPair,
    RecurrenceDegenerate,
    SdCandidate,
    SdReport,
    SymbolicSequence,
    ZeroTermEncountered,
    ap_propagate,
    check_properties,
    check_sd,
    conjugation_map,
    free_value_constraint,
    function_power_map,
    identity_map,
    integer_induction_check,
    power_map,
    sd_residual,
    symbolic_sequence,
    table_map,
)
from .exact import (
    DivisionByZero,
    PoleError,
    Polynomial,
    Rational,
    RationalFunction,
    UndefinedGcd,
    UndefinedRoots,
    poly_gcd,
    rational_roots,
)
from .fields import (
    ApproxComplexField,
    Field,
    FieldMismatch,
    FunctionField,
    PrimeField,
    QuadraticElement,
    QuadraticField,
    RationalField,
    power_image_witness,
    power_substitution,
    validate_d,
)
from .quadratic import (
    ContradictionReport,
    LatticeFixation,
    check_case_formulas,
    check_half_angle_identities,
    lattice_fix,
    verify_automorphism_sd,
    verify_complex_automorphisms,
    wrong_sign_contradiction,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxComplexField",
    "BudgetExceeded",
    "CertificationFailed",
    "ClassificationResult",
    "ContradictionReport",
    "DivisionByZero",
    "Field",
    "FieldMismatch",
    "FpMap",
    "FunctionField",
    "InjectivityViolation",
    "InternalInconsistency",
    "InvalidPair",
    "LatticeFixation",
    "PoleError",
    "Polynomial",
    "PowerMapCheck",
    "PrimeField",
    "QuadraticElement",
    "QuadraticField",
    "Rational",
    "RationalField",
    "RationalFunction",
    "RecurrenceDegenerate",
    "SdCandidate",
    "SdReport",
    "SymbolicSequence",
    "UndefinedGcd",
    "UndefinedRoots",
    "ZeroTermEncountered",
    "ap_propagate",
    "check_case_formulas",
    "check_half_angle_identities",
    "check_properties",
    "check_sd",
    "classify",
    "classify_range",
    "conjugation_map",
    "free_value_constraint",
    "function_power_map",
    "identity_map",
    "integer_induction_check",
    "is_sd_power_map",
    "lattice_fix",
    "oracle_all_maps",
    "oracle_constrained",
    "poly_gcd",
    "power_image_witness",
    "power_map",
    "power_map_candidates",
    "power_substitution",
    "rational_roots",
    "sd_residual",
    "symbolic_sequence",
    "table_map",
    "validate_d",
    "verify_automorphism_sd",
    "verify_complex_automorphisms",
    "wrong_sign_contradiction",
]
