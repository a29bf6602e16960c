"""Jumping numbers and the multiplier-ideal Poincare series of simple
complete ideals at smooth surface points, by exact lattice combinatorics."""

from .corpus import corpus_models, iter_contact_sequences
from .errors import (
    InconsistentModel,
    InconsistentProximity,
    InputError,
    InvalidContactSequence,
    MulseriesError,
    NegativeMultiplicity,
    NotMember,
    NotNested,
    TheoremViolation,
    UnknownFormat,
)
from .ideals import (
    CompleteIdeal,
    antinef_closure,
    colength,
    floor_divisor,
    floor_predecessor_divisor,
    is_antinef,
    multiplier_ideal,
    quotient_dimension,
    shifted_pushforward,
    unit_ideal,
)
from .inputs import load_model_file, model_from_source, parse_corpus_spec, parse_rational
from .jumping import (
    JumpingNumber,
    StarWitness,
    TerminalWitness,
    contributes,
    contributing_divisors,
    decompose_membership,
    family_dimension,
    family_values,
    is_candidate,
    jumping_numbers,
    log_canonical_threshold,
    memberships,
    predecessor_ideal,
    previous_jumping_number,
    total_dimension,
    witness_base_value,
)
from .model import (
    MaximalContactSequence,
    ProximityStructure,
    ResolutionModel,
    build_resolution,
    contact_from_proximity,
    intermediate_valuation,
    model_from_contact,
    model_from_proximity,
    proximity_from_contact,
)
from .series import (
    ClosedFormSeries,
    FractionalPolynomial,
    SeriesComparison,
    closed_form,
    common_denominator,
    compare_series,
    expand_truncated,
    oracle_series,
    render,
)
from .verify import (
    CheckResult,
    VerificationReport,
    check_star_corner_identity,
    run_model_checks,
    run_verification,
)

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "ClosedFormSeries",
    "CompleteIdeal",
    "FractionalPolynomial",
    "InconsistentModel",
    "InconsistentProximity",
    "InputError",
    "InvalidContactSequence",
    "JumpingNumber",
    "MaximalContactSequence",
    "MulseriesError",
    "NegativeMultiplicity",
    "NotMember",
    "NotNested",
    "ProximityStructure",
    "ResolutionModel",
    "SeriesComparison",
    "StarWitness",
    "TerminalWitness",
    "TheoremViolation",
    "UnknownFormat",
    "VerificationReport",
    "antinef_closure",
    "build_resolution",
    "check_star_corner_identity",
    "closed_form",
    "colength",
    "common_denominator",
    "compare_series",
    "contact_from_proximity",
    "contributes",
    "contributing_divisors",
    "corpus_models",
    "decompose_membership",
    "expand_truncated",
    "family_dimension",
    "family_values",
    "floor_divisor",
    "floor_predecessor_divisor",
    "intermediate_valuation",
    "is_antinef",
    "is_candidate",
    "iter_contact_sequences",
    "jumping_numbers",
    "load_model_file",
    "log_canonical_threshold",
    "memberships",
    "model_from_contact",
    "model_from_proximity",
    "model_from_source",
    "multiplier_ideal",
    "oracle_series",
    "parse_corpus_spec",
    "parse_rational",
    "predecessor_ideal",
    "previous_jumping_number",
    "proximity_from_contact",
    "quotient_dimension",
    "render",
    "run_model_checks",
    "run_verification",
    "shifted_pushforward",
    "total_dimension",
    "unit_ideal",
    "witness_base_value",
]
