"""Computing with minor-closed function classes between finite sets."""

from .core import (
    Algebra,
    Budget,
    BudgetExceededError,
    DEFAULT_BUDGET,
    FiniteFunction,
    FunctionSet,
    InputError,
    MinorMap,
    RelationPair,
    apply_pointwise,
    compose_minor_maps,
    is_polymorphism,
    iter_minor_maps,
    minor,
    pol_slice,
    support_count,
)
from .closure import (
    GeneratorFamily,
    bp_member,
    clone_contains,
    clone_slice,
    clonoid_slice,
    member,
    subalgebra_close,
)
from .constructions import (
    all_ones_indicator,
    complement_in_window,
    dualize,
    dualize_algebra,
    product_algebra,
    unit_pair,
    unit_vector_indicator,
    witness_family,
)
from .terms import (
    MAXIMAL_CLONES,
    ClassificationReport,
    blocker_tower_closed,
    classify_boolean,
    cube_term_blocker,
    is_idempotent,
    majority_terms,
    malcev_terms,
    nu_terms,
)
from .textio import format_artifact, parse_artifact
from .suites import SUITE_IDS, VerificationReport, run_verification

__version__ = "0.1.0"
