"""feqlab: solution sets of integral Van Vleck and Kannappan functional
equations on finite semigroups with involution and central point measures."""

from .characters import (
    as_cfunc,
    candidate_values,
    canonical_key,
    compose_tau,
    enumerate_multiplicative,
    is_multiplicative,
)
from .equations import (
    Instance,
    Residual,
    is_abelian_function,
    kannappan_condition_residual,
    residual_dalembert,
    residual_kannappan,
    residual_mu_spherical,
    residual_van_vleck,
)
from .errors import (
    EntryOutOfRange,
    EquivalenceViolation,
    FeqlabError,
    InvalidMeasure,
    InvariantViolation,
    NotAntiHomomorphism,
    NotAssociative,
    NotDirac,
    NotInvolutive,
    SupportNotCentral,
    ZeroDenominator,
)
from .families import (
    CharacterIntegrals,
    Solution,
    SolutionReport,
    associated_dalembert,
    character_integrals,
    dalembert_abelian_family,
    dalembert_admissible,
    dalembert_integral_conditions,
    dalembert_to_kannappan,
    kannappan_abelian_family,
    kannappan_identity_suite,
    kannappan_to_dalembert,
    van_vleck_family,
    van_vleck_family_dirac,
    van_vleck_identity_suite,
)
from .measures import (
    CentralMeasure,
    central_measure,
    double_integral,
    is_tau_invariant,
    pushforward_tau,
    right_integral,
    total_mass_integral,
)
from .oracle import (
    MatchResult,
    NoConvergenceBudget,
    OracleConfig,
    match_solution_sets,
    oracle_solve,
)
from .semigroups import (
    FiniteSemigroup,
    Involution,
    Orbit,
    center,
    cyclic_group,
    cyclic_semigroup,
    direct_product,
    identity_involution,
    identity_of,
    inverse_involution,
    left_zero,
    orbit,
    symmetric_group_3,
    validate_involution,
    validate_semigroup,
)

__version__ = "0.1.0"
