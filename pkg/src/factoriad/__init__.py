"""Finite categories, the squares monad P, the Freyd completion Fr, and the
correspondence between their algebras and factorisation systems."""

from .algcorr import (
    AlgebraMorphism,
    PseudoAlgebra,
    StrictAlgebra,
    algebra_to_fs,
    check_algebra_morphism,
    check_pseudo_algebra,
    check_strict_algebra,
    check_two_cell,
    enumerate_strict_algebras,
    fs_to_pseudo_algebra,
    induce_fr_algebra,
    is_r_compatible,
    roundtrip_algebra,
    roundtrip_fs,
    strict_algebra_to_strict_fs,
    strict_fs_to_algebra,
    correspondence_suite,
)
from .arrowmonad import P, arrow_category, check_cubical_equations, check_monad_laws, eta, mu
from .errors import (
    CategoryError,
    ConsistencyError,
    FactorisationError,
    FactoriadError,
    PreconditionError,
    SizeGuardError,
)
from .factsys import (
    FactorisationChoice,
    FactorisationSystem,
    StrictFactorisationSystem,
    default_choice,
    enumerate_fs,
    enumerate_strict_fs,
    extend_functor,
    extend_functor_proper,
    is_fs,
    is_proper,
    is_strict_fs,
    span,
)
from .fincat import (
    Congruence,
    FinCategory,
    Functor,
    NatTransformation,
    enumerate_functors,
    enumerate_natural_transformations,
    is_epi,
    is_iso,
    is_mono,
    orthogonal,
    quotient,
    validate_category,
)
from .freyd import Fr, check_freyd_properness, check_projection_monad_morphism, eta_prime, freyd_completion, mu_prime
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "AlgebraMorphism",
    "BACKEND",
    "CategoryError",
    "Congruence",
    "ConsistencyError",
    "FactoriadError",
    "FactorisationChoice",
    "FactorisationError",
    "FactorisationSystem",
    "FinCategory",
    "Fr",
    "Functor",
    "NatTransformation",
    "P",
    "PreconditionError",
    "PseudoAlgebra",
    "SizeGuardError",
    "StrictAlgebra",
    "StrictFactorisationSystem",
    "algebra_to_fs",
    "arrow_category",
    "check_algebra_morphism",
    "check_cubical_equations",
    "check_freyd_properness",
    "check_monad_laws",
    "check_projection_monad_morphism",
    "check_pseudo_algebra",
    "check_strict_algebra",
    "check_two_cell",
    "default_choice",
    "enumerate_fs",
    "enumerate_functors",
    "enumerate_natural_transformations",
    "enumerate_strict_algebras",
    "enumerate_strict_fs",
    "eta",
    "eta_prime",
    "extend_functor",
    "extend_functor_proper",
    "freyd_completion",
    "fs_to_pseudo_algebra",
    "induce_fr_algebra",
    "is_epi",
    "is_fs",
    "is_iso",
    "is_mono",
    "is_proper",
    "is_r_compatible",
    "is_strict_fs",
    "mu",
    "mu_prime",
    "orthogonal",
    "quotient",
    "roundtrip_algebra",
    "roundtrip_fs",
    "span",
    "strict_algebra_to_strict_fs",
    "strict_fs_to_algebra",
    "correspondence_suite",
    "validate_category",
]
