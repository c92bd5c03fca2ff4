"""Belief contraction for finite bases, propositional theories and Horn belief sets."""

from .base_change import (
    ALL,
    FIRST,
    MAXIMUM,
    MEET_OF_ALL,
    MINIMAL_FIRST,
    BeliefBase,
    Explicit,
    ExplicitInfra,
    Incision,
    Indices,
    InfraChoice,
    RemainderIndex,
    Selection,
    SubsetFamily,
    base_full_meet,
    base_infra_contraction,
    base_infra_remainders,
    base_kernel_contraction,
    base_kernels,
    base_maxichoice,
    base_partial_meet,
    base_remainders,
    kernel_outcomes,
    minimal_incisions,
    saturated_base_kernel_contraction,
    valid_incisions,
)
from .beliefset_change import (
    FullMeet,
    Infra,
    Kernel,
    Maxichoice,
    PartialMeet,
    bs_contract,
    bs_infra_remainders,
    bs_kernels,
    bs_remainders,
)
from .config import DEFAULT_LIMITS, Limits
from .errors import BeliefChangeError, InputError, LimitExceeded, NotHornError, ParseError
from .formula import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Formula,
    HornClause,
    Iff,
    Implies,
    Not,
    Or,
    Signature,
    as_horn_clauses,
    clause,
    enumerate_clauses,
    horn_clauses,
    parse,
    render,
)
from .horn_change import (
    HornBeliefSet,
    OrderSpec,
    decomposability_witness,
    e_contract,
    e_remainders,
    horn_kernel_e_contraction,
    infra_e_contraction,
    infra_e_remainders,
)
from .postulates import ContractionTable, PostulateReport, build_table, check
from .semantics import (
    ModelSet,
    PropBeliefSet,
    entails,
    horn_closure,
    horn_entails,
    intersection_closure,
    models,
    representatives,
    theory_of,
)

__version__ = "0.1.0"

__all__ = [
    "ALL",
    "FIRST",
    "MAXIMUM",
    "MEET_OF_ALL",
    "MINIMAL_FIRST",
    "BeliefBase",
    "Explicit",
    "ExplicitInfra",
    "Incision",
    "Indices",
    "InfraChoice",
    "RemainderIndex",
    "Selection",
    "SubsetFamily",
    "base_full_meet",
    "base_infra_contraction",
    "base_infra_remainders",
    "base_kernel_contraction",
    "base_kernels",
    "base_maxichoice",
    "base_partial_meet",
    "base_remainders",
    "kernel_outcomes",
    "minimal_incisions",
    "saturated_base_kernel_contraction",
    "valid_incisions",
    "FullMeet",
    "Infra",
    "Kernel",
    "Maxichoice",
    "PartialMeet",
    "bs_contract",
    "bs_infra_remainders",
    "bs_kernels",
    "bs_remainders",
    "BOTTOM",
    "TOP",
    "And",
    "Atom",
    "Formula",
    "HornClause",
    "Iff",
    "Implies",
    "Not",
    "Or",
    "Signature",
    "as_horn_clauses",
    "clause",
    "enumerate_clauses",
    "horn_clauses",
    "parse",
    "render",
    "HornBeliefSet",
    "OrderSpec",
    "decomposability_witness",
    "e_contract",
    "e_remainders",
    "horn_kernel_e_contraction",
    "infra_e_contraction",
    "infra_e_remainders",
    "ModelSet",
    "PropBeliefSet",
    "entails",
    "horn_closure",
    "horn_entails",
    "intersection_closure",
    "models",
    "representatives",
    "theory_of",
    "DEFAULT_LIMITS",
    "Limits",
    "BeliefChangeError",
    "InputError",
    "LimitExceeded",
    "NotHornError",
    "ParseError",
    "ContractionTable",
    "PostulateReport",
    "build_table",
    "check",
]
