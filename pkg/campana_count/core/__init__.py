"""Core types: m-full arithmetic, orbifolds, errors, budgets and presets."""

from .arith import (
    MFullDecomposition,
    enumerate_m_full,
    enumerate_m_full_outside,
    is_m_full,
    is_squarefree,
    m_full_compose,
    m_full_decompose,
    moebius,
    p_adic_valuation,
)
from .budget import BUDGET, Budget, adjust_budget, get_budget
from .errors import (
    BudgetExceeded,
    CampanaError,
    DomainError,
    NumericalDisagreement,
    SpecFileError,
)
from .orbifold import (
    AdmissibilityReport,
    CampanaOrbifold,
    DiagonalForm,
    OrbifoldWeights,
    ProjPoint,
    bad_primes,
    check_admissible,
    format_admissibility_report,
    fujita_exponent,
    height,
    intersection_multiplicity,
    is_campana_point,
    s0,
    sigma,
)
from .presets import PRESETS, Preset, get_preset, list_presets
from .spec_file import load_orbifold, parse_orbifold

__all__ = [
    "MFullDecomposition",
    "enumerate_m_full",
    "enumerate_m_full_outside",
    "is_m_full",
    "is_squarefree",
    "m_full_compose",
    "m_full_decompose",
    "moebius",
    "p_adic_valuation",
    "BUDGET",
    "Budget",
    "adjust_budget",
    "get_budget",
    "BudgetExceeded",
    "CampanaError",
    "DomainError",
    "NumericalDisagreement",
    "SpecFileError",
    "AdmissibilityReport",
    "CampanaOrbifold",
    "DiagonalForm",
    "OrbifoldWeights",
    "ProjPoint",
    "bad_primes",
    "check_admissible",
    "format_admissibility_report",
    "fujita_exponent",
    "height",
    "intersection_multiplicity",
    "is_campana_point",
    "s0",
    "sigma",
    "PRESETS",
    "Preset",
    "get_preset",
    "list_presets",
    "load_orbifold",
    "parse_orbifold",
]
