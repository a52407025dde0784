"""Inclusion-exclusion over primitive solutions."""

from .identity import IdentityReport, format_identity_report, verify_ie_identity
from .lattice import (
    GammaVector,
    STPair,
    coordinate_weight,
    enumerate_T,
    enumerate_V,
    gamma_of,
    in_T,
    pair_weight,
)
from .varpi import (
    growth_violations,
    local_inversion_table,
    local_varpi,
    vanishing_violations,
    varpi,
    varpi_table,
)

__all__ = [
    "IdentityReport",
    "format_identity_report",
    "verify_ie_identity",
    "GammaVector",
    "STPair",
    "coordinate_weight",
    "enumerate_T",
    "enumerate_V",
    "gamma_of",
    "in_T",
    "pair_weight",
    "growth_violations",
    "local_inversion_table",
    "local_varpi",
    "vanishing_violations",
    "varpi",
    "varpi_table",
]
