"""Finite-field ground truth for dimensions of linear systems."""

from .dimension import (
    OracleConfig,
    OracleResult,
    apolarity_dimension,
    cycle_multiplicity_probe,
    interpolation_dimension,
)

__all__ = [
    "OracleConfig",
    "OracleResult",
    "apolarity_dimension",
    "cycle_multiplicity_probe",
    "interpolation_dimension",
]
