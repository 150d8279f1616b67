"""Linear base loci, linear expected dimensions and speciality of fat-point linear systems."""

__version__ = "0.1.0"

from .core import EmptySystemError, LinearSystem, MultiIndex, ScopeError, binomial, canonicalize, parse_mults
from .dimensions import (
    Classification,
    ContainmentPolicy,
    DimensionReport,
    classify,
    dimension_report,
    expected_dimension,
    linear_expected_dimension,
    linear_virtual_dimension,
    virtual_dimension,
)

__all__ = [
    "Classification",
    "ContainmentPolicy",
    "DimensionReport",
    "EmptySystemError",
    "LinearSystem",
    "MultiIndex",
    "ScopeError",
    "binomial",
    "canonicalize",
    "classify",
    "dimension_report",
    "expected_dimension",
    "linear_expected_dimension",
    "linear_virtual_dimension",
    "parse_mults",
    "virtual_dimension",
]
