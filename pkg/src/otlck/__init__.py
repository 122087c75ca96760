"""Exact and certified computations for LCK metrics on Oeljeklaus-Toma manifolds."""

from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    FieldValidationError,
    FullRankSublatticeError,
    HypothesisError,
    NotAUnitError,
    OTError,
    PrecisionExhausted,
    ReducibleFieldError,
)
from .numfield import FieldElement, NumberField, validate_field
from .poly import RationalPoly

__all__ = [
    "DimensionMismatchError",
    "FieldElement",
    "FieldMismatchError",
    "FieldValidationError",
    "FullRankSublatticeError",
    "HypothesisError",
    "NotAUnitError",
    "NumberField",
    "OTError",
    "PrecisionExhausted",
    "RationalPoly",
    "ReducibleFieldError",
    "validate_field",
]
