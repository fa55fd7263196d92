"""Orbital magnetic moment of the hydrogen electron in deformed space with minimal length."""

from .deformation import DeformationParameters, from_minimal_length
from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    EvaluationError,
    SingularityError,
)
from .hydrogen import QuantumNumbers
from .moment import comparison_report, magnetic_moment_closed, varsigma

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DeformationParameters",
    "DivergenceError",
    "DomainError",
    "EvaluationError",
    "QuantumNumbers",
    "SingularityError",
    "comparison_report",
    "from_minimal_length",
    "magnetic_moment_closed",
    "varsigma",
]
