"""Error hierarchy for quasisolvable-spectra.

Input problems derive from `InputError` (itself a `ValueError`, so callers
that already guard configuration with `except ValueError` keep working).
Mathematical-contract failures derive from `ContractViolation`; they signal
that a guarantee of the theory was not met numerically and are never raised
for ordinary "this check did not pass" outcomes, which go into reports.
"""

from __future__ import annotations


class SpectraError(Exception):
    """Base class for every error raised by this package."""


class InputError(SpectraError, ValueError):
    """The caller supplied an object that violates an operation's precondition."""


class InvalidMatrix(InputError):
    """A matrix has non-finite entries or an inconsistent shape."""


class NotSquare(InputError):
    """A square matrix was required."""


class DimensionMismatch(InputError):
    """Operands have incompatible dimensions."""


class NotClosed(InputError):
    """A bracket of two basis elements falls outside the span."""


class NotIndependent(InputError):
    """A list of basis elements is linearly dependent."""


class NotSubspace(InputError):
    """A subspace is not contained in the space it was declared inside."""


class NotCharacter(InputError):
    """A functional does not vanish on the derived subalgebra."""


class NotSolvable(InputError):
    """A solvable Lie algebra was required."""


class DegreeOutOfRange(InputError):
    """A chain degree outside ``0..n`` was requested."""


class UnknownLabel(InputError):
    """A label in a problem file does not resolve."""


class ContractViolation(SpectraError):
    """A guarantee of the theory failed to hold numerically."""


class ComplexInconsistent(ContractViolation):
    """The residual of ``d ∘ d`` exceeds tolerance."""


class JacobiViolation(ContractViolation):
    """The computed basis brackets break the Jacobi identity beyond tolerance."""


class NumericalBreakdown(ContractViolation):
    """No common eigenvector was found within tolerance."""


class EmptySpectrum(ContractViolation):
    """A joint spectrum came out empty although it is nonempty in theory."""


class SpanFailure(ContractViolation):
    """A family of subspaces does not sum to the expected space."""


class SystemAxiomViolation(ContractViolation):
    """A bonding map of an inverse system breaks the identity or composition law."""


class EmptyLimit(ContractViolation):
    """An inverse limit of finite nonempty spaces came out empty."""


class GluingInconsistent(ContractViolation):
    """Two decompositions of the same element gave different character values."""


class GenerationExhausted(ContractViolation):
    """The corpus generator hit its retry bound."""


__all__ = [
    "SpectraError",
    "InputError",
    "InvalidMatrix",
    "NotSquare",
    "DimensionMismatch",
    "NotClosed",
    "NotIndependent",
    "NotSubspace",
    "NotCharacter",
    "NotSolvable",
    "DegreeOutOfRange",
    "UnknownLabel",
    "ContractViolation",
    "ComplexInconsistent",
    "JacobiViolation",
    "NumericalBreakdown",
    "EmptySpectrum",
    "SpanFailure",
    "SystemAxiomViolation",
    "EmptyLimit",
    "GluingInconsistent",
    "GenerationExhausted",
]
