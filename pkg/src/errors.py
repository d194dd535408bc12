"""
Exception hierarchy for the fusion frame toolkit

InputError covers malformed or inconsistent input (CLI exit code 1).
AnalysisError covers well-formed input that fails an analytic requirement (exit code 2).
"""

from typing import Optional


class FusionFrameError(Exception):
    """Base class for every error raised by the library"""


class InputError(FusionFrameError):
    """Input is malformed, inconsistent or violates a precondition"""


class AnalysisError(FusionFrameError):
    """Input is well formed but the requested analytic property does not hold"""


# Linear algebra substrate

class RankDeficientError(InputError):
    """Columns are linearly dependent at the rank tolerance"""


class FullSpaceError(InputError):
    """Subspace already fills the ambient space"""


class NotSymmetricError(InputError):
    """Matrix is not symmetric within tolerance"""


class SingularError(InputError):
    """Matrix is singular or too badly conditioned to solve against"""


class DimensionMismatchError(InputError):
    """Shapes or ambient dimensions disagree"""


# Projections

class NotComplementaryError(InputError):
    """Range and null space do not form a direct sum of the ambient space"""


class SupportViolationError(InputError):
    """A perturbation vector has mass on coordinates it must avoid"""


class NotOrthogonalError(InputError):
    """Vectors required to be pairwise orthogonal are not"""


class NotAProjectionError(InputError):
    """Matrix is not idempotent within tolerance"""

    def __init__(self, message: str, index: Optional[int] = None, residual: Optional[float] = None):
        super().__init__(message)
        self.index = index
        self.residual = residual


class InvalidWeightError(InputError):
    """Fusion frame weights must be strictly positive"""


# Fusion operator

class NotAFrameError(AnalysisError):
    """Lower frame bound is not above the eigenvalue tolerance"""


# Constructions

class NotSpanningError(InputError):
    """Frame vectors do not span the ambient space"""


class ZeroVectorError(InputError):
    """A frame vector is zero"""


class NoValidPermutationError(AnalysisError):
    """No reordering places nonzero entries on the pivot diagonal"""


class TooLargeError(InputError):
    """Exhaustive search refused for this ambient dimension"""


class InfeasibleEntriesError(InputError):
    """Too many prescribed diagonal entries exceed one"""


class BadEntryError(InputError):
    """A prescribed diagonal entry is below one"""


class DimensionTooSmallError(InputError):
    """Subspace dimension is below half the ambient dimension"""


class BadFactorizationError(InputError):
    """Dimension, count and remainder are inconsistent"""


# Pseudoframes for subspaces

class NotAFrameOfSubspaceError(InputError):
    """Vectors do not form a frame of the given subspace"""


class PerturbationNotOrthogonalError(InputError):
    """Perturbation vectors are not orthogonal to the subspace"""


class DegenerateDirectionError(InputError):
    """The orthogonal complement of the analysis span meets the subspace"""


# Files and commands

class ParseError(InputError):
    """Input file could not be parsed or fails its schema"""


class StrategyError(InputError):
    """Projection strategy cannot be applied to this input"""


class NonFiniteError(InputError):
    """Matrix contains NaN or infinite entries"""
