"""Exception hierarchy for the detection pipeline.

Every error belongs to a family with a stable CLI exit code:
data problems (3), model-file problems (4), shape mismatches (5) and
degenerate numerical situations (6).  Anything else exits 1.
"""

from __future__ import annotations


class NlosDetectError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class DataError(NlosDetectError):
    exit_code = 3


class FileUnreadableError(DataError):
    """Input file missing or not readable."""


class EmptyDatasetError(DataError):
    """No valid rows survived parsing."""


class InconsistentWidthError(DataError):
    """Most rows disagree with the inferred window length; layout is wrong."""


class EmptyMatrixError(DataError):
    """An operation received a matrix with no rows."""


class EmptyInputError(DataError):
    """Label sequences were empty."""


class LengthMismatchError(DataError):
    """Paired sequences differ in length."""


class ModelFileError(NlosDetectError):
    exit_code = 4


class SchemaMismatchError(ModelFileError):
    """Model file declares an unsupported schema version."""


class CorruptModelError(ModelFileError):
    """Model file violates a structural invariant."""


class ModelExistsError(ModelFileError):
    """Refusing to overwrite an existing model file without --force."""


class DimensionMismatchError(NlosDetectError):
    exit_code = 5


class DegenerateError(NlosDetectError):
    exit_code = 6


class SingleClassError(DegenerateError):
    """Training data contains only one label value."""


class SingleClassStratifyError(DegenerateError):
    """Stratified split requested but one class is absent."""


class RankDeficientError(DegenerateError):
    """Requested more whitening components than the numerical rank allows."""


class NotWhitenedError(DegenerateError):
    """FastICA input covariance is far from identity; whitening was skipped."""


class NoProgressError(DegenerateError):
    """The very first boosting round could not beat chance; no usable model."""


class IllConditionedMixingError(DegenerateError):
    """Synthetic mixing matrix exceeds the allowed condition number."""


class PipelineStageError(NlosDetectError):
    """Wraps a module error with the pipeline stage it occurred in."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}': {cause}")
        self.stage = stage
        self.cause = cause

    @property
    def exit_code(self) -> int:  # type: ignore[override]
        return getattr(self.cause, "exit_code", 1)
