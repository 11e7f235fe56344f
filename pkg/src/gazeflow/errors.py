"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI:
    usage / bad arguments  -> 1
    data problems          -> 2
    anything else          -> 3
"""


class GazeflowError(Exception):
    """Base class for all package errors."""


class SchemaError(GazeflowError):
    """Input file does not match the documented CSV schema."""


class FormatError(GazeflowError):
    """Input file is structurally a CSV but its contents are unusable."""


class EmptySessionError(GazeflowError):
    """An operation that requires samples received an empty session."""


class ParameterError(GazeflowError):
    """A parameter value is outside its documented valid range."""


class ClusteringError(GazeflowError):
    """No clusters / meta-clusters could be formed under the given parameters."""


class StatisticsError(GazeflowError):
    """A statistic is undefined for the given input (empty sample, zero mean...)."""


class StageError(GazeflowError):
    """Wraps a failure inside the analysis pipeline with the stage name."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}' failed: {cause}")
