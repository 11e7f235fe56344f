"""Gaze-session analytics: two-stage density clustering, Markov transition
modeling, fixation statistics, and cross-session distribution comparison."""

__version__ = "0.1.0"

from .config import PipelineConfig  # noqa: E402
from .ingest import (GazeSample, SessionRecording, clean_session,  # noqa: E402
                     parse_gaze_csv, write_gaze_csv)

__all__ = [
    "__version__",
    "PipelineConfig",
    "GazeSample",
    "SessionRecording",
    "parse_gaze_csv",
    "clean_session",
    "write_gaze_csv",
]
