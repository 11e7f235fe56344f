"""Dispersion-threshold fixation detection and duration statistics.

Detection is I-DT style over angular coordinates: a window of consecutive
samples is a fixation candidate while (max - min azimuth) + (max - min
elevation) stays within ``max_dispersion``; the window is emitted once its
time span reaches ``min_duration``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptySessionError, ParameterError, StatisticsError
from .ingest import SessionRecording


@dataclass(frozen=True)
class FixationParams:
    min_duration: float = 200.0  # milliseconds
    max_dispersion: float = 1.0  # degrees of visual angle

    def __post_init__(self):
        if self.min_duration <= 0:
            raise ParameterError("min_duration must be > 0")
        if self.max_dispersion <= 0:
            raise ParameterError("max_dispersion must be > 0")


@dataclass(frozen=True)
class FixationEvent:
    start: int  # nanoseconds
    end: int  # nanoseconds
    centroid_px: tuple[float, float]
    mean_azimuth: float
    mean_elevation: float

    @property
    def duration(self) -> float:
        return (self.end - self.start) / 1e9


def _dispersion(az, el, lo, hi):
    a = az[lo:hi]
    e = el[lo:hi]
    return (a.max() - a.min()) + (e.max() - e.min())


def detect_fixations(session: SessionRecording,
                     params: FixationParams) -> list[FixationEvent]:
    """Detect fixations in a cleaned session.

    Returns non-overlapping, time-ordered events.  Invariant to adding a
    constant to every timestamp.
    """
    if len(session) == 0:
        raise EmptySessionError("empty session")
    ts = session.timestamps
    az = session.azimuth
    el = session.elevation
    n = len(session)
    min_dur_ns = params.min_duration * 1e6

    events: list[FixationEvent] = []
    i = 0
    while i < n:
        # initial window spanning at least min_duration
        j = i + 1
        while j < n and ts[j - 1] - ts[i] < min_dur_ns:
            j += 1
        if ts[j - 1] - ts[i] < min_dur_ns:
            break  # not enough trailing data for another fixation
        if _dispersion(az, el, i, j) > params.max_dispersion:
            i += 1
            continue
        while j < n and _dispersion(az, el, i, j + 1) <= params.max_dispersion:
            j += 1
        events.append(FixationEvent(
            start=int(ts[i]),
            end=int(ts[j - 1]),
            centroid_px=(float(session.x[i:j].mean()),
                         float(session.y[i:j].mean())),
            mean_azimuth=float(az[i:j].mean()),
            mean_elevation=float(el[i:j].mean()),
        ))
        i = j
    return events


def remove_duration_outliers(durations) -> tuple[list[float], int]:
    """Drop durations above the upper Tukey fence Q3 + 1.5 * IQR.

    Only the upper side is fenced; short fixations are already floored by
    the detection threshold.  Returns (kept, removed_count); kept is a
    subsequence of the input.
    """
    vals = [float(v) for v in durations]
    if not vals:
        return [], 0
    q1, q3 = np.percentile(vals, [25, 75])
    fence = q3 + 1.5 * (q3 - q1)
    kept = [v for v in vals if v <= fence]
    return kept, len(vals) - len(kept)


def segment_mean_durations(fixations: list[FixationEvent],
                           segment_seconds: float) -> list[tuple[float, float]]:
    """Mean fixation duration per consecutive time segment.

    Fixations are binned by start time into ``segment_seconds`` windows
    aligned to the first fixation; empty windows are simply absent.
    Returns (segment_start_seconds, mean_duration_seconds) pairs.
    """
    if segment_seconds <= 0:
        raise ParameterError("segment_seconds must be > 0")
    if not fixations:
        return []
    seg_ns = int(round(segment_seconds * 1e9))
    t0 = fixations[0].start
    sums: dict[int, list[float]] = {}
    for f in fixations:
        sums.setdefault((f.start - t0) // seg_ns, []).append(f.duration)
    return [
        (k * seg_ns / 1e9, float(np.mean(v)))
        for k, v in sorted(sums.items())
    ]


def coefficient_of_variation(values) -> float:
    """Sample standard deviation divided by the mean (CV = sigma / mu)."""
    vals = np.asarray(list(values), dtype=float)
    if len(vals) < 2:
        raise StatisticsError("CV needs at least 2 values")
    mu = vals.mean()
    if mu == 0:
        raise StatisticsError("undefined CV: mean is zero")
    return float(vals.std(ddof=1) / mu)
