"""CSV ingestion and cleaning of gaze recordings.

Documented input schema (UTF-8, comma-separated, one header row):

    timestamp_ns, gaze_x_px, gaze_y_px, azimuth_deg, elevation_deg, confidence

Any header can be remapped through a ``schema_map`` of
``canonical name -> actual column name``.  ``confidence`` is optional and
defaults to 1.0 when the column is absent.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from .errors import FormatError, SchemaError

CANONICAL_COLUMNS = (
    "timestamp_ns",
    "gaze_x_px",
    "gaze_y_px",
    "azimuth_deg",
    "elevation_deg",
    "confidence",
)
REQUIRED_COLUMNS = CANONICAL_COLUMNS[:-1]


@dataclass(frozen=True)
class GazeSample:
    """A single timestamped gaze frame."""

    timestamp: int  # nanoseconds since recording start
    x: float  # scene-camera horizontal position, pixels
    y: float  # scene-camera vertical position, pixels
    azimuth: float  # degrees, negative = left of straight-ahead
    elevation: float  # degrees, negative = below straight-ahead
    confidence: float = 1.0


@dataclass(frozen=True)
class Diagnostic:
    """One ingestion problem, tied to a 1-based line number of the file."""

    line: int
    reason: str


@dataclass(frozen=True)
class SessionRecording:
    """An ordered, validated gaze recording held as column arrays.

    Immutable after construction; samples are strictly increasing in
    timestamp.
    """

    timestamps: np.ndarray  # int64 nanoseconds
    x: np.ndarray
    y: np.ndarray
    azimuth: np.ndarray
    elevation: np.ndarray
    confidence: np.ndarray
    label: str = ""
    nominal_rate: float = 30.0
    frame_size: tuple[float, float] = (1600.0, 1200.0)
    warning: str | None = None
    removed_count: int = 0

    def __post_init__(self):
        for arr in (self.timestamps, self.x, self.y, self.azimuth,
                    self.elevation, self.confidence):
            arr.setflags(write=False)
        if len(self) > 1 and not np.all(np.diff(self.timestamps) > 0):
            raise ValueError("timestamps must be strictly increasing")

    def __len__(self) -> int:
        return len(self.timestamps)

    @property
    def duration_seconds(self) -> float:
        if len(self) < 2:
            return 0.0
        return float(self.timestamps[-1] - self.timestamps[0]) / 1e9

    def sample(self, i: int) -> GazeSample:
        return GazeSample(
            timestamp=int(self.timestamps[i]),
            x=float(self.x[i]),
            y=float(self.y[i]),
            azimuth=float(self.azimuth[i]),
            elevation=float(self.elevation[i]),
            confidence=float(self.confidence[i]),
        )

    @staticmethod
    def from_columns(timestamps, x, y, azimuth, elevation, confidence=None,
                     **meta) -> "SessionRecording":
        ts = np.asarray(timestamps, dtype=np.int64)
        n = len(ts)
        conf = (np.ones(n) if confidence is None
                else np.asarray(confidence, dtype=float))
        return SessionRecording(
            timestamps=ts,
            x=np.asarray(x, dtype=float),
            y=np.asarray(y, dtype=float),
            azimuth=np.asarray(azimuth, dtype=float),
            elevation=np.asarray(elevation, dtype=float),
            confidence=conf,
            **meta,
        )


def _sample_valid(ts, x, y, az, el, conf):
    """Range checks from the sample invariants; returns a reason or None."""
    # non-finite coordinates pass through; clean_session removes them
    if ts < 0:
        return "negative timestamp"
    if not -180.0 <= az <= 180.0:
        return "azimuth out of [-180, 180]"
    if not -90.0 <= el <= 90.0:
        return "elevation out of [-90, 90]"
    if not 0.0 <= conf <= 1.0:
        return "confidence out of [0, 1]"
    return None


def parse_gaze_csv(
    path,
    schema_map: dict[str, str] | None = None,
    label: str = "",
    nominal_rate: float = 30.0,
    frame_size: tuple[float, float] = (1600.0, 1200.0),
) -> tuple[SessionRecording, list[Diagnostic]]:
    """Parse a gaze CSV into a SessionRecording plus line-numbered diagnostics.

    Rows are re-sorted by timestamp; duplicate timestamps keep the first
    occurrence (in file order) and later duplicates are reported.  Malformed
    rows are collected as diagnostics, never silently dropped.
    """
    mapping = dict(schema_map or {})
    colnames = {c: mapping.get(c, c) for c in CANONICAL_COLUMNS}

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError(f"{path}: file has no header row") from None
        header = [h.strip() for h in header]
        col_idx = {}
        for canon, actual in colnames.items():
            if actual in header:
                col_idx[canon] = header.index(actual)
        missing = [colnames[c] for c in REQUIRED_COLUMNS if c not in col_idx]
        if missing:
            raise SchemaError(f"{path}: missing mapped column(s): {missing}")
        has_conf = "confidence" in col_idx

        diagnostics: list[Diagnostic] = []
        rows: list[tuple] = []
        n_body = 0
        n_bad_ts = 0
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            n_body += 1
            try:
                ts = int(row[col_idx["timestamp_ns"]])
            except (ValueError, IndexError):
                n_bad_ts += 1
                diagnostics.append(Diagnostic(lineno, "unparseable timestamp"))
                continue
            try:
                x = float(row[col_idx["gaze_x_px"]])
                y = float(row[col_idx["gaze_y_px"]])
                az = float(row[col_idx["azimuth_deg"]])
                el = float(row[col_idx["elevation_deg"]])
                conf = float(row[col_idx["confidence"]]) if has_conf else 1.0
            except (ValueError, IndexError):
                diagnostics.append(Diagnostic(lineno, "unparseable field"))
                continue
            reason = _sample_valid(ts, x, y, az, el, conf)
            if reason is not None:
                diagnostics.append(Diagnostic(lineno, reason))
                continue
            rows.append((ts, x, y, az, el, conf, lineno))

    if n_body and n_bad_ts > 0.1 * n_body:
        raise FormatError(
            f"{path}: unparseable timestamps in {n_bad_ts}/{n_body} rows")

    # stable sort keeps file order among equal timestamps, then keep-first
    rows.sort(key=lambda r: r[0])
    deduped: list[tuple] = []
    last_ts = None
    for r in rows:
        if r[0] == last_ts:
            diagnostics.append(Diagnostic(r[6], "duplicate timestamp"))
            continue
        deduped.append(r)
        last_ts = r[0]

    warning = None
    if not deduped:
        warning = "empty session" if n_body == 0 else "no usable rows"
    cols = list(zip(*deduped)) if deduped else [[]] * 6
    session = SessionRecording.from_columns(
        cols[0], cols[1], cols[2], cols[3], cols[4], cols[5],
        label=label, nominal_rate=nominal_rate,
        frame_size=tuple(frame_size), warning=warning,
    )
    return session, diagnostics


def clean_session(session: SessionRecording,
                  min_confidence: float = 0.0) -> SessionRecording:
    """Drop low-confidence, non-finite, and out-of-frame samples.

    Idempotent; preserves ordering; the number of removed samples is
    recorded on the result.
    """
    w, h = session.frame_size
    keep = (
        np.isfinite(session.x) & np.isfinite(session.y)
        & (session.x >= 0) & (session.x <= w)
        & (session.y >= 0) & (session.y <= h)
        & (session.confidence >= min_confidence)
    )
    removed = int(len(session) - keep.sum())
    warning = session.warning
    if removed == len(session) and len(session) > 0:
        warning = "all samples removed by cleaning"
    return replace(
        session,
        timestamps=session.timestamps[keep].copy(),
        x=session.x[keep].copy(),
        y=session.y[keep].copy(),
        azimuth=session.azimuth[keep].copy(),
        elevation=session.elevation[keep].copy(),
        confidence=session.confidence[keep].copy(),
        removed_count=session.removed_count + removed,
        warning=warning,
    )


def gaze_csv_text(session: SessionRecording) -> str:
    """Serialize a session to the documented CSV schema."""
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CANONICAL_COLUMNS)
    for i in range(len(session)):
        writer.writerow([
            int(session.timestamps[i]),
            repr(float(session.x[i])),
            repr(float(session.y[i])),
            repr(float(session.azimuth[i])),
            repr(float(session.elevation[i])),
            repr(float(session.confidence[i])),
        ])
    return buf.getvalue()


def write_gaze_csv(session: SessionRecording, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(gaze_csv_text(session))
