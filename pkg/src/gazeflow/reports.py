"""Report models and plot-ready file emission.

A SessionReport carries everything the paper-style figures need (transition
matrix, duration distribution, segment means, angle histogram) as plain
data; emission writes a JSON report plus CSV sidecars, atomically.
"""

from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path

from pydantic import BaseModel, ConfigDict

from .config import PipelineConfig

SESSION_REPORT_FILES = (
    "report.json",
    "transition_matrix.csv",
    "fixation_durations.csv",
    "segment_means.csv",
    "angle_histogram.csv",
    "meta_clusters.csv",
)


class MetaClusterSummary(BaseModel):
    id: int
    center: tuple[float, float]
    member_count: int
    user_label: str | None = None


class TransitionSummary(BaseModel):
    states: list[int]
    counts: list[list[int]]
    probs: list[list[float]]
    zero_rows: list[int]


class FixationStats(BaseModel):
    count: int  # detected fixations before outlier removal
    outliers_removed: int
    durations: list[float]  # outlier-filtered, seconds
    mean_duration: float | None = None
    std_duration: float | None = None
    cv: float | None = None


class AngleSummary(BaseModel):
    mean_azimuth: float
    std_azimuth: float
    mean_elevation: float
    std_elevation: float


class HistogramSummary(BaseModel):
    az_edges: list[float]
    el_edges: list[float]
    mass: list[list[float]]  # rows = azimuth bins, cols = elevation bins


class KsSummary(BaseModel):
    statistic: float
    p_value: float
    n1: int
    n2: int


class SessionReport(BaseModel):
    model_config = ConfigDict(extra="forbid")

    label: str
    tool_version: str
    config: PipelineConfig
    n_samples_raw: int
    n_samples_clean: int
    n_removed_cleaning: int
    n_diagnostics: int
    meta_clusters: list[MetaClusterSummary]
    transition: TransitionSummary
    fixations: FixationStats
    segment_means: list[tuple[float, float]]  # (segment start s, mean s)
    angles: AngleSummary
    histogram: HistogramSummary
    # raw angle values backing the histogram, kept so two prebuilt reports
    # can be compared with shared bin edges
    angle_azimuths: list[float]
    angle_elevations: list[float]


class ComparisonReport(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tool_version: str
    session_a: SessionReport
    session_b: SessionReport
    ks_durations: KsSummary
    ks_azimuth: KsSummary
    ks_elevation: KsSummary
    jsd: float
    delta_mean_duration: float | None
    delta_cv: float | None
    delta_mean_azimuth: float
    delta_mean_elevation: float


def _atomic_write(path: Path, data: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(data, encoding="utf-8")
    os.replace(tmp, path)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def report_json_text(report: BaseModel) -> str:
    """Canonical JSON serialization; byte-identical for identical reports."""
    return json.dumps(report.model_dump(mode="json"),
                      indent=2, sort_keys=True) + "\n"


def _session_files(report: SessionReport) -> dict[str, str]:
    files = {"report.json": report_json_text(report)}

    states = report.transition.states
    files["transition_matrix.csv"] = _csv_text(
        ["from_state"] + [f"to_{s}" for s in states],
        [[s] + [repr(p) for p in report.transition.probs[i]]
         for i, s in enumerate(states)],
    )
    files["fixation_durations.csv"] = _csv_text(
        ["duration_s"], [[repr(d)] for d in report.fixations.durations])
    files["segment_means.csv"] = _csv_text(
        ["segment_start_s", "mean_duration_s"],
        [[repr(a), repr(b)] for a, b in report.segment_means])
    rows = []
    h = report.histogram
    for i in range(len(h.az_edges) - 1):
        for j in range(len(h.el_edges) - 1):
            rows.append([repr(h.az_edges[i]), repr(h.az_edges[i + 1]),
                         repr(h.el_edges[j]), repr(h.el_edges[j + 1]),
                         repr(h.mass[i][j])])
    files["angle_histogram.csv"] = _csv_text(
        ["az_lo_deg", "az_hi_deg", "el_lo_deg", "el_hi_deg", "mass"], rows)
    files["meta_clusters.csv"] = _csv_text(
        ["id", "center_x_px", "center_y_px", "member_count", "user_label"],
        [[m.id, repr(m.center[0]), repr(m.center[1]), m.member_count,
          m.user_label or ""] for m in report.meta_clusters])
    return files


def emit_report(report: SessionReport | ComparisonReport, out_dir) -> list[Path]:
    """Write a report and its plot-ready CSV sidecars.

    For a comparison, each session's files land in ``session_a/`` and
    ``session_b/`` next to the top-level ``report.json``.  Re-emitting the
    same report is byte-identical; writes are atomic (temp + rename).
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if isinstance(report, ComparisonReport):
        _atomic_write(out / "report.json", report_json_text(report))
        written.append(out / "report.json")
        for name, sub in (("session_a", report.session_a),
                          ("session_b", report.session_b)):
            subdir = out / name
            subdir.mkdir(exist_ok=True)
            for fname, text in _session_files(sub).items():
                _atomic_write(subdir / fname, text)
                written.append(subdir / fname)
    else:
        for fname, text in _session_files(report).items():
            _atomic_write(out / fname, text)
            written.append(out / fname)
    return written
