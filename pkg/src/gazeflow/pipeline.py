"""End-to-end session analysis and cross-session comparison."""

from __future__ import annotations

import math
from contextlib import contextmanager

import numpy as np

from . import __version__
from .clustering import (ClusterParams, build_meta_clusters,
                         chunk_cluster_centroids, cluster_chunks)
from .config import PipelineConfig
from .errors import EmptySessionError, GazeflowError, StageError
from .fixation import (FixationParams, coefficient_of_variation,
                       detect_fixations, remove_duration_outliers,
                       segment_mean_durations)
from .ingest import SessionRecording, clean_session, parse_gaze_csv
from .markov import assign_meta_cluster_states, build_transition_matrix
from .reports import (AngleSummary, ComparisonReport, FixationStats,
                      HistogramSummary, KsSummary, MetaClusterSummary,
                      SessionReport, TransitionSummary)
from .stats import (histogram_2d, jensen_shannon_distance, ks_two_sample,
                    shared_edges, summarize_angles)


@contextmanager
def _stage(name: str):
    try:
        yield
    except StageError:
        raise
    except GazeflowError as exc:
        raise StageError(name, exc) from exc


def load_session(input_path, config: PipelineConfig, label: str | None = None):
    """Parse + clean one recording under the pipeline config."""
    with _stage("ingest"):
        session, diagnostics = parse_gaze_csv(
            input_path,
            label=label if label is not None else str(input_path),
            frame_size=(config.frame_width_px, config.frame_height_px),
        )
        if len(session) == 0:
            raise EmptySessionError(f"{input_path}: no usable samples")
    with _stage("clean"):
        cleaned = clean_session(session, config.min_confidence)
        if len(cleaned) == 0:
            raise EmptySessionError(
                f"{input_path}: all samples removed by cleaning")
    return cleaned, len(session), diagnostics


def analyze_session(input_path=None, config: PipelineConfig | None = None,
                    session: SessionRecording | None = None,
                    n_raw: int | None = None,
                    n_diagnostics: int = 0) -> SessionReport:
    """Run the full pipeline on one recording and return its report.

    Either ``input_path`` or an already-cleaned ``session`` must be given.
    Any stage failure propagates as a StageError naming the stage.
    """
    config = config or PipelineConfig()
    if session is None:
        if input_path is None:
            raise ValueError("need input_path or session")
        session, raw_count, diagnostics = load_session(input_path, config)
        n_raw = raw_count
        n_diagnostics = len(diagnostics)
    elif n_raw is None:
        n_raw = len(session) + session.removed_count

    with _stage("clustering"):
        chunkings = cluster_chunks(
            session, config.chunk_seconds,
            ClusterParams(config.chunk_eps(), config.chunk_min_pts))
        centroids = chunk_cluster_centroids(chunkings)
    with _stage("meta_clustering"):
        metas = build_meta_clusters(
            centroids,
            ClusterParams(config.meta_eps(), config.meta_min_pts),
            user_labels=config.meta_cluster_labels)

    with _stage("fixation"):
        fixations = detect_fixations(session, FixationParams(
            config.fixation_min_duration_ms,
            config.fixation_max_dispersion_deg))
        durations = [f.duration for f in fixations]
        filtered, n_outliers = remove_duration_outliers(durations)
        segments = segment_mean_durations(fixations, config.segment_seconds)

    with _stage("markov"):
        max_dist = (config.max_assign_distance_px
                    if config.max_assign_distance_px is not None else math.inf)
        seq = assign_meta_cluster_states(fixations, metas, max_dist)
        matrix = build_transition_matrix(seq, k=len(metas))

    with _stage("stats"):
        if config.angles_from_fixations:
            az = [f.mean_azimuth for f in fixations]
            el = [f.mean_elevation for f in fixations]
        else:
            az = session.azimuth.tolist()
            el = session.elevation.tolist()
        mean_az, std_az, mean_el, std_el = summarize_angles(az, el)
        hist = histogram_2d(az, el, config.bin_width_deg)

        mean_d = std_d = cv = None
        if filtered:
            mean_d = float(np.mean(filtered))
            std_d = float(np.std(filtered, ddof=1)) if len(filtered) > 1 else 0.0
            if len(filtered) >= 2 and mean_d != 0:
                cv = coefficient_of_variation(filtered)

    return SessionReport(
        label=session.label,
        tool_version=__version__,
        config=config,
        n_samples_raw=n_raw,
        n_samples_clean=len(session),
        n_removed_cleaning=session.removed_count,
        n_diagnostics=n_diagnostics,
        meta_clusters=[
            MetaClusterSummary(id=m.id, center=m.center,
                               member_count=len(m.member_centroids),
                               user_label=m.user_label)
            for m in metas
        ],
        transition=TransitionSummary(
            states=list(matrix.states),
            counts=matrix.counts.tolist(),
            probs=matrix.probs.tolist(),
            zero_rows=list(matrix.zero_rows),
        ),
        fixations=FixationStats(
            count=len(fixations),
            outliers_removed=n_outliers,
            durations=filtered,
            mean_duration=mean_d,
            std_duration=std_d,
            cv=cv,
        ),
        segment_means=segments,
        angles=AngleSummary(mean_azimuth=mean_az, std_azimuth=std_az,
                            mean_elevation=mean_el, std_elevation=std_el),
        histogram=HistogramSummary(
            az_edges=hist.az_edges.tolist(),
            el_edges=hist.el_edges.tolist(),
            mass=hist.mass.tolist(),
        ),
        angle_azimuths=list(az),
        angle_elevations=list(el),
    )


def _ks_summary(a, b) -> KsSummary:
    r = ks_two_sample(a, b)
    return KsSummary(statistic=r.statistic, p_value=r.p_value,
                     n1=r.n1, n2=r.n2)


def compare_reports(a: SessionReport, b: SessionReport) -> ComparisonReport:
    """All cross-session statistics from two prebuilt session reports."""
    if a.config != b.config:
        raise StageError("compare", GazeflowError(
            "session reports were built with different configs"))

    with _stage("compare"):
        ks_dur = _ks_summary(a.fixations.durations, b.fixations.durations)
        ks_az = _ks_summary(a.angle_azimuths, b.angle_azimuths)
        ks_el = _ks_summary(a.angle_elevations, b.angle_elevations)

        bw = a.config.bin_width_deg
        az_edges = shared_edges(a.angle_azimuths, b.angle_azimuths, bw)
        el_edges = shared_edges(a.angle_elevations, b.angle_elevations, bw)
        h_a = histogram_2d(a.angle_azimuths, a.angle_elevations, bw,
                           az_edges=az_edges, el_edges=el_edges)
        h_b = histogram_2d(b.angle_azimuths, b.angle_elevations, bw,
                           az_edges=az_edges, el_edges=el_edges)
        jsd = jensen_shannon_distance(h_a, h_b)

    delta_mean = delta_cv = None
    if a.fixations.mean_duration is not None and \
            b.fixations.mean_duration is not None:
        delta_mean = b.fixations.mean_duration - a.fixations.mean_duration
    if a.fixations.cv is not None and b.fixations.cv is not None:
        delta_cv = b.fixations.cv - a.fixations.cv

    return ComparisonReport(
        tool_version=__version__,
        session_a=a,
        session_b=b,
        ks_durations=ks_dur,
        ks_azimuth=ks_az,
        ks_elevation=ks_el,
        jsd=jsd,
        delta_mean_duration=delta_mean,
        delta_cv=delta_cv,
        delta_mean_azimuth=b.angles.mean_azimuth - a.angles.mean_azimuth,
        delta_mean_elevation=b.angles.mean_elevation - a.angles.mean_elevation,
    )


def compare_sessions(path_a, path_b,
                     config: PipelineConfig | None = None) -> ComparisonReport:
    """Analyze two recordings under one shared config and compare them."""
    config = config or PipelineConfig()
    report_a = analyze_session(path_a, config)
    report_b = analyze_session(path_b, config)
    return compare_reports(report_a, report_b)
