"""Acceptance suite: one printed pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import time

import numpy as np
import pytest

from conftest import (four_region_scenario, synthetic_config,
                      weather_scenario)
from gazeflow.clustering import ClusterParams, dbscan
from gazeflow.fixation import (FixationParams, coefficient_of_variation,
                               detect_fixations)
from gazeflow.ingest import write_gaze_csv
from gazeflow.markov import StateSequence, build_transition_matrix
from gazeflow.pipeline import analyze_session, compare_reports
from gazeflow.stats import (histogram_2d, jensen_shannon_distance,
                            js_distance_from_mass, ks_two_sample,
                            shared_edges)
from gazeflow.synth import generate_synthetic_session
from oracles import dbscan_reference, partition_of

SAMPLE_PERIOD = 1.0 / 30.0


def _verdict(criterion: int, description: str, ok: bool) -> None:
    print(f"criterion {criterion} [{'PASS' if ok else 'FAIL'}]: {description}")
    assert ok, f"criterion {criterion} failed: {description}"


def two_point_sample(mu, sigma):
    return [mu - sigma / np.sqrt(2), mu + sigma / np.sqrt(2)]


def test_criterion_1_cv_anchors():
    cv_clear = coefficient_of_variation(two_point_sample(0.25, 0.12))
    cv_rainy = coefficient_of_variation(two_point_sample(0.53, 0.19))
    ok = abs(cv_clear - 0.48) <= 0.01 and abs(cv_rainy - 0.358) <= 0.01
    _verdict(1, f"CV anchors 0.48/0.358 (got {cv_clear:.4f}/{cv_rainy:.4f})",
             ok)


def test_criterion_2_clustering_oracle_equivalence():
    t0 = time.perf_counter()
    matches = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(5, 500))
        n_blobs = int(rng.integers(1, 5))
        pts = []
        for _ in range(n_blobs):
            c = rng.uniform(0, 100, 2)
            pts.append(rng.normal(c, rng.uniform(0.5, 5.0),
                                  (n // (n_blobs + 1), 2)))
        pts.append(rng.uniform(0, 100, (n - sum(len(p) for p in pts), 2)))
        pts = np.vstack(pts)[:n]
        params = ClusterParams(float(rng.uniform(0.5, 8.0)),
                               int(rng.integers(2, 12)))
        labels, core = dbscan(pts, params)
        ref_labels, ref_core = dbscan_reference(pts, params.eps,
                                                params.min_pts)
        if (core.tolist() == ref_core.tolist()
                and partition_of(labels) == partition_of(ref_labels)):
            matches += 1
    elapsed = time.perf_counter() - t0
    ok = matches == 100 and elapsed < 5.0
    _verdict(2, f"dbscan = brute-force reference on {matches}/100 seeded "
                f"instances in {elapsed:.2f}s (< 5 s)", ok)


def test_criterion_3_planted_truth_end_to_end():
    spec = four_region_scenario(duration_s=1800.0, seed=3)
    session, truth = generate_synthetic_session(spec)
    config = synthetic_config()
    t0 = time.perf_counter()
    report = analyze_session(session=session, config=config)
    elapsed = time.perf_counter() - t0

    n_meta = len(report.meta_clusters)
    planted = np.asarray(truth.region_centers_px)
    centers_ok = True
    mapping = []
    for m in report.meta_clusters:
        dists = np.hypot(*(planted - np.asarray(m.center)).T)
        mapping.append(int(dists.argmin()))
        centers_ok &= float(dists.min()) <= config.meta_eps()
    chain_err = float("inf")
    if n_meta == 4 and sorted(mapping) == [0, 1, 2, 3]:
        inv = np.empty(4, dtype=int)
        inv[mapping] = np.arange(4)
        probs = np.asarray(report.transition.probs)[np.ix_(inv, inv)]
        chain_err = float(np.abs(probs - np.asarray(spec.chain)).max())
    ok = (len(session) >= 50_000 and n_meta == 4 and centers_ok
          and chain_err <= 0.05 and elapsed < 10.0)
    _verdict(3, f"{len(session)} samples -> {n_meta} meta-clusters, "
                f"chain max error {chain_err:.4f} (<= 0.05), "
                f"{elapsed:.2f}s (< 10 s)", ok)


def test_criterion_4_fixation_recovery():
    failures = []
    for seed in range(20):
        spec = four_region_scenario(duration_s=60.0, seed=seed)
        session, truth = generate_synthetic_session(spec)
        events = detect_fixations(session, FixationParams())
        if len(events) != len(truth.fixations):
            failures.append((seed, "count"))
            continue
        for ev, planted in zip(events, truth.fixations):
            planted_d = (planted.end_ns - planted.start_ns) / 1e9
            if abs(ev.duration - planted_d) > SAMPLE_PERIOD + 1e-9:
                failures.append((seed, "duration"))
                break
    ok = not failures
    _verdict(4, f"fixation count + durations (within 1/30 s) recovered on "
                f"{20 - len(failures)}/20 seeded scenarios", ok)


def test_criterion_5_statistical_machinery():
    checks = []

    ident = ks_two_sample([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    checks.append(ident.statistic == 0.0 and ident.p_value == 1.0)
    checks.append(ks_two_sample([1, 2, 3], [4, 5, 6]).statistic == 1.0)
    fixture = ks_two_sample([1, 2, 3, 4], [1.5, 2.5, 3.5, 4.5])
    checks.append(abs(fixture.statistic - 0.25) < 1e-12)

    h = histogram_2d([0.5, 1.5], [0.5, 0.5], 1.0)
    checks.append(jensen_shannon_distance(h, h) == 0.0)
    az_e = shared_edges([0.5, 10.5], [0.5, 10.5], 1.0)
    el_e = shared_edges([0.5], [0.5], 1.0)
    p = histogram_2d([0.5], [0.5], 1.0, az_edges=az_e, el_edges=el_e)
    q = histogram_2d([10.5], [0.5], 1.0, az_edges=az_e, el_edges=el_e)
    checks.append(abs(jensen_shannon_distance(p, q) - 1.0) <= 1e-6)
    checks.append(abs(js_distance_from_mass([0.5, 0.5], [1.0, 0.0])
                      - 0.5579) <= 1e-4)

    rng = np.random.default_rng(0)
    labels = tuple(int(v) for v in rng.integers(0, 5, 400))
    tm = build_transition_matrix(
        StateSequence(labels, tuple(range(400))), k=6)
    row_sums = tm.probs.sum(axis=1)
    checks.append(all(
        (i in tm.zero_rows and s == 0.0) or abs(s - 1.0) <= 1e-9
        for i, s in enumerate(row_sums)))

    hist = histogram_2d(rng.uniform(-30, 30, 500), rng.uniform(-20, 5, 500),
                        1.0)
    checks.append(abs(hist.mass.sum() - 1.0) <= 1e-9)

    ok = all(checks)
    _verdict(5, f"K-S exact cases, JSD cases, row/histogram normalization "
                f"({sum(checks)}/{len(checks)} checks)", ok)


def test_criterion_6_paper_analog_reproduction():
    config = synthetic_config(fixation_min_duration_ms=66.0)
    reports = []
    for mean, std, seed, label in [(0.25, 0.12, 1, "clear-analog"),
                                   (0.53, 0.19, 2, "rainy-analog")]:
        spec = weather_scenario(mean, std, seed, label, duration_s=900.0)
        session, _ = generate_synthetic_session(spec)
        reports.append(analyze_session(session=session, config=config))
    comp = compare_reports(*reports)
    n_ok = (comp.ks_durations.n1 >= 1000 and comp.ks_durations.n2 >= 1000)
    ratio = (comp.session_b.fixations.mean_duration
             / comp.session_a.fixations.mean_duration)
    ok = n_ok and comp.ks_durations.p_value < 0.0001 and 1.8 <= ratio <= 2.4
    _verdict(6, f"K-S p = {comp.ks_durations.p_value:.2e} (< 1e-4), "
                f"rainy/clear duration ratio {ratio:.3f} in [1.8, 2.4]", ok)


def test_criterion_7_determinism(tmp_path):
    session, _ = generate_synthetic_session(
        four_region_scenario(duration_s=120.0, seed=3))
    csv_path = tmp_path / "session.csv"
    write_gaze_csv(session, csv_path)
    config = synthetic_config()

    from gazeflow.reports import emit_report

    payloads = []
    for run in range(3):
        out = tmp_path / f"run{run}"
        report = analyze_session(csv_path, config)
        emit_report(report, out)
        payloads.append((out / "report.json").read_bytes())
    ok = payloads[0] == payloads[1] == payloads[2]
    _verdict(7, "report.json byte-identical across 3 analyze runs", ok)
