import numpy as np
import pytest

from gazeflow.config import PipelineConfig
from gazeflow.ingest import SessionRecording
from gazeflow.synth import DwellSpec, Region, ScenarioSpec

FOUR_REGIONS = [
    Region(center_px=(400, 350), center_deg=(-8.0, -4.0), sigma_px=4.0),
    Region(center_px=(1200, 350), center_deg=(8.0, -4.0), sigma_px=4.0),
    Region(center_px=(400, 900), center_deg=(-8.0, -15.0), sigma_px=4.0),
    Region(center_px=(1200, 900), center_deg=(8.0, -15.0), sigma_px=4.0),
]

FOUR_STATE_CHAIN = [
    [0.55, 0.15, 0.15, 0.15],
    [0.40, 0.60, 0.00, 0.00],
    [0.40, 0.00, 0.60, 0.00],
    [0.40, 0.00, 0.00, 0.60],
]


def four_region_scenario(duration_s=1800.0, seed=3) -> ScenarioSpec:
    return ScenarioSpec(
        regions=FOUR_REGIONS,
        chain=FOUR_STATE_CHAIN,
        dwell=[DwellSpec(mean_s=0.35, std_s=0.05)],
        duration_s=duration_s,
        seed=seed,
        min_dwell_s=0.25,
        label="four-region",
    )


def weather_scenario(dwell_mean_s, dwell_std_s, seed, label,
                     duration_s=900.0) -> ScenarioSpec:
    """Two-region analog of one recording condition."""
    return ScenarioSpec(
        regions=[FOUR_REGIONS[0], FOUR_REGIONS[3]],
        chain=[[0.8, 0.2], [0.5, 0.5]],
        dwell=[DwellSpec(mean_s=dwell_mean_s, std_s=dwell_std_s)],
        duration_s=duration_s,
        seed=seed,
        min_dwell_s=0.1,
        label=label,
    )


def single_region_scenario(azimuth_deg, elevation_deg, duration_s=600.0,
                           seed=5) -> ScenarioSpec:
    return ScenarioSpec(
        regions=[Region(center_px=(800, 600),
                        center_deg=(azimuth_deg, elevation_deg),
                        sigma_px=2.0)],
        chain=[[1.0]],
        dwell=[DwellSpec(mean_s=0.4, std_s=0.1)],
        duration_s=duration_s,
        seed=seed,
        min_dwell_s=0.25,
        label="single-region",
    )


def synthetic_config(**overrides) -> PipelineConfig:
    return PipelineConfig(min_confidence=0.0, **overrides)


def make_session(timestamps, azimuth, elevation, x=None, y=None,
                 **meta) -> SessionRecording:
    """Small hand-built session; pixel coords default to the frame center."""
    n = len(timestamps)
    if x is None:
        x = np.full(n, 800.0)
    if y is None:
        y = np.full(n, 600.0)
    return SessionRecording.from_columns(
        timestamps, x, y, azimuth, elevation, **meta)


def stationary_session(duration_s, rate_hz=30.0, azimuth=0.0, elevation=0.0,
                       t0_ns=0) -> SessionRecording:
    n = int(round(duration_s * rate_hz)) + 1
    ts = t0_ns + np.round(np.arange(n) * 1e9 / rate_hz).astype(np.int64)
    return make_session(ts, np.full(n, azimuth), np.full(n, elevation))


@pytest.fixture(scope="session")
def four_region_session():
    from gazeflow.synth import generate_synthetic_session

    return generate_synthetic_session(four_region_scenario(duration_s=300.0))
