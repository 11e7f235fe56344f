"""Seeded synthetic-session generator with planted ground truth.

Simulates a gaze recording as a Markov chain over planted attention
regions: each chain step dwells at one region (a future fixation), then a
short saccade moves to the next region.  The exact state sequence, fixation
intervals, and chain are returned as PlantedTruth so the full pipeline can
be verified against known answers.
"""

from __future__ import annotations

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import ParameterError
from .ingest import SessionRecording


class Region(BaseModel):
    """A planted attention region with consistent pixel and angular centers."""
    model_config = ConfigDict(extra="forbid")

    center_px: tuple[float, float]
    center_deg: tuple[float, float]  # (azimuth, elevation)
    sigma_px: float = Field(ge=0)  # 0 = every sample exactly at the center


class DwellSpec(BaseModel):
    """Target moments of the log-normal fixation-duration distribution."""
    model_config = ConfigDict(extra="forbid")

    mean_s: float = Field(gt=0)
    std_s: float = Field(ge=0)


class ScenarioSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    regions: list[Region]
    chain: list[list[float]]  # row-stochastic, one state per region
    dwell: list[DwellSpec]  # per state; a single entry broadcasts
    saccade_gap_ms: float = Field(default=80.0, gt=0)
    duration_s: float = Field(gt=0)
    rate_hz: float = Field(default=30.0, gt=0)
    seed: int = 0
    deg_per_px: float = Field(default=0.02, gt=0)
    frame_size: tuple[float, float] = (1600.0, 1200.0)
    min_dwell_s: float = Field(default=0.1, gt=0)
    # kept small enough that excursion samples stay inside the home
    # region's chunk-clustering neighborhood, yet large enough to break a
    # degree-scale dispersion window between same-state dwells
    excursion_deg: float = Field(default=2.0, ge=0)
    label: str = "synthetic"

    @model_validator(mode="after")
    def _check(self):
        k = len(self.regions)
        if k == 0:
            raise ValueError("at least one region required")
        chain = np.asarray(self.chain, dtype=float)
        if chain.shape != (k, k):
            raise ValueError(f"chain must be {k}x{k}")
        if np.any(chain < 0) or np.any(np.abs(chain.sum(axis=1) - 1) > 1e-9):
            raise ValueError("chain rows must be non-negative and sum to 1")
        if len(self.dwell) == 1:
            self.dwell = [self.dwell[0]] * k
        if len(self.dwell) != k:
            raise ValueError("need one dwell spec per state (or a single one)")
        period = 2.0 / self.rate_hz
        if self.min_dwell_s < period or any(d.mean_s < period
                                            for d in self.dwell):
            raise ValueError(
                "infeasible spec: dwell shorter than 2 sample periods")
        return self


class PlantedFixation(BaseModel):
    start_ns: int
    end_ns: int  # timestamp of the last dwell sample
    state: int


class PlantedTruth(BaseModel):
    states: list[int]
    fixations: list[PlantedFixation]
    saccades: list[tuple[int, int]]  # [first, last] saccade-sample timestamps
    chain: list[list[float]]
    region_centers_px: list[tuple[float, float]]
    region_centers_deg: list[tuple[float, float]]
    seed: int


def _lognormal_params(mean: float, std: float) -> tuple[float, float]:
    sigma2 = math.log(1.0 + (std / mean) ** 2)
    return math.log(mean) - sigma2 / 2.0, math.sqrt(sigma2)


def generate_synthetic_session(
        spec: ScenarioSpec) -> tuple[SessionRecording, PlantedTruth]:
    """Simulate the planted chain; fully deterministic per seed."""
    rng = np.random.default_rng(spec.seed)
    k = len(spec.regions)
    chain = np.asarray(spec.chain, dtype=float)
    centers_px = np.asarray([r.center_px for r in spec.regions])
    centers_deg = np.asarray([r.center_deg for r in spec.regions])
    sigmas = np.asarray([r.sigma_px for r in spec.regions])
    dwell_params = [_lognormal_params(d.mean_s, d.std_s) if d.std_s > 0
                    else None for d in spec.dwell]

    rate = spec.rate_hz
    total = int(round(spec.duration_s * rate))
    gap_samples = max(1, int(round(spec.saccade_gap_ms / 1000.0 * rate)))
    excursion_px = spec.excursion_deg / spec.deg_per_px
    w, h = spec.frame_size

    ts: list[int] = []
    xs: list[float] = []
    ys: list[float] = []
    azs: list[float] = []
    els: list[float] = []

    def emit(i, px, py, az, el):
        ts.append(int(round(i * 1e9 / rate)))
        xs.append(float(np.clip(px, 0.0, w)))
        ys.append(float(np.clip(py, 0.0, h)))
        azs.append(float(az))
        els.append(float(el))

    def emit_at_region(i, state, frac_px, frac_deg):
        off = rng.normal(0.0, sigmas[state], 2)
        px, py = frac_px + off
        az = frac_deg[0] + off[0] * spec.deg_per_px
        el = frac_deg[1] + off[1] * spec.deg_per_px
        emit(i, px, py, az, el)

    states: list[int] = []
    fixations: list[PlantedFixation] = []
    saccades: list[tuple[int, int]] = []
    state = 0
    i = 0
    while True:
        params = dwell_params[state]
        if params is None:
            d = spec.dwell[state].mean_s
        else:
            d = float(rng.lognormal(*params))
        d = max(d, spec.min_dwell_s)
        # one extra sample so the first-to-last span of the dwell matches d
        n = max(2, int(round(d * rate)) + 1)
        if i + n > total:
            break
        start_i = i
        for _ in range(n):
            emit_at_region(i, state, centers_px[state], centers_deg[state])
            i += 1
        states.append(state)
        fixations.append(PlantedFixation(
            start_ns=int(round(start_i * 1e9 / rate)),
            end_ns=int(round((i - 1) * 1e9 / rate)),
            state=state,
        ))

        nxt = int(rng.choice(k, p=chain[state]))
        if i + gap_samples >= total:
            break
        sac_start = i
        if nxt != state:
            a_px, b_px = centers_px[state], centers_px[nxt]
            a_deg, b_deg = centers_deg[state], centers_deg[nxt]
            # random perpendicular bow keeps repeated saccades along the
            # same region pair from stacking samples on fixed midpoints
            delta = b_px - a_px
            dist = float(np.hypot(*delta))
            perp = np.array([-delta[1], delta[0]]) / dist
            bow = rng.uniform(-0.25, 0.25) * dist
            for s in range(1, gap_samples + 1):
                frac = s / (gap_samples + 1)
                off = perp * (bow * math.sin(math.pi * frac))
                emit_at_region(i, state,
                               a_px + frac * (b_px - a_px) + off,
                               a_deg + frac * (b_deg - a_deg)
                               + off * spec.deg_per_px)
                i += 1
        else:
            # out-and-back excursion so consecutive same-state dwells stay
            # separable by a dispersion-based detector
            theta = rng.uniform(0.0, 2.0 * math.pi)
            direction = np.array([math.cos(theta), math.sin(theta)])
            for s in range(1, gap_samples + 1):
                amp = math.sin(math.pi * s / (gap_samples + 1)) * excursion_px
                off_px = direction * amp
                emit_at_region(i, state,
                               centers_px[state] + off_px,
                               centers_deg[state] + off_px * spec.deg_per_px)
                i += 1
        saccades.append((int(round(sac_start * 1e9 / rate)),
                         int(round((i - 1) * 1e9 / rate))))
        state = nxt

    if not fixations:
        raise ParameterError(
            "infeasible spec: session too short for a single dwell")

    session = SessionRecording.from_columns(
        ts, xs, ys, azs, els,
        label=spec.label, nominal_rate=rate, frame_size=tuple(spec.frame_size),
    )
    truth = PlantedTruth(
        states=states,
        fixations=fixations,
        saccades=saccades,
        chain=[list(map(float, row)) for row in chain],
        region_centers_px=[tuple(map(float, c)) for c in centers_px],
        region_centers_deg=[tuple(map(float, c)) for c in centers_deg],
        seed=spec.seed,
    )
    return session, truth
