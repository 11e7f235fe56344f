"""Pipeline configuration: one pydantic model, every field a CLI flag."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field

CHUNK_EPS_FRACTION = 0.05  # of frame diagonal, when chunk_eps_px unset
META_EPS_FRACTION = 0.07  # of frame diagonal, when meta_eps_px unset


class PipelineConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    chunk_seconds: float = Field(default=10.0, gt=0)
    segment_seconds: float = Field(default=30.0, gt=0)
    chunk_eps_px: float | None = Field(default=None, gt=0)
    chunk_min_pts: int = Field(default=10, ge=1)
    meta_eps_px: float | None = Field(default=None, gt=0)
    meta_min_pts: int = Field(default=3, ge=1)
    fixation_min_duration_ms: float = Field(default=200.0, gt=0)
    fixation_max_dispersion_deg: float = Field(default=1.0, gt=0)
    bin_width_deg: float = Field(default=1.0, gt=0)
    min_confidence: float = Field(default=0.6, ge=0.0, le=1.0)
    max_assign_distance_px: float | None = Field(default=None, gt=0)  # None = unlimited
    angles_from_fixations: bool = True  # False: raw cleaned samples
    frame_width_px: float = Field(default=1600.0, gt=0)
    frame_height_px: float = Field(default=1200.0, gt=0)
    meta_cluster_labels: dict[int, str] = Field(default_factory=dict)

    @property
    def frame_diagonal(self) -> float:
        return math.hypot(self.frame_width_px, self.frame_height_px)

    def chunk_eps(self) -> float:
        if self.chunk_eps_px is not None:
            return self.chunk_eps_px
        return CHUNK_EPS_FRACTION * self.frame_diagonal

    def meta_eps(self) -> float:
        if self.meta_eps_px is not None:
            return self.meta_eps_px
        return META_EPS_FRACTION * self.frame_diagonal
