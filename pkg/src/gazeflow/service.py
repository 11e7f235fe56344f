"""HTTP service exposing the analysis pipeline.

Sessions travel as CSV text in the request body; reports come back as
JSON.  The CLI is a thin client of this service.
"""

from __future__ import annotations

import tempfile
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .config import PipelineConfig
from .errors import GazeflowError, StageError
from .ingest import gaze_csv_text
from .pipeline import analyze_session, compare_reports, load_session
from .reports import ComparisonReport, SessionReport
from .synth import PlantedTruth, ScenarioSpec, generate_synthetic_session

app = FastAPI(title="gazeflow", version=__version__)


class AnalyzeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    csv_text: str
    label: str | None = None
    config: PipelineConfig = Field(default_factory=PipelineConfig)


class CompareRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    csv_a: str
    csv_b: str
    label_a: str = "session_a"
    label_b: str = "session_b"
    config: PipelineConfig = Field(default_factory=PipelineConfig)


class SynthRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: ScenarioSpec
    seed: int | None = None  # overrides scenario.seed when given


class SynthResponse(BaseModel):
    csv_text: str
    truth: PlantedTruth


@app.exception_handler(GazeflowError)
async def _gazeflow_error(request, exc: GazeflowError):
    cause = exc.cause if isinstance(exc, StageError) else exc
    return JSONResponse(
        status_code=422,
        content={
            "detail": str(exc),
            "error_class": type(cause).__name__,
            "stage": exc.stage if isinstance(exc, StageError) else None,
        },
    )


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.get("/config/defaults", response_model=PipelineConfig)
def config_defaults():
    return PipelineConfig()


def _temp_csv(csv_text: str) -> Path:
    tmp = tempfile.NamedTemporaryFile(
        "w", suffix=".csv", delete=False, encoding="utf-8")
    tmp.write(csv_text)
    tmp.close()
    return Path(tmp.name)


def _analyze_text(csv_text: str, label: str, config: PipelineConfig):
    path = _temp_csv(csv_text)
    try:
        session, n_raw, diags = load_session(path, config, label=label)
        return analyze_session(config=config, session=session,
                               n_raw=n_raw, n_diagnostics=len(diags))
    finally:
        path.unlink(missing_ok=True)


@app.post("/analyze", response_model=SessionReport)
def analyze(req: AnalyzeRequest):
    return _analyze_text(req.csv_text, req.label or "session", req.config)


@app.post("/compare", response_model=ComparisonReport)
def compare(req: CompareRequest):
    rep_a = _analyze_text(req.csv_a, req.label_a, req.config)
    rep_b = _analyze_text(req.csv_b, req.label_b, req.config)
    return compare_reports(rep_a, rep_b)


@app.post("/synth", response_model=SynthResponse)
def synth(req: SynthRequest):
    scenario = req.scenario
    if req.seed is not None:
        scenario = scenario.model_copy(update={"seed": req.seed})
    session, truth = generate_synthetic_session(scenario)
    return SynthResponse(csv_text=gaze_csv_text(session), truth=truth)
