"""HTTP service exposing the closed forms, the reference tables and the
time-domain simulator.

Computation endpoints accept JSON bodies (POST) or path/query parameters
(GET) and return either JSON (default) or the deterministic CSV dialect via
``?format=csv``.  Domain errors map to 422, configurations that cannot yield
a valid measurement to 409.
"""

from __future__ import annotations

import io
from typing import Literal, Optional

from fastapi import FastAPI, Query
from fastapi.responses import JSONResponse, PlainTextResponse, Response
from pydantic import BaseModel, Field

from . import __version__
from .core import WaveSetting, mass_model
from .dispersion import dispersion_errors, numerical_wave
from .reflection import reflection_amplitude
from .render import iter_fieldnames, rows_to_csv, to_json
from .simulator import MeasurementError, SimConfig, cross_validation_summary, plan_run, run, write_series_csv
from .tables import table_rows

app = FastAPI(
    title="viscowave",
    version=__version__,
    description="Dispersion, numerical damping and spurious reflection of the "
    "two-node FEM / average-acceleration wave discretization.",
)

Format = Literal["json", "csv"]
MassChoice = Literal["consistent", "lumped", "both"]


class DispersionRequest(BaseModel):
    a: float = Field(description="time steps per wave period")
    b: float = Field(description="elements per wavelength")
    gamma: float = Field(0.0, description="physical damping, >= 0")
    mass: MassChoice = "both"


class ReflectionRequest(BaseModel):
    a: float
    b: Optional[float] = Field(None, description="defaults to a (unity Courant)")
    gamma: float = 0.0
    alpha: float = Field(description="element-size ratio of the right region")
    mass: MassChoice = "both"


class SimulateRequest(BaseModel):
    a: float
    b: Optional[float] = None
    gamma: float = 0.0
    alpha: float = 1.0
    mass: Literal["consistent", "lumped"] = "consistent"
    cycles: int = Field(16, description="tone-burst length in periods")
    total_steps: Optional[int] = Field(None, description="override the planned duration")
    boundary: Literal["fixed_far_end", "absorbing_pad"] = "fixed_far_end"
    graded: Optional[bool] = Field(None, description="force a graded layout even at alpha=1")
    include_series: bool = False


class ReportRow(BaseModel):
    a: float
    b: float
    gamma: float
    alpha: float
    mass: str
    d: Optional[float] = None
    h: Optional[float] = None
    vel_err_pct: Optional[float] = None
    damp_err_pct: Optional[float] = None
    reflection_pct: Optional[float] = None
    provenance: Literal["closed_form", "simulated"] = "closed_form"


class SimulateResponse(BaseModel):
    a: float
    b: float
    gamma: float
    alpha: float
    mass: str
    cycles: int
    total_steps: int
    n_nodes: int
    probe_nodes: tuple[int, int]
    boundary: str
    provenance: Literal["simulated"] = "simulated"
    measured_velocity: float
    closed_form_velocity: float
    velocity_deviation_pct: float
    measured_attenuation_per_length: float
    closed_form_attenuation_per_length: float
    attenuation_deviation_pct: Optional[float]
    measured_reflection_pct: Optional[float]
    closed_form_reflection_pct: Optional[float]
    reflection_deviation_pp: Optional[float]
    energy_drift_rel: Optional[float]
    series_csv: Optional[str] = None


@app.exception_handler(ValueError)
async def _value_error_handler(request, exc: ValueError):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(MeasurementError)
async def _measurement_error_handler(request, exc: MeasurementError):
    return JSONResponse(
        status_code=409, content={"detail": str(exc), "error": "measurement_invalid"}
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


def _mass_names(choice: MassChoice) -> list[str]:
    return ["consistent", "lumped"] if choice == "both" else [choice]


def _closed_form_row(setting: WaveSetting, with_reflection: bool) -> ReportRow:
    wave = numerical_wave(setting)
    errors = dispersion_errors(setting)
    reflection_pct = None
    if with_reflection:
        reflection_pct = reflection_amplitude(setting).magnitude_pct
    return ReportRow(
        a=setting.a,
        b=setting.b,
        gamma=setting.gamma,
        alpha=setting.alpha,
        mass=setting.mass.name,
        d=wave.d,
        h=wave.h,
        vel_err_pct=errors.vel_err_pct,
        damp_err_pct=errors.damp_err_pct,
        reflection_pct=reflection_pct,
    )


def _render_rows(rows: list[dict], fmt: Format, meta: dict) -> Response:
    if fmt == "csv":
        return PlainTextResponse(
            rows_to_csv(rows, iter_fieldnames(rows), meta), media_type="text/csv"
        )
    return PlainTextResponse(to_json(rows), media_type="application/json")


@app.post("/api/dispersion")
def api_dispersion(req: DispersionRequest, format: Format = Query("json")) -> Response:
    rows = []
    for name in _mass_names(req.mass):
        setting = WaveSetting(a=req.a, b=req.b, gamma=req.gamma, mass=mass_model(name))
        rows.append(_closed_form_row(setting, with_reflection=False).model_dump())
    return _render_rows(rows, format, {"command": "dispersion"})


@app.post("/api/reflection")
def api_reflection(req: ReflectionRequest, format: Format = Query("json")) -> Response:
    rows = []
    b = req.a if req.b is None else req.b
    for name in _mass_names(req.mass):
        setting = WaveSetting(
            a=req.a, b=b, gamma=req.gamma, mass=mass_model(name), alpha=req.alpha
        )
        rows.append(_closed_form_row(setting, with_reflection=True).model_dump())
    return _render_rows(rows, format, {"command": "reflect"})


@app.get("/api/table/{which}")
def api_table(
    which: int,
    format: Format = Query("json"),
    gamma: Optional[float] = Query(None, description="damping override for tables 2 and 3"),
) -> Response:
    rows = table_rows(which, gamma=gamma)
    meta = {"command": f"table {which}"}
    if which in (2, 3):
        meta["gamma_default"] = rows[0]["gamma"] if rows else None
    return _render_rows(rows, format, meta)


@app.post("/api/simulate")
def api_simulate(req: SimulateRequest) -> SimulateResponse:
    b = req.a if req.b is None else req.b
    setting = WaveSetting(
        a=req.a, b=b, gamma=req.gamma, mass=mass_model(req.mass), alpha=req.alpha
    )
    mesh, cfg = plan_run(setting, n_cycles=req.cycles, boundary=req.boundary, graded=req.graded)
    if req.total_steps is not None:
        cfg = SimConfig(
            setting=setting,
            total_steps=req.total_steps,
            probe_nodes=cfg.probe_nodes,
            n_cycles=req.cycles,
            boundary=req.boundary,
        )
    record = run(mesh, cfg)
    summary = cross_validation_summary(mesh, cfg, record)
    series_csv = None
    if req.include_series:
        buffer = io.StringIO()
        write_series_csv(mesh, cfg, record, buffer)
        series_csv = buffer.getvalue()
    return SimulateResponse(
        a=setting.a,
        b=setting.b,
        gamma=setting.gamma,
        alpha=setting.alpha,
        mass=setting.mass.name,
        cycles=cfg.n_cycles,
        total_steps=cfg.total_steps,
        n_nodes=record.n_nodes,
        probe_nodes=cfg.probe_nodes,
        boundary=cfg.boundary,
        measured_velocity=summary["measured_velocity"],
        closed_form_velocity=summary["closed_form_velocity"],
        velocity_deviation_pct=summary["velocity_deviation_pct"],
        measured_attenuation_per_length=summary["measured_attenuation_per_length"],
        closed_form_attenuation_per_length=summary["closed_form_attenuation_per_length"],
        attenuation_deviation_pct=summary["attenuation_deviation_pct"],
        measured_reflection_pct=summary["measured_reflection_pct"],
        closed_form_reflection_pct=summary["closed_form_reflection_pct"],
        reflection_deviation_pp=summary["reflection_deviation_pp"],
        energy_drift_rel=summary["energy_drift_rel"],
        series_csv=series_csv,
    )
