"""HTTP service exposing the experiment runners and exact checkers.

Every endpoint returns the same report envelope the runners produce:
config echo, per-record data, aggregate, prediction, verdict, flags.
Invalid parameters come back as 400 with a message; malformed request
bodies are rejected by validation as 422.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict

from .experiments import (
    ConfigError,
    ExperimentConfig,
    run_abelian_experiment,
    run_center_experiment,
    run_group_check,
    run_ms_experiment,
    run_plucker,
    run_quaternion_example,
    run_thresholds,
)
from .fields import FieldError
from .forms import tuple_from_json_dict
from .linalg import DEFAULT_ENUM_CAP, EnumerationCapError

app = FastAPI(title="nilforms", version="0.1.0")


class FormTupleModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int
    t: int
    forms: list[list[list[int]]]


class CenterRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int
    t: int
    trials: int = 100
    bound: int = 20
    seed: int = 0
    jobs: int = 1
    input_tuple: FormTupleModel | None = None


class AbelianRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int
    t: int
    trials: int = 100
    bound: int = 20
    prime: int | None = None
    seed: int = 0
    restarts: int = 8
    enum_cap: int = DEFAULT_ENUM_CAP
    jobs: int = 1
    input_tuple: FormTupleModel | None = None


class MsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int
    t: int
    n0: int
    t0: int
    trials: int = 100
    bound: int = 20
    prime: int | None = None
    seed: int = 0
    strategy: str = "exhaustive-fp"
    search_trials: int = 200
    enum_cap: int = DEFAULT_ENUM_CAP
    jobs: int = 1
    input_tuple: FormTupleModel | None = None


class ThresholdsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_max: int
    n0_max: int


class PluckerRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ambient: int
    basis: list[list[int | str]]


class GroupCheckRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int
    t: int
    trials: int = 100
    bound: int = 5
    exp_bound: int = 9
    seed: int = 0
    jobs: int = 1
    input_tuple: FormTupleModel | None = None


class QuaternionRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    minor_points: int = 200
    seed: int = 0
    restarts: int = 20


def _parse_tuple(model: FormTupleModel | None):
    if model is None:
        return None
    try:
        return tuple_from_json_dict(model.model_dump())
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def _run(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (ConfigError, EnumerationCapError, FieldError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "name": "nilforms", "version": "0.1.0"}


@app.post("/experiments/center")
def center_experiment(req: CenterRequest) -> dict:
    cfg = ExperimentConfig(
        kind="center",
        n=req.n,
        t=req.t,
        trials=req.trials,
        bound=req.bound,
        seed=req.seed,
        jobs=req.jobs,
        input_tuple=_parse_tuple(req.input_tuple),
    )
    return _run(run_center_experiment, cfg)


@app.post("/experiments/abelian")
def abelian_experiment(req: AbelianRequest) -> dict:
    cfg = ExperimentConfig(
        kind="abelian",
        n=req.n,
        t=req.t,
        trials=req.trials,
        bound=req.bound,
        prime=req.prime,
        seed=req.seed,
        restarts=req.restarts,
        enum_cap=req.enum_cap,
        jobs=req.jobs,
        input_tuple=_parse_tuple(req.input_tuple),
    )
    return _run(run_abelian_experiment, cfg)


@app.post("/experiments/ms")
def ms_experiment(req: MsRequest) -> dict:
    cfg = ExperimentConfig(
        kind="ms",
        n=req.n,
        t=req.t,
        n0=req.n0,
        t0=req.t0,
        trials=req.trials,
        bound=req.bound,
        prime=req.prime,
        seed=req.seed,
        strategy=req.strategy,
        search_trials=req.search_trials,
        enum_cap=req.enum_cap,
        jobs=req.jobs,
        input_tuple=_parse_tuple(req.input_tuple),
    )
    return _run(run_ms_experiment, cfg)


@app.post("/thresholds")
def thresholds(req: ThresholdsRequest) -> dict:
    return _run(run_thresholds, req.n_max, req.n0_max)


@app.post("/plucker")
def plucker_endpoint(req: PluckerRequest) -> dict:
    return _run(run_plucker, req.ambient, req.basis)


@app.post("/group-check")
def group_check(req: GroupCheckRequest) -> dict:
    return _run(
        run_group_check,
        req.n,
        req.t,
        trials=req.trials,
        bound=req.bound,
        exp_bound=req.exp_bound,
        seed=req.seed,
        jobs=req.jobs,
        input_tuple=_parse_tuple(req.input_tuple),
    )


@app.post("/example/quaternion")
def quaternion(req: QuaternionRequest) -> dict:
    return _run(
        run_quaternion_example,
        minor_points=req.minor_points,
        seed=req.seed,
        restarts=req.restarts,
    )
