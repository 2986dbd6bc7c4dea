"""FastAPI service wrapping the core package.

Endpoints are synchronous compute calls: the request carries the dataset
(inline CSV text or artificial-generator parameters) and the response
carries the finished artifacts (trajectory CSVs, summary, SVG), so the
service stays stateless and a remote instance behaves exactly like the
in-process default used by the CLI.

Error contract: precondition/usage problems map to {"kind": "usage"},
unusable data to {"kind": "data"}, both as HTTP 400.
"""

from __future__ import annotations

from collections import Counter

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import __version__, verify
from ..boosting import BoostConfig
from ..datasets import (
    DataError,
    LabeledDataset,
    MulticlassDataset,
    SplitSpec,
    binarize_multiclass,
    dataset_to_csv,
    discretize,
    generate_artificial,
    is_noiseless,
    load_csv_text,
)
from ..infotheory import EmpiricalJoint, conditional_entropy, entropy
from ..reports import AVERAGED_RUN_INDEX, experiment_summary, trajectory_csv
from ..svgplot import information_plane_svg
from ..trajectory import run_experiment
from . import schemas


def _labeled_dataset(csv_text: str, seed: int) -> LabeledDataset:
    data = load_csv_text(csv_text)
    if isinstance(data, MulticlassDataset):
        data = binarize_multiclass(data, seed)
    return data


def _characteristic_model(c) -> schemas.CharacteristicModel:
    return schemas.CharacteristicModel(
        train_min_round=c.train_min_round,
        test_min_round=c.test_min_round,
        margin_max_round=c.margin_max_round,
        lmc_round=c.lmc_round,
        lmc_target_x=c.lmc_target[0],
        lmc_target_y=c.lmc_target[1],
    )


def _run_response(req: schemas.RunRequest) -> schemas.RunResponse:
    if (req.csv_text is None) == (req.artificial is None):
        raise ValueError("provide exactly one of csv_text / artificial")
    if req.artificial is not None:
        a = req.artificial
        data = generate_artificial(a.n, a.d, a.informative, a.clusters, a.flip, a.seed)
    else:
        data = _labeled_dataset(req.csv_text, req.seed)

    cfg = BoostConfig(
        rounds=req.rounds,
        max_depth=req.depth,
        loss=req.loss,
        shrinkage=req.shrinkage,
        subsample=req.subsample,
        seed=req.seed,
    )
    results, averaged = run_experiment(
        data,
        cfg,
        req.bins,
        req.runs,
        SplitSpec(req.test_fraction, req.seed),
        lmc_tolerance=req.lmc_tolerance,
    )
    run_models = [
        schemas.RunSummaryModel(
            run_index=r.run_index,
            seed=r.seed,
            noiseless_after_discretization=r.noiseless_after_discretization,
            characteristic=_characteristic_model(r.characteristic),
            final_i_fx_norm=r.trajectory[-1].i_fx_norm,
            final_i_fy_norm=r.trajectory[-1].i_fy_norm,
        )
        for r in results
    ]
    return schemas.RunResponse(
        run_csvs=[trajectory_csv(r.trajectory, r.run_index) for r in results],
        avg_csv=trajectory_csv(averaged.points, AVERAGED_RUN_INDEX),
        summary=experiment_summary(results, averaged, req.bins, req.lmc_tolerance),
        svg=information_plane_svg(averaged.points, averaged.characteristic)
        if req.plot
        else None,
        runs=run_models,
        averaged=schemas.AveragedSummaryModel(
            run_count=averaged.run_count,
            characteristic=_characteristic_model(averaged.characteristic),
            final_i_fx_norm=averaged.points[-1].i_fx_norm,
            final_i_fy_norm=averaged.points[-1].i_fy_norm,
        ),
    )


def _apply_axis(base: schemas.RunRequest, axis: str, value: str) -> schemas.RunRequest:
    if axis == "depth":
        return base.model_copy(update={"depth": int(value)})
    if axis == "shrinkage":
        return base.model_copy(update={"shrinkage": float(value)})
    if axis == "subsample":
        return base.model_copy(update={"subsample": float(value)})
    return base.model_copy(update={"loss": value})


def create_app() -> FastAPI:
    app = FastAPI(title="boosttrace", version=__version__)

    @app.exception_handler(DataError)
    async def _data_error(_req: Request, exc: DataError):
        return JSONResponse(status_code=400, content={"kind": "data", "message": str(exc)})

    @app.exception_handler(ValueError)
    async def _usage_error(_req: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"kind": "usage", "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"kind": "usage", "message": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/datasets/generate", response_model=schemas.GenerateDataResponse)
    def generate(req: schemas.ArtificialSpec) -> schemas.GenerateDataResponse:
        data = generate_artificial(req.n, req.d, req.informative, req.clusters, req.flip, req.seed)
        positive = int((data.labels == 1).sum())
        return schemas.GenerateDataResponse(
            csv_text=dataset_to_csv(data),
            n=data.n,
            d=data.d,
            positive_count=positive,
            negative_count=data.n - positive,
        )

    @app.post("/datasets/inspect", response_model=schemas.InspectResponse)
    def inspect(req: schemas.InspectRequest) -> schemas.InspectResponse:
        data = _labeled_dataset(req.csv_text, req.seed)
        disc = discretize(data, data, req.bins)
        h_x = entropy(Counter(disc.joint_keys))
        h_y = entropy(Counter(disc.labels.tolist()))
        if h_x == 0.0 or h_y == 0.0:
            raise DataError("degenerate axis: H(X) and H(Y) must both be positive")
        i_xy = h_y - conditional_entropy(
            EmpiricalJoint.from_pairs(zip(disc.labels.tolist(), disc.joint_keys))
        )
        return schemas.InspectResponse(
            n=data.n,
            d=data.d,
            bins=req.bins,
            h_x=h_x,
            h_y=h_y,
            i_xy=i_xy,
            i_xy_over_h_x=i_xy / h_x,
            i_xy_over_h_y=i_xy / h_y,
            noiseless_after_discretization=is_noiseless(disc),
            lmc_target_x=i_xy / h_x,
            lmc_target_y=i_xy / h_y,
        )

    @app.post("/experiments/run", response_model=schemas.RunResponse)
    def run(req: schemas.RunRequest) -> schemas.RunResponse:
        return _run_response(req)

    @app.post("/experiments/sweep", response_model=schemas.SweepResponse)
    def sweep(req: schemas.SweepRequest) -> schemas.SweepResponse:
        settings = []
        for value in req.values:
            derived = _apply_axis(req.base, req.axis, value)
            try:
                result = _run_response(derived)
            except (ValueError, DataError) as e:
                raise type(e)(f"sweep setting {req.axis}={value}: {e}") from e
            settings.append(
                schemas.SweepSettingResult(
                    label=f"{req.axis}_{value}", value=value, result=result
                )
            )
        return schemas.SweepResponse(settings=settings)

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def run_verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
        reports = verify.run_all_checks(req.seed, req.instances)
        return schemas.VerifyResponse(
            passed=all(r.passed for r in reports),
            reports=[
                schemas.CheckReportModel(name=r.name, passed=r.passed, text=r.to_text())
                for r in reports
            ],
        )

    return app
