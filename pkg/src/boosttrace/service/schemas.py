"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class ErrorBody(BaseModel):
    kind: Literal["usage", "data"]
    message: str


class ArtificialSpec(BaseModel):
    """Cluster-on-hypercube generator parameters (defaults: 2000 x 20 with
    2 informative features, 2 clusters per class, 1% label flips)."""

    n: int = 2000
    d: int = 20
    informative: int = 2
    clusters: int = 2
    flip: float = 0.01
    seed: int = 0


class GenerateDataResponse(BaseModel):
    csv_text: str
    n: int
    d: int
    positive_count: int
    negative_count: int


class InspectRequest(BaseModel):
    csv_text: str
    bins: int = 100
    seed: int = 0  # used only when a multiclass dataset must be binarized


class InspectResponse(BaseModel):
    n: int
    d: int
    bins: int
    h_x: float
    h_y: float
    i_xy: float
    i_xy_over_h_x: float
    i_xy_over_h_y: float
    noiseless_after_discretization: bool
    lmc_target_x: float
    lmc_target_y: float


class RunRequest(BaseModel):
    """One experiment: R seeded 50/50-style splits, T boosting rounds each,
    trajectories traced on the training split's information plane.

    Exactly one of csv_text / artificial supplies the dataset.
    """

    csv_text: Optional[str] = None
    artificial: Optional[ArtificialSpec] = None
    rounds: int = 100
    depth: int = 6
    loss: Literal["exponential", "deviance"] = "exponential"
    shrinkage: float = 1.0
    subsample: float = 1.0
    bins: int = 100
    runs: int = 100
    test_fraction: float = 0.5
    seed: int = 0
    lmc_tolerance: float = 0.01
    plot: bool = False


class CharacteristicModel(BaseModel):
    train_min_round: int
    test_min_round: int
    margin_max_round: int
    lmc_round: Optional[int]
    lmc_target_x: float
    lmc_target_y: float


class RunSummaryModel(BaseModel):
    run_index: int
    seed: int
    noiseless_after_discretization: bool
    characteristic: CharacteristicModel
    final_i_fx_norm: float
    final_i_fy_norm: float


class AveragedSummaryModel(BaseModel):
    run_count: int
    characteristic: CharacteristicModel
    final_i_fx_norm: float
    final_i_fy_norm: float


class RunResponse(BaseModel):
    run_csvs: list[str]
    avg_csv: str
    summary: str
    svg: Optional[str] = None
    runs: list[RunSummaryModel]
    averaged: AveragedSummaryModel


class SweepRequest(BaseModel):
    base: RunRequest
    axis: Literal["depth", "shrinkage", "subsample", "loss"]
    values: list[str] = Field(min_length=1)


class SweepSettingResult(BaseModel):
    label: str
    value: str
    result: RunResponse


class SweepResponse(BaseModel):
    settings: list[SweepSettingResult]


class VerifyRequest(BaseModel):
    seed: int = 0
    instances: int = 500


class CheckReportModel(BaseModel):
    name: str
    passed: bool
    text: str


class VerifyResponse(BaseModel):
    passed: bool
    reports: list[CheckReportModel]
