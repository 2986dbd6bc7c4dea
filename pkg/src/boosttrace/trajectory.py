"""Per-round information-plane trajectories of a boosting run.

For every round t (including the round-0 init model) the training scores
are normalized into [-1, 1], binned into b equal-width score bins, and the
resulting random variable F_t is placed on the entropy-normalized
information plane against the discretized training features X and labels
Y.  All information quantities use the training split only; the test split
contributes only its error series.
"""

from __future__ import annotations

from dataclasses import dataclass, replace as dc_replace

import numpy as np

from . import infotheory
from .boosting import BoostConfig, error_rate, fit_boosting, margin_stats, staged_score_iter
from .datasets import DataError, LabeledDataset, SplitSpec, discretize, is_noiseless, split

__all__ = [
    "TrajectoryPoint",
    "CharacteristicPoints",
    "RunResult",
    "AveragedTrajectory",
    "score_bins",
    "compute_trajectory",
    "detect_characteristic_points",
    "average_trajectories",
    "run_experiment",
    "DEFAULT_LMC_TOLERANCE",
]

DEFAULT_LMC_TOLERANCE = 0.01  # in normalized (entropy-ratio) units


@dataclass(frozen=True)
class TrajectoryPoint:
    round: int
    i_fx_norm: float
    i_fy_norm: float
    train_error: float
    test_error: float
    avg_margin: float
    min_margin: float
    margin_variance: float


@dataclass(frozen=True)
class CharacteristicPoints:
    """Earliest rounds attaining each highlighted event, plus the LMC target
    point (I(X;Y)/H(X), I(X;Y)/H(Y)) of the training split."""

    train_min_round: int
    test_min_round: int
    margin_max_round: int
    lmc_round: int | None
    lmc_target: tuple[float, float]


@dataclass(frozen=True)
class RunResult:
    run_index: int
    seed: int
    trajectory: tuple[TrajectoryPoint, ...]
    characteristic: CharacteristicPoints
    noiseless_after_discretization: bool


@dataclass(frozen=True)
class AveragedTrajectory:
    """Pointwise per-round means across runs, with characteristic points
    recomputed on the averaged series."""

    points: tuple[TrajectoryPoint, ...]
    run_count: int
    characteristic: CharacteristicPoints


def score_bins(normalized_scores: np.ndarray, b: int) -> np.ndarray:
    """Equal-width bins over [-1, 1]: floor((s+1)/2*b) clamped to [0, b-1].

    With an even b this grid places a bin edge at 0, so no bin mixes score
    signs (scores of exactly 0 land on the positive side, matching the
    sign(0) := +1 convention).
    """
    idx = np.floor((np.asarray(normalized_scores) + 1.0) / 2.0 * b)
    return np.clip(idx, 0, b - 1).astype(np.int64)


def compute_trajectory(
    train: LabeledDataset,
    test: LabeledDataset,
    cfg: BoostConfig,
    b: int,
    lmc_tolerance: float = DEFAULT_LMC_TOLERANCE,
    run_index: int = 0,
) -> RunResult:
    """Fit the ensemble on train and trace rounds 0..T on the info plane."""
    disc = discretize(train, train, b)
    noiseless = is_noiseless(disc)
    x_keys = disc.joint_keys
    labels = train.labels

    ensemble = fit_boosting(train, cfg)
    test_iter = staged_score_iter(ensemble, test)

    points = []
    lmc_target = None
    for t, _raw, norm in staged_score_iter(ensemble, train):
        _tt, _test_raw, test_norm = next(test_iter)
        point = infotheory.info_plane_point(score_bins(norm, b), x_keys, labels)
        if lmc_target is None:
            lmc_target = (point.i_xy / point.h_x, point.i_xy / point.h_y)
        margins = margin_stats(norm, labels)
        points.append(
            TrajectoryPoint(
                round=t,
                i_fx_norm=point.i_fx_norm,
                i_fy_norm=point.i_fy_norm,
                train_error=error_rate(norm, labels),
                test_error=error_rate(test_norm, test.labels),
                avg_margin=margins.average,
                min_margin=margins.minimum,
                margin_variance=margins.variance,
            )
        )
    trajectory = tuple(points)
    characteristic = detect_characteristic_points(trajectory, lmc_target, lmc_tolerance)
    return RunResult(
        run_index=run_index,
        seed=cfg.seed,
        trajectory=trajectory,
        characteristic=characteristic,
        noiseless_after_discretization=noiseless,
    )


def detect_characteristic_points(
    traj,
    lmc_target: tuple[float, float],
    lmc_tolerance: float = DEFAULT_LMC_TOLERANCE,
) -> CharacteristicPoints:
    """Earliest argmin of each error series, earliest argmax of the average
    margin, and the earliest round within lmc_tolerance of the LMC target on
    both normalized axes (None when never reached)."""
    traj = tuple(traj)
    if not traj:
        raise ValueError("empty trajectory")
    train_min = min(traj, key=lambda p: p.train_error).train_error
    test_min = min(traj, key=lambda p: p.test_error).test_error
    margin_max = max(traj, key=lambda p: p.avg_margin).avg_margin
    tx, ty = lmc_target
    lmc_round = None
    for p in traj:
        if abs(p.i_fx_norm - tx) <= lmc_tolerance and abs(p.i_fy_norm - ty) <= lmc_tolerance:
            lmc_round = p.round
            break
    return CharacteristicPoints(
        train_min_round=next(p.round for p in traj if p.train_error == train_min),
        test_min_round=next(p.round for p in traj if p.test_error == test_min),
        margin_max_round=next(p.round for p in traj if p.avg_margin == margin_max),
        lmc_round=lmc_round,
        lmc_target=(tx, ty),
    )


def average_trajectories(
    runs,
    lmc_tolerance: float = DEFAULT_LMC_TOLERANCE,
) -> AveragedTrajectory:
    """Arithmetic per-round means across runs sharing T, accumulated in
    ascending run_index order so the float reduction is deterministic."""
    runs = sorted(runs, key=lambda r: r.run_index)
    if not runs:
        raise ValueError("need at least one run")
    length = len(runs[0].trajectory)
    if any(len(r.trajectory) != length for r in runs):
        raise ValueError("all runs must share the same number of rounds")

    fields = ("i_fx_norm", "i_fy_norm", "train_error", "test_error",
              "avg_margin", "min_margin", "margin_variance")
    k = len(runs)
    points = []
    for i in range(length):
        sums = {f: 0.0 for f in fields}
        for r in runs:
            p = r.trajectory[i]
            for f in fields:
                sums[f] += getattr(p, f)
        points.append(TrajectoryPoint(round=runs[0].trajectory[i].round,
                                      **{f: sums[f] / k for f in fields}))
    tx = sum(r.characteristic.lmc_target[0] for r in runs) / k
    ty = sum(r.characteristic.lmc_target[1] for r in runs) / k
    characteristic = detect_characteristic_points(points, (tx, ty), lmc_tolerance)
    return AveragedTrajectory(points=tuple(points), run_count=k, characteristic=characteristic)


def run_experiment(
    data: LabeledDataset,
    cfg: BoostConfig,
    b: int,
    runs: int,
    split_spec: SplitSpec,
    lmc_tolerance: float = DEFAULT_LMC_TOLERANCE,
) -> tuple[list[RunResult], AveragedTrajectory]:
    """Repeat the split + fit + trace protocol; run r re-seeds both the
    split and the boosting generator with split_spec.seed + r."""
    if runs < 1:
        raise ValueError("need at least one run")
    results = []
    for r in range(runs):
        seed_r = split_spec.seed + r
        try:
            train, test = split(data, SplitSpec(split_spec.test_fraction, seed_r))
            result = compute_trajectory(
                train, test, dc_replace(cfg, seed=seed_r), b,
                lmc_tolerance=lmc_tolerance, run_index=r,
            )
        except (ValueError, DataError) as e:
            raise type(e)(f"run {r}: {e}") from e
        results.append(result)
    return results, average_trajectories(results, lmc_tolerance)
