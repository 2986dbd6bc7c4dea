"""Text output formats: trajectory CSV, experiment summaries, check reports.

Floats are written with 17 significant digits so re-parsing a file
reproduces the in-memory values exactly; rewriting an unchanged experiment
therefore produces byte-identical files.
"""

from __future__ import annotations

import io

from .trajectory import AveragedTrajectory, CharacteristicPoints, RunResult, TrajectoryPoint

__all__ = [
    "TRAJECTORY_COLUMNS",
    "AVERAGED_RUN_INDEX",
    "trajectory_csv",
    "parse_trajectory_csv",
    "experiment_summary",
]

TRAJECTORY_COLUMNS = (
    "run",
    "round",
    "i_fx_norm",
    "i_fy_norm",
    "train_err",
    "test_err",
    "avg_margin",
    "min_margin",
    "margin_var",
)

AVERAGED_RUN_INDEX = -1  # run column sentinel in trajectory_avg.csv


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def trajectory_csv(points, run_index: int) -> str:
    """One CSV per trajectory; pass AVERAGED_RUN_INDEX for averaged series."""
    out = io.StringIO()
    out.write(",".join(TRAJECTORY_COLUMNS) + "\n")
    for p in points:
        row = (
            str(run_index),
            str(p.round),
            _fmt(p.i_fx_norm),
            _fmt(p.i_fy_norm),
            _fmt(p.train_error),
            _fmt(p.test_error),
            _fmt(p.avg_margin),
            _fmt(p.min_margin),
            _fmt(p.margin_variance),
        )
        out.write(",".join(row) + "\n")
    return out.getvalue()


def parse_trajectory_csv(text: str) -> tuple[int, tuple[TrajectoryPoint, ...]]:
    """Inverse of trajectory_csv; returns (run_index, points)."""
    lines = [ln for ln in text.splitlines() if ln]
    if not lines or tuple(lines[0].split(",")) != TRAJECTORY_COLUMNS:
        raise ValueError("not a trajectory CSV")
    run_index = None
    points = []
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != len(TRAJECTORY_COLUMNS):
            raise ValueError(f"malformed row: {ln!r}")
        run_index = int(cells[0])
        points.append(
            TrajectoryPoint(
                round=int(cells[1]),
                i_fx_norm=float(cells[2]),
                i_fy_norm=float(cells[3]),
                train_error=float(cells[4]),
                test_error=float(cells[5]),
                avg_margin=float(cells[6]),
                min_margin=float(cells[7]),
                margin_variance=float(cells[8]),
            )
        )
    if run_index is None:
        raise ValueError("trajectory CSV has no data rows")
    return run_index, tuple(points)


def _characteristic_lines(c: CharacteristicPoints, points, indent: str) -> list[str]:
    # the ERM/compression phase boundary is reported both ways: the round
    # training error bottoms out, and the I(F;X) turning point
    fx_peak = max(points, key=lambda p: p.i_fx_norm)
    fx_peak_round = next(p.round for p in points if p.i_fx_norm == fx_peak.i_fx_norm)
    return [
        f"{indent}train_min_round: {c.train_min_round}",
        f"{indent}test_min_round: {c.test_min_round}",
        f"{indent}margin_max_round: {c.margin_max_round}",
        f"{indent}i_fx_peak_round: {fx_peak_round}",
        f"{indent}lmc_round: {'none' if c.lmc_round is None else c.lmc_round}",
        f"{indent}lmc_target: {_fmt(c.lmc_target[0])} {_fmt(c.lmc_target[1])}",
    ]


def experiment_summary(results: list[RunResult], averaged: AveragedTrajectory,
                       b: int, lmc_tolerance: float) -> str:
    """Characteristic rounds, LMC targets and noiselessness flags, per run
    and for the averaged series."""
    lines = [
        f"runs: {len(results)}",
        f"rounds: {len(averaged.points) - 1}",
        f"score_bins: {b}",
        f"lmc_tolerance: {_fmt(lmc_tolerance)}",
    ]
    for r in results:
        lines.append(f"run {r.run_index}:")
        lines.append(f"  seed: {r.seed}")
        lines.append(f"  noiseless_after_discretization: {r.noiseless_after_discretization}")
        lines.extend(_characteristic_lines(r.characteristic, r.trajectory, "  "))
        final = r.trajectory[-1]
        lines.append(f"  final_point: {_fmt(final.i_fx_norm)} {_fmt(final.i_fy_norm)}")
    lines.append("averaged:")
    lines.extend(_characteristic_lines(averaged.characteristic, averaged.points, "  "))
    final = averaged.points[-1]
    lines.append(f"  final_point: {_fmt(final.i_fx_norm)} {_fmt(final.i_fy_norm)}")
    return "\n".join(lines) + "\n"
