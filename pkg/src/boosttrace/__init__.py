"""Gradient boosting instrumented for information-plane trajectory analysis.

Core library layout:

- `datasets`: loading, artificial data generation, splits, discretization
- `infotheory`: exact plug-in entropies / mutual informations, plane points
- `boosting`: CART trees, stagewise boosting, margins, serialization
- `trajectory`: per-round trajectories, characteristic points, experiments
- `verify`: brute-force oracles for the lemma/theorem/table equivalences
- `service` + `cli`: HTTP front end and its thin command-line client
"""

from .boosting import (
    BoostConfig,
    BoostingEnsemble,
    MarginStats,
    RegressionTree,
    error_rate,
    fit_boosting,
    fit_tree,
    margin_stats,
    staged_scores,
)
from .datasets import (
    DataError,
    DiscretizedDataset,
    LabeledDataset,
    MulticlassDataset,
    SplitSpec,
    binarize_multiclass,
    discretize,
    generate_artificial,
    is_noiseless,
    load_csv,
    split,
)
from .infotheory import (
    EmpiricalJoint,
    InfoPlanePoint,
    ModelClassification,
    classify_model,
    conditional_entropy,
    entropy,
    info_plane_point,
    lmc_gap,
    mutual_information,
)
from .trajectory import (
    AveragedTrajectory,
    CharacteristicPoints,
    RunResult,
    TrajectoryPoint,
    average_trajectories,
    compute_trajectory,
    detect_characteristic_points,
    run_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "BoostConfig",
    "BoostingEnsemble",
    "MarginStats",
    "RegressionTree",
    "error_rate",
    "fit_boosting",
    "fit_tree",
    "margin_stats",
    "staged_scores",
    "DataError",
    "DiscretizedDataset",
    "LabeledDataset",
    "MulticlassDataset",
    "SplitSpec",
    "binarize_multiclass",
    "discretize",
    "generate_artificial",
    "is_noiseless",
    "load_csv",
    "split",
    "EmpiricalJoint",
    "InfoPlanePoint",
    "ModelClassification",
    "classify_model",
    "conditional_entropy",
    "entropy",
    "info_plane_point",
    "lmc_gap",
    "mutual_information",
    "AveragedTrajectory",
    "CharacteristicPoints",
    "RunResult",
    "TrajectoryPoint",
    "average_trajectories",
    "compute_trajectory",
    "detect_characteristic_points",
    "run_experiment",
    "__version__",
]
