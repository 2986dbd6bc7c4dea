"""Dataset loading, generation, binarization, splitting and discretization.

All operations are pure functions of their inputs plus an explicit seed.
Constructed datasets are immutable (array buffers are marked read-only),
so they can be shared freely across threads.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DataError",
    "LabeledDataset",
    "MulticlassDataset",
    "DiscretizedDataset",
    "SplitSpec",
    "BenchmarkInfo",
    "BENCHMARK_DATASETS",
    "load_csv",
    "load_csv_text",
    "dataset_to_csv",
    "write_csv",
    "binarize_multiclass",
    "generate_artificial",
    "split",
    "discretize",
    "joint_keys_for_bins",
    "is_noiseless",
]


class DataError(Exception):
    """Unusable input data: missing/garbled files, empty or degenerate datasets."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class LabeledDataset:
    """Feature matrix with binary labels in {-1, +1}."""

    features: np.ndarray  # (n, d) float
    labels: np.ndarray  # (n,) int, each -1 or +1
    feature_names: tuple[str, ...] | None = None

    def __post_init__(self):
        f = np.asarray(self.features, dtype=float)
        y = np.asarray(self.labels)
        if f.ndim != 2 or f.shape[0] < 1 or f.shape[1] < 1:
            raise ValueError("features must be a non-empty n x d matrix")
        if y.shape != (f.shape[0],):
            raise ValueError("labels must have exactly one entry per row")
        if not np.isfinite(f).all():
            raise ValueError("features contain non-finite values")
        y = y.astype(np.int64)
        if not np.isin(y, (-1, 1)).all():
            raise ValueError("labels must be -1 or +1")
        if self.feature_names is not None and len(self.feature_names) != f.shape[1]:
            raise ValueError("feature_names must name every feature column")
        object.__setattr__(self, "features", _frozen(f))
        object.__setattr__(self, "labels", _frozen(y))

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    def subset(self, rows) -> "LabeledDataset":
        return LabeledDataset(self.features[rows], self.labels[rows], self.feature_names)


@dataclass(frozen=True)
class MulticlassDataset:
    """Feature matrix with arbitrary class tokens (pre-binarization)."""

    features: np.ndarray
    class_labels: tuple[str, ...]

    def __post_init__(self):
        f = np.asarray(self.features, dtype=float)
        if f.ndim != 2 or f.shape[0] < 1 or f.shape[1] < 1:
            raise ValueError("features must be a non-empty n x d matrix")
        if not np.isfinite(f).all():
            raise ValueError("features contain non-finite values")
        tokens = tuple(str(t) for t in self.class_labels)
        if len(tokens) != f.shape[0]:
            raise ValueError("class_labels must have exactly one entry per row")
        if len(set(tokens)) < 2:
            raise ValueError("need at least 2 distinct class tokens")
        object.__setattr__(self, "features", _frozen(f))
        object.__setattr__(self, "class_labels", tokens)

    @property
    def n(self) -> int:
        return self.features.shape[0]


@dataclass(frozen=True)
class SplitSpec:
    """Train/test split parameters. The default 0.5 matches 50%-50% splits."""

    test_fraction: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.test_fraction < 1.0):
            raise ValueError("test_fraction must lie strictly between 0 and 1")


@dataclass(frozen=True)
class DiscretizedDataset:
    """Per-feature bin indices plus one collision-free joint key per row.

    The joint key is the positional encoding sum_j bins[j] * b**j computed
    with exact integer arithmetic, so identical bin tuples always share a
    key and distinct tuples never collide.
    """

    bin_indices: np.ndarray  # (n, d) int in [0, b)
    joint_keys: tuple[int, ...]
    labels: np.ndarray  # (n,) -1/+1
    b: int
    bin_edges: np.ndarray  # (d, b+1), strictly increasing per feature

    def __post_init__(self):
        bins = np.asarray(self.bin_indices, dtype=np.int64)
        y = np.asarray(self.labels, dtype=np.int64)
        edges = np.asarray(self.bin_edges, dtype=float)
        if bins.ndim != 2 or bins.shape[0] < 1:
            raise ValueError("bin_indices must be a non-empty n x d matrix")
        n, d = bins.shape
        if self.b < 2:
            raise ValueError("bin count b must be >= 2")
        if bins.min() < 0 or bins.max() >= self.b:
            raise ValueError("bin indices must lie in [0, b)")
        if y.shape != (n,) or not np.isin(y, (-1, 1)).all():
            raise ValueError("labels must be one -1/+1 value per row")
        if len(self.joint_keys) != n:
            raise ValueError("joint_keys must have one key per row")
        if edges.shape != (d, self.b + 1) or not (np.diff(edges, axis=1) > 0).all():
            raise ValueError("bin_edges must be d x (b+1), strictly increasing per feature")
        object.__setattr__(self, "bin_indices", _frozen(bins))
        object.__setattr__(self, "labels", _frozen(y))
        object.__setattr__(self, "bin_edges", _frozen(edges))
        object.__setattr__(self, "joint_keys", tuple(self.joint_keys))

    @property
    def n(self) -> int:
        return self.bin_indices.shape[0]

    @property
    def d(self) -> int:
        return self.bin_indices.shape[1]


@dataclass(frozen=True)
class BenchmarkInfo:
    """Registered characteristics of a benchmark dataset: instances used
    (after discarding missing-value rows and balancing), feature count, and
    class count before binarization."""

    instances: int
    features: int
    classes: int


# UCI-repository benchmarks; fetch them yourself (local CSV only) and
# compare against these registered characteristics.
BENCHMARK_DATASETS: dict[str, BenchmarkInfo] = {
    "parkinsons": BenchmarkInfo(96, 22, 2),
    "sonar": BenchmarkInfo(194, 60, 2),
    "heart": BenchmarkInfo(240, 13, 2),
    "ionosphere": BenchmarkInfo(252, 34, 2),
    "semeion": BenchmarkInfo(322, 256, 10),
    "congress": BenchmarkInfo(336, 16, 2),
    "wdbc": BenchmarkInfo(424, 31, 2),
    "credit": BenchmarkInfo(600, 24, 2),
    "landsat": BenchmarkInfo(1252, 36, 6),
    "splice": BenchmarkInfo(1524, 60, 3),
    "musk2": BenchmarkInfo(2034, 166, 2),
    "krvskp": BenchmarkInfo(3054, 36, 2),
    "waveform": BenchmarkInfo(3306, 40, 3),
    "mushroom": BenchmarkInfo(7832, 21, 2),
}


def load_csv_text(text: str) -> LabeledDataset | MulticlassDataset:
    """Parse CSV content: header row, numeric feature columns, final column 'label'.

    Rows containing a missing (empty) or unparseable cell are discarded.
    Returns a LabeledDataset when the surviving labels are exactly {-1, +1}
    tokens, otherwise a MulticlassDataset keeping the raw tokens.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty file: missing header row") from None
    if len(header) < 2:
        raise DataError("need at least one feature column plus a 'label' column")
    if header[-1].strip() != "label":
        raise DataError("last column must be named 'label'")
    names = tuple(h.strip() for h in header[:-1])

    rows: list[list[float]] = []
    tokens: list[str] = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(header):
            raise DataError(f"line {reader.line_num}: expected {len(header)} cells, got {len(row)}")
        label = row[-1].strip()
        if not label:
            continue  # missing label: discard row
        values = []
        for cell in row[:-1]:
            try:
                v = float(cell.strip())
            except ValueError:
                break
            if not math.isfinite(v):
                break
            values.append(v)
        else:
            rows.append(values)
            tokens.append(label)
    if not rows:
        raise DataError("no usable rows remain after discarding rows with missing values")

    features = np.array(rows, dtype=float)
    labels = _binary_labels(tokens)
    if labels is not None:
        return LabeledDataset(features, labels, feature_names=names)
    return MulticlassDataset(features, tuple(tokens))


def _binary_labels(tokens: list[str]) -> np.ndarray | None:
    out = np.empty(len(tokens), dtype=np.int64)
    for i, t in enumerate(tokens):
        try:
            v = float(t)
        except ValueError:
            return None
        if v == 1.0:
            out[i] = 1
        elif v == -1.0:
            out[i] = -1
        else:
            return None
    return out


def load_csv(path) -> LabeledDataset | MulticlassDataset:
    """Load a dataset file; see load_csv_text for the format contract."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}") from e
    return load_csv_text(text)


def dataset_to_csv(d: LabeledDataset) -> str:
    """Serialize in the load_csv format; floats use shortest exact repr."""
    names = d.feature_names or tuple(f"f{j}" for j in range(d.d))
    lines = [",".join(names) + ",label"]
    for row, y in zip(d.features, d.labels):
        lines.append(",".join(repr(float(v)) for v in row) + f",{int(y)}")
    return "\n".join(lines) + "\n"


def write_csv(d: LabeledDataset, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(dataset_to_csv(d))


def binarize_multiclass(d: MulticlassDataset, seed: int) -> LabeledDataset:
    """Minority class becomes +1; an equal-sized uniform sample (without
    replacement) from all remaining classes pooled together becomes -1.

    Count ties are broken toward the lexicographically smallest token, so
    the result is deterministic given the seed.
    """
    counts = Counter(d.class_labels)
    minority = min(counts.items(), key=lambda kv: (kv[1], kv[0]))[0]
    pos = [i for i, t in enumerate(d.class_labels) if t == minority]
    pool = [i for i, t in enumerate(d.class_labels) if t != minority]
    if len(pool) < len(pos):
        raise DataError(
            f"cannot balance: minority class has {len(pos)} rows but only "
            f"{len(pool)} rows remain in the other classes"
        )
    rng = np.random.default_rng(seed)
    neg = np.sort(rng.choice(np.asarray(pool), size=len(pos), replace=False))
    rows = np.concatenate([np.asarray(pos, dtype=np.int64), neg.astype(np.int64)])
    labels = np.concatenate([np.ones(len(pos), dtype=np.int64), -np.ones(len(pos), dtype=np.int64)])
    return LabeledDataset(d.features[rows], labels)


def generate_artificial(
    n: int,
    d: int,
    n_informative: int,
    clusters_per_class: int,
    flip_prob: float,
    seed: int,
) -> LabeledDataset:
    """Gaussian clusters around distinct hypercube vertices, plus noise features.

    2*clusters_per_class centroids sit at seed-chosen distinct vertices of
    {-1,+1}^n_informative and are assigned alternately to class -1 / +1.
    Each centroid receives exactly n / (2*clusters_per_class) points with
    unit-variance Gaussian spread in the informative dimensions; the other
    d - n_informative features are independent standard normals.  Finally,
    each label flips independently with probability flip_prob.
    """
    if not (1 <= n_informative <= d):
        raise ValueError("need 1 <= n_informative <= d")
    if clusters_per_class < 1:
        raise ValueError("clusters_per_class must be >= 1")
    if not (0.0 <= flip_prob <= 1.0):
        raise ValueError("flip_prob must lie in [0, 1]")
    n_centroids = 2 * clusters_per_class
    if n % n_centroids != 0:
        raise ValueError("n must be divisible by 2 * clusters_per_class")
    if n_centroids > 2**n_informative:
        raise ValueError(
            f"{n_centroids} clusters need {n_centroids} distinct vertices but the "
            f"{n_informative}-dimensional hypercube has only {2**n_informative}"
        )

    rng = np.random.default_rng(seed)
    vertex_ids = rng.choice(2**n_informative, size=n_centroids, replace=False)
    per_cluster = n // n_centroids

    blocks = []
    labels = np.empty(n, dtype=np.int64)
    for i, v in enumerate(vertex_ids):
        centroid = np.array(
            [1.0 if (int(v) >> j) & 1 else -1.0 for j in range(n_informative)]
        )
        blocks.append(centroid + rng.standard_normal((per_cluster, n_informative)))
        labels[i * per_cluster : (i + 1) * per_cluster] = -1 if i % 2 == 0 else 1
    informative = np.vstack(blocks)
    if d > n_informative:
        noise = rng.standard_normal((n, d - n_informative))
        features = np.hstack([informative, noise])
    else:
        features = informative
    if flip_prob > 0.0:
        flips = rng.random(n) < flip_prob
        labels = np.where(flips, -labels, labels)
    return LabeledDataset(features, labels)


def split(d: LabeledDataset, s: SplitSpec) -> tuple[LabeledDataset, LabeledDataset]:
    """Seeded uniform permutation; the first ceil((1-test_fraction)*n) rows train."""
    rng = np.random.default_rng(s.seed)
    perm = rng.permutation(d.n)
    train_size = math.ceil((1.0 - s.test_fraction) * d.n)
    if train_size <= 0 or train_size >= d.n:
        raise ValueError(f"test_fraction={s.test_fraction} leaves an empty side for n={d.n}")
    return d.subset(perm[:train_size]), d.subset(perm[train_size:])


def joint_keys_for_bins(bin_indices: np.ndarray, b: int) -> tuple[int, ...]:
    """Positional encoding sum_j bins[j] * b**j per row, as exact Python ints."""
    keys = []
    for row in np.asarray(bin_indices, dtype=np.int64):
        key = 0
        for v in row[::-1]:
            key = key * b + int(v)
        keys.append(key)
    return tuple(keys)


def discretize(train: LabeledDataset, apply_to: LabeledDataset, b: int) -> DiscretizedDataset:
    """Equal-width bins over the training range of each feature.

    Value v maps to floor((v - min) / (max - min) * b), clamped into
    [0, b-1]; rows of apply_to outside the training range clamp to the end
    bins, and constant training features map everything to bin 0.
    """
    if b < 2:
        raise ValueError("bin count b must be >= 2")
    if train.d != apply_to.d:
        raise ValueError("train and apply_to must share the feature count")
    mins = train.features.min(axis=0)
    spans = train.features.max(axis=0) - mins
    spans = np.where(spans == 0.0, 1.0, spans)
    raw = np.floor((apply_to.features - mins) / spans * b)
    bins = np.clip(raw, 0, b - 1).astype(np.int64)
    edges = mins[:, None] + np.arange(b + 1)[None, :] * (spans[:, None] / b)
    return DiscretizedDataset(
        bin_indices=bins,
        joint_keys=joint_keys_for_bins(bins, b),
        labels=apply_to.labels,
        b=b,
        bin_edges=edges,
    )


def is_noiseless(d: DiscretizedDataset | LabeledDataset) -> bool:
    """True iff no two rows share a feature vector (joint key) with different labels."""
    if isinstance(d, DiscretizedDataset):
        pairs = zip(d.joint_keys, d.labels)
    else:
        pairs = ((row.tobytes(), y) for row, y in zip(d.features, d.labels))
    seen: dict = {}
    for key, y in pairs:
        if seen.setdefault(key, y) != y:
            return False
    return True
