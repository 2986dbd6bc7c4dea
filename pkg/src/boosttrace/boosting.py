"""Least-squares CART trees and stagewise gradient boosting.

The booster follows the classic functional-gradient recipe: fit a
regression tree to the loss pseudo-residuals each round, then replace each
leaf value with a single Newton step computed over the full training set,
and add the tree (scaled by the shrinkage factor) to the ensemble.

Raw scores are unbounded half-log-odds; `staged_scores` also returns
scores mapped into [-1, 1] as tanh(raw), i.e. 2*P(y=+1|x) - 1 under the
logistic link.  tanh is strictly monotone and sign-preserving, so error
rates and margin ordering are identical under raw and normalized scores,
and (being injective) it leaves all training-set information quantities
unchanged prior to binning.  Because it saturates, growing raw margins
drive the normalized scores into the extreme score bins, which is what
makes the ensemble's information-plane trajectory contract onto the
lossless-maximal-compression point once training error reaches zero.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BoostConfig",
    "RegressionTree",
    "BoostingEnsemble",
    "MarginStats",
    "fit_tree",
    "fit_boosting",
    "staged_scores",
    "staged_score_iter",
    "margin_stats",
    "error_rate",
    "ensemble_to_json",
    "ensemble_from_json",
]

EXPONENTIAL = "exponential"
DEVIANCE = "deviance"

_FORMAT_NAME = "boosttrace-ensemble"
_FORMAT_VERSION = 1


@dataclass(frozen=True)
class BoostConfig:
    """Boosting hyperparameters; the defaults are the headline protocol
    (100 depth-6 trees, exponential loss, no shrinkage, no subsampling)."""

    rounds: int = 100
    max_depth: int = 6
    loss: str = EXPONENTIAL
    shrinkage: float = 1.0
    subsample: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.rounds < 0:
            raise ValueError("rounds must be >= 0")
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        if self.loss not in (EXPONENTIAL, DEVIANCE):
            raise ValueError(f"loss must be '{EXPONENTIAL}' or '{DEVIANCE}'")
        if not (0.0 < self.shrinkage <= 1.0):
            raise ValueError("shrinkage must lie in (0, 1]")
        if not (0.0 < self.subsample <= 1.0):
            raise ValueError("subsample must lie in (0, 1]")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class RegressionTree:
    """Binary regression tree stored as parallel arrays in preorder.

    feature[i] >= 0 marks an internal node (left branch iff value <=
    threshold); feature[i] == -1 marks a leaf whose prediction is value[i].
    """

    feature: np.ndarray  # int32, -1 at leaves
    threshold: np.ndarray  # float64, nan at leaves
    value: np.ndarray  # float64, nan at internal nodes
    left: np.ndarray  # int32 child index, -1 at leaves
    right: np.ndarray

    def __post_init__(self):
        for name in ("feature", "left", "right"):
            object.__setattr__(self, name, _frozen(np.asarray(getattr(self, name), dtype=np.int32)))
        for name in ("threshold", "value"):
            object.__setattr__(self, name, _frozen(np.asarray(getattr(self, name), dtype=float)))

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    def depth(self) -> int:
        depths = np.zeros(self.n_nodes, dtype=int)
        for i in range(self.n_nodes):  # children follow parents in preorder
            if self.feature[i] >= 0:
                depths[self.left[i]] = depths[i] + 1
                depths[self.right[i]] = depths[i] + 1
        return int(depths.max())

    def apply(self, features) -> np.ndarray:
        """Leaf node index reached by every row."""
        X = _as_matrix(features)
        idx = np.zeros(X.shape[0], dtype=np.int64)
        while True:
            rows = np.nonzero(self.feature[idx] >= 0)[0]
            if rows.size == 0:
                return idx
            cur = idx[rows]
            go_left = X[rows, self.feature[cur]] <= self.threshold[cur]
            idx[rows] = np.where(go_left, self.left[cur], self.right[cur])

    def predict(self, features) -> np.ndarray:
        return self.value[self.apply(features)]

    def with_values(self, new_values: np.ndarray) -> "RegressionTree":
        return RegressionTree(self.feature, self.threshold, np.asarray(new_values, dtype=float), self.left, self.right)


def _as_matrix(features) -> np.ndarray:
    X = np.asarray(features, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    return X


def _best_split(X, y, rows, parent_sse):
    """Best (feature, threshold) by SSE reduction over midpoints between
    consecutive distinct sorted values; ties resolve to the smaller feature
    index, then the smaller threshold."""
    t = y[rows]
    m = t.size
    tsum = t.sum()
    tsq = (t * t).sum()
    best_red = 0.0
    best = None
    for j in range(X.shape[1]):
        v = X[rows, j]
        order = np.argsort(v, kind="stable")
        sv = v[order]
        st = t[order]
        cut = np.nonzero(sv[:-1] < sv[1:])[0]
        if cut.size == 0:
            continue
        cums = np.cumsum(st)
        cumsq = np.cumsum(st * st)
        lc = (cut + 1).astype(float)
        ls = cums[cut]
        left_sse = cumsq[cut] - ls * ls / lc
        rs = tsum - ls
        right_sse = (tsq - cumsq[cut]) - rs * rs / (m - lc)
        red = parent_sse - left_sse - right_sse
        k = int(np.argmax(red))  # first max, i.e. the smallest threshold
        if red[k] > best_red:
            best_red = float(red[k])
            best = (j, float((sv[cut[k]] + sv[cut[k] + 1]) / 2.0))
    return best


def fit_tree(features, targets, max_depth: int) -> RegressionTree:
    """Greedy least-squares CART; stops at max_depth, pure targets, or when
    no split reduces the error.  Leaves predict the target mean."""
    X = _as_matrix(features)
    y = np.asarray(targets, dtype=float)
    if X.shape[0] < 1:
        raise ValueError("need at least one row")
    if y.shape != (X.shape[0],):
        raise ValueError("targets must have one value per row")
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")

    nodes: list[tuple] = []

    def build(rows: np.ndarray, depth: int) -> int:
        idx = len(nodes)
        nodes.append(())  # reserve the preorder slot
        t = y[rows]
        split = None
        if depth < max_depth and t.size >= 2 and not np.all(t == t[0]):
            tsum = t.sum()
            parent_sse = float((t * t).sum() - tsum * tsum / t.size)
            split = _best_split(X, y, rows, parent_sse)
        if split is None:
            nodes[idx] = (-1, math.nan, float(t.mean()), -1, -1)
            return idx
        j, thr = split
        go_left = X[rows, j] <= thr
        left = build(rows[go_left], depth + 1)
        right = build(rows[~go_left], depth + 1)
        nodes[idx] = (j, thr, math.nan, left, right)
        return idx

    build(np.arange(X.shape[0]), 0)
    feature, threshold, value, left, right = (np.array(col) for col in zip(*nodes))
    return RegressionTree(feature, threshold, value, left, right)


@dataclass(frozen=True)
class BoostingEnsemble:
    """Staged additive tree model: raw_t(x) = F0 + shrinkage * sum_{s<=t} tree_s(x).

    max_abs_scores[t] records the training max-abs raw score after round t
    (index 0 covers the init-only model); it tracks how fast raw scores
    grow and rides along in the serialized record.
    """

    config: BoostConfig
    init_score: float
    trees: tuple[RegressionTree, ...]
    max_abs_scores: tuple[float, ...]

    def __post_init__(self):
        if len(self.max_abs_scores) != len(self.trees) + 1:
            raise ValueError("need one max-abs score per round 0..T")

    @property
    def rounds(self) -> int:
        return len(self.trees)


def _residuals(loss: str, y: np.ndarray, F: np.ndarray) -> np.ndarray:
    if loss == EXPONENTIAL:
        return y * np.exp(-y * F)
    with np.errstate(over="ignore"):  # exp overflow -> residual 0, the correct limit
        return 2.0 * y / (1.0 + np.exp(2.0 * y * F))


def _newton_values(tree, leaf_of, loss, y, F, residuals) -> np.ndarray:
    """One Newton step per leaf, over the full training rows in that leaf."""
    values = tree.value.copy()
    num = np.zeros(tree.n_nodes)
    den = np.zeros(tree.n_nodes)
    np.add.at(num, leaf_of, residuals)
    if loss == EXPONENTIAL:
        weight = np.abs(residuals)  # |y e^{-yF}| = e^{-yF}
    else:
        weight = np.abs(residuals) * (2.0 - np.abs(residuals))
    np.add.at(den, leaf_of, weight)
    leaves = tree.feature < 0
    if loss == EXPONENTIAL:
        # strictly positive unless every weight underflowed, in which case
        # the numerator underflowed too and the step is a no-op
        den = np.where(den > 0.0, den, 1.0)
    else:
        den = np.maximum(den, 1e-12)
    values[leaves] = num[leaves] / den[leaves]
    return values


def _max_abs(F: np.ndarray) -> float:
    m = float(np.max(np.abs(F)))
    return m if m > 0.0 else 1.0


def fit_boosting(train, cfg: BoostConfig) -> BoostingEnsemble:
    """Stagewise fit on a LabeledDataset; deterministic given cfg.seed."""
    X = train.features
    y = train.labels.astype(float)
    n = train.n
    lo = 1.0 / (2 * n)
    p_plus = min(max(float(np.mean(y == 1.0)), lo), 1.0 - lo)
    f0 = 0.5 * math.log(p_plus / (1.0 - p_plus))

    F = np.full(n, f0)
    max_abs = [_max_abs(F)]
    rng = np.random.default_rng(cfg.seed)
    k = math.ceil(cfg.subsample * n)
    trees = []
    for _ in range(cfg.rounds):
        r = _residuals(cfg.loss, y, F)
        sub = np.sort(rng.choice(n, size=k, replace=False))
        tree = fit_tree(X[sub], r[sub], cfg.max_depth)
        leaf_of = tree.apply(X)
        tree = tree.with_values(_newton_values(tree, leaf_of, cfg.loss, y, F, r))
        F = F + cfg.shrinkage * tree.value[leaf_of]
        trees.append(tree)
        max_abs.append(_max_abs(F))
    return BoostingEnsemble(cfg, f0, tuple(trees), tuple(max_abs))


def _normalize(raw: np.ndarray) -> np.ndarray:
    return np.tanh(raw)


def staged_scores(e: BoostingEnsemble, data, t: int) -> tuple[np.ndarray, np.ndarray]:
    """(raw, normalized) scores of the round-t prefix of the ensemble;
    normalized = tanh(raw)."""
    if not (0 <= t <= e.rounds):
        raise ValueError(f"round {t} out of range 0..{e.rounds}")
    X = data.features
    raw = np.full(X.shape[0], e.init_score)
    for tree in e.trees[:t]:
        raw = raw + e.config.shrinkage * tree.predict(X)
    return raw, _normalize(raw)


def staged_score_iter(e: BoostingEnsemble, data):
    """Yield (t, raw, normalized) for every round 0..T in one forward pass."""
    X = data.features
    raw = np.full(X.shape[0], e.init_score)
    yield 0, raw.copy(), _normalize(raw)
    for t, tree in enumerate(e.trees, start=1):
        raw = raw + e.config.shrinkage * tree.predict(X)
        yield t, raw.copy(), _normalize(raw)


@dataclass(frozen=True)
class MarginStats:
    """Functional margins m_i = y_i * f(x_i) plus summary statistics."""

    margins: np.ndarray
    average: float
    minimum: float
    variance: float  # population variance


def margin_stats(normalized_scores, labels) -> MarginStats:
    f = np.asarray(normalized_scores, dtype=float)
    y = np.asarray(labels, dtype=float)
    if f.shape != y.shape:
        raise ValueError("scores and labels must be equally long")
    m = y * f
    return MarginStats(
        margins=_frozen(m),
        average=float(m.mean()),
        minimum=float(m.min()),
        variance=float(m.var()),
    )


def error_rate(scores, labels) -> float:
    """Fraction of rows with sign(score) != label, where sign(0) := +1."""
    s = np.asarray(scores, dtype=float)
    y = np.asarray(labels)
    if s.shape != y.shape or s.size == 0:
        raise ValueError("scores and labels must be equally long and non-empty")
    predictions = np.where(s >= 0.0, 1, -1)
    return float(np.mean(predictions != y))


def _tree_records(tree: RegressionTree) -> list[dict]:
    records = []
    for i in range(tree.n_nodes):
        if tree.feature[i] < 0:
            records.append({"value": float(tree.value[i])})
        else:
            records.append(
                {
                    "feature": int(tree.feature[i]),
                    "threshold": float(tree.threshold[i]),
                    "left": int(tree.left[i]),
                    "right": int(tree.right[i]),
                }
            )
    return records


def _tree_from_records(records: list[dict]) -> RegressionTree:
    n = len(records)
    feature = np.full(n, -1, dtype=np.int32)
    threshold = np.full(n, math.nan)
    value = np.full(n, math.nan)
    left = np.full(n, -1, dtype=np.int32)
    right = np.full(n, -1, dtype=np.int32)
    for i, rec in enumerate(records):
        if "feature" in rec:
            feature[i] = rec["feature"]
            threshold[i] = rec["threshold"]
            left[i] = rec["left"]
            right[i] = rec["right"]
        else:
            value[i] = rec["value"]
    return RegressionTree(feature, threshold, value, left, right)


def ensemble_to_json(e: BoostingEnsemble) -> str:
    """Versioned self-describing record; floats round-trip exactly."""
    doc = {
        "format": _FORMAT_NAME,
        "version": _FORMAT_VERSION,
        "config": {
            "rounds": e.config.rounds,
            "max_depth": e.config.max_depth,
            "loss": e.config.loss,
            "shrinkage": e.config.shrinkage,
            "subsample": e.config.subsample,
            "seed": e.config.seed,
        },
        "init_score": e.init_score,
        "max_abs_scores": list(e.max_abs_scores),
        "trees": [_tree_records(t) for t in e.trees],
    }
    return json.dumps(doc, indent=1)


def ensemble_from_json(text: str) -> BoostingEnsemble:
    doc = json.loads(text)
    if doc.get("format") != _FORMAT_NAME:
        raise ValueError("not an ensemble record")
    if doc.get("version") != _FORMAT_VERSION:
        raise ValueError(f"unsupported ensemble record version {doc.get('version')!r}")
    return BoostingEnsemble(
        config=BoostConfig(**doc["config"]),
        init_score=float(doc["init_score"]),
        trees=tuple(_tree_from_records(r) for r in doc["trees"]),
        max_abs_scores=tuple(float(v) for v in doc["max_abs_scores"]),
    )
