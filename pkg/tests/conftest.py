import numpy as np
import pytest

from boosttrace.datasets import (
    DiscretizedDataset,
    LabeledDataset,
    generate_artificial,
    joint_keys_for_bins,
)


def make_discretized(bin_indices, labels, b) -> DiscretizedDataset:
    """Assemble a DiscretizedDataset directly from bin indices (tests and
    verification suites construct instances without going through raw data)."""
    bins = np.asarray(bin_indices, dtype=np.int64)
    edges = np.tile(np.arange(b + 1, dtype=float), (bins.shape[1], 1))
    return DiscretizedDataset(bins, joint_keys_for_bins(bins, b), labels, b, edges)


def random_joint_counts(rng, max_support=6, max_count=20) -> dict:
    """Random small joint count table with at least one positive cell."""
    rows = int(rng.integers(1, max_support + 1))
    cols = int(rng.integers(1, max_support + 1))
    counts = {}
    for a in range(rows):
        for b in range(cols):
            c = int(rng.integers(0, max_count + 1))
            if c:
                counts[(a, b)] = c
    if not counts:
        counts[(0, 0)] = 1
    return counts


@pytest.fixture
def four_distinct_keys():
    """Four distinct joint keys with labels (+,+,-,-): H(X)=2, H(Y)=1."""
    return make_discretized([[0, 0], [0, 1], [1, 0], [1, 1]], [1, 1, -1, -1], b=2)


@pytest.fixture
def tiny_noiseless_dataset():
    """8 rows, 2 features, separable by the first feature; all rows distinct."""
    features = np.array(
        [
            [0.0, 3.0],
            [1.0, 1.0],
            [2.0, 7.0],
            [3.0, 5.0],
            [4.0, 2.0],
            [5.0, 6.0],
            [6.0, 0.0],
            [7.0, 4.0],
        ]
    )
    labels = np.array([1, 1, 1, 1, -1, -1, -1, -1])
    return LabeledDataset(features, labels)


@pytest.fixture(scope="session")
def artificial_fixture():
    """The noiseless artificial dataset used by the acceptance criteria."""
    return generate_artificial(500, 10, 2, 2, 0.0, 12345)
