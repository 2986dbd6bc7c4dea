"""Exact plug-in entropy and mutual information over finite count tables.

Everything here operates on integer count tables under the empirical
(uniform over rows) measure, in bits (log base 2).  Terms with zero
probability contribute 0, and terms whose conditional probability equals 1
contribute exactly 0.0 in floating point as well, so identities such as
"all groups pure implies zero conditional entropy" hold exactly, not just
to rounding.  Summation always iterates keys in sorted order, which keeps
results independent of table construction order.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .datasets import DataError

__all__ = [
    "EmpiricalJoint",
    "InfoPlanePoint",
    "ModelClassification",
    "entropy",
    "conditional_entropy",
    "mutual_information",
    "info_plane_point",
    "classify_model",
    "lmc_gap",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9  # absolute tolerance in bits for equality checks on exact counts


@dataclass(frozen=True)
class EmpiricalJoint:
    """Finite joint count table over pairs (key_a, key_b).

    Zero cells are dropped on construction; `total` is the sample size n.
    """

    counts: Mapping[tuple[Hashable, Hashable], int]
    total: int = field(init=False)

    def __post_init__(self):
        cleaned: dict[tuple[Hashable, Hashable], int] = {}
        for cell, c in self.counts.items():
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"count for {cell!r} must be a non-negative integer")
            if c:
                cleaned[cell] = c
        if not cleaned:
            raise ValueError("empty count table")
        object.__setattr__(self, "counts", cleaned)
        object.__setattr__(self, "total", sum(cleaned.values()))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Hashable, Hashable]]) -> "EmpiricalJoint":
        return cls(Counter((a, b) for a, b in pairs))

    def marginal_a(self) -> dict[Hashable, int]:
        out: dict[Hashable, int] = {}
        for (a, _), c in self.counts.items():
            out[a] = out.get(a, 0) + c
        return out

    def marginal_b(self) -> dict[Hashable, int]:
        out: dict[Hashable, int] = {}
        for (_, b), c in self.counts.items():
            out[b] = out.get(b, 0) + c
        return out

    def transpose(self) -> "EmpiricalJoint":
        return EmpiricalJoint({(b, a): c for (a, b), c in self.counts.items()})


def entropy(counts: Mapping[Hashable, int]) -> float:
    """H = -sum p log2 p over a marginal count table."""
    total = sum(counts.values())
    if total < 1:
        raise ValueError("empty count table")
    h = 0.0
    for k in sorted(counts):
        c = counts[k]
        if c:
            h += (c / total) * math.log2(total / c)
    return h


def conditional_entropy(j: EmpiricalJoint) -> float:
    """H(A|B) = -sum p(a,b) log2 p(a|b); exactly 0.0 when A is determined by B."""
    marg_b = j.marginal_b()
    n = j.total
    h = 0.0
    for cell in sorted(j.counts):
        c = j.counts[cell]
        h += (c / n) * math.log2(marg_b[cell[1]] / c)
    return h


def mutual_information(j: EmpiricalJoint) -> float:
    """I(A;B) by direct summation of p(a,b) log2 [p(a,b) / (p(a)p(b))].

    Symmetric in its arguments and equal to H(A) - H(A|B) up to float
    rounding; exactly 0.0 under exact independence of the counts.
    """
    marg_a = j.marginal_a()
    marg_b = j.marginal_b()
    n = j.total
    i = 0.0
    for cell in sorted(j.counts):
        c = j.counts[cell]
        i += (c / n) * math.log2((n * c) / (marg_a[cell[0]] * marg_b[cell[1]]))
    return i


@dataclass(frozen=True)
class InfoPlanePoint:
    """One model's position on the entropy-normalized information plane.

    The plane coordinates are (i_fx_norm, i_fy_norm) = (I(F;X)/H(X),
    I(F;Y)/H(Y)); the raw quantities (bits) ride along for diagnostics and
    for LMC-gap computations.
    """

    i_fx_norm: float
    i_fy_norm: float
    i_fx: float
    i_fy: float
    h_x: float
    h_y: float
    h_f: float
    i_xy: float


LOSSLESS = "lossless"
LOSSY = "lossy"
MAXIMALLY_COMPRESSED = "maximally_compressed"
UNDERCOMPRESSED = "undercompressed"
NOISELESS = "noiseless"
NOISY = "noisy"


@dataclass(frozen=True)
class ModelClassification:
    losslessness: str
    compression: str
    noise: str

    def as_tuple(self) -> tuple[str, str, str]:
        return (self.losslessness, self.compression, self.noise)


def info_plane_point(f_bins, x_keys, labels) -> InfoPlanePoint:
    """Build the (F,X), (F,Y), (X,Y) empirical joints for one sample and
    return all raw and normalized information-plane quantities.

    Deterministic models make F a function of X, so I(F;X) = H(F) exactly;
    likewise a noiseless sample gives I(X;Y) = H(Y) exactly.  Both fall out
    of computing mutual informations as entropy minus conditional entropy,
    where the conditional term is an exact 0.0.
    """
    f_bins = list(f_bins)
    x_keys = list(x_keys)
    labels = list(labels)
    if not (len(f_bins) == len(x_keys) == len(labels)) or not f_bins:
        raise ValueError("f_bins, x_keys and labels must be equally long and non-empty")
    h_f = entropy(Counter(f_bins))
    h_x = entropy(Counter(x_keys))
    h_y = entropy(Counter(labels))
    if h_x == 0.0 or h_y == 0.0:
        raise DataError("degenerate axis: H(X) and H(Y) must be positive to normalize")
    i_fx = h_f - conditional_entropy(EmpiricalJoint.from_pairs(zip(f_bins, x_keys)))
    i_fy = h_y - conditional_entropy(EmpiricalJoint.from_pairs(zip(labels, f_bins)))
    i_xy = h_y - conditional_entropy(EmpiricalJoint.from_pairs(zip(labels, x_keys)))
    return InfoPlanePoint(
        i_fx_norm=i_fx / h_x,
        i_fy_norm=i_fy / h_y,
        i_fx=i_fx,
        i_fy=i_fy,
        h_x=h_x,
        h_y=h_y,
        h_f=h_f,
        i_xy=i_xy,
    )


def classify_model(p: InfoPlanePoint, tol: float = DEFAULT_TOL) -> ModelClassification:
    """Classify against the defining equalities, at absolute tolerance in bits:
    lossless iff I(F;Y) = I(X;Y), maximally compressed iff I(F;X) = I(F;Y),
    noiseless iff I(X;Y) = H(Y)."""
    if tol < 0:
        raise ValueError("tolerance must be >= 0")
    return ModelClassification(
        losslessness=LOSSLESS if abs(p.i_fy - p.i_xy) <= tol else LOSSY,
        compression=MAXIMALLY_COMPRESSED if abs(p.i_fx - p.i_fy) <= tol else UNDERCOMPRESSED,
        noise=NOISELESS if abs(p.i_xy - p.h_y) <= tol else NOISY,
    )


def lmc_gap(p: InfoPlanePoint) -> float:
    """Distance (bits) from the lossless-maximal-compression point
    I(F;X) = I(F;Y) = I(X;Y); zero iff the model is an LMC."""
    return max(abs(p.i_fy - p.i_xy), abs(p.i_fx - p.i_xy))
