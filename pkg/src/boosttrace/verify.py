"""Brute-force oracles and equivalence checks on small instances.

Every check here compares two or three *independent* computations of the
same predicate and demands exact agreement:

- lemma1: duplicate-key conflict scan  <->  H(Y|X) = 0  <->  zero majority-vote risk
- lemma2: label-pure score groups     <->  I(F;Y) = I(X;Y), with an explicit
  injective relabeling witness achieving zero error when lossless
- lemma3: per-preimage constancy of P(Y=1|X=x), decided with exact integer
  cross-multiplication  <->  I(F;Y) = I(X;Y)
- theorem1: zero LMC gap  <->  existence of a two-value margin-maximizer
  relabeling witness
- table1: concrete (dataset, model) witnesses for all eight scenario rows,
  each asserted against its full equality/inequality chain

The information quantities used on the right-hand sides are computed by a
deliberately naive direct-summation estimator, kept independent of the
`infotheory` module so the two act as oracles for each other.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .datasets import DiscretizedDataset, is_noiseless, joint_keys_for_bins

__all__ = [
    "RelabelingWitness",
    "CheckReport",
    "MI_EQUALITY_TOL",
    "STRICT_GAP_TOL",
    "brute_entropy",
    "brute_conditional_entropy",
    "brute_mutual_information",
    "empirical_risk_minimizer",
    "check_lemma1",
    "check_lemma2",
    "check_lemma3",
    "check_theorem1",
    "check_table1",
    "TABLE1_SCENARIOS",
    "random_datasets",
    "random_noisy_model_pairs",
    "random_noiseless_model_pairs",
    "lemma1_suite",
    "lemma2_suite",
    "lemma3_suite",
    "theorem1_suite",
    "table1_suite",
    "run_all_checks",
]

MI_EQUALITY_TOL = 1e-10  # bits; plug-in values of small integer tables are exact rationals
STRICT_GAP_TOL = 1e-9  # bits; strict inequalities must clear this margin


# ---------------------------------------------------------------------------
# independent direct-summation estimators (the brute-force oracle side)

def brute_entropy(counts) -> float:
    """H from a marginal count table, the one-line plug-in formula."""
    n = sum(counts.values())
    if n < 1:
        raise ValueError("empty count table")
    return -sum((c / n) * math.log2(c / n) for c in counts.values() if c)


def brute_conditional_entropy(pairs) -> float:
    """H(A|B) = -sum p(a,b) log2 p(a|b) from raw (a, b) outcome pairs."""
    pairs = list(pairs)
    joint = Counter(pairs)
    b_marg = Counter(b for _, b in pairs)
    n = len(pairs)
    h = 0.0
    for (a, b), c in joint.items():
        h -= (c / n) * math.log2(c / b_marg[b])
    return h


def brute_mutual_information(pairs) -> float:
    """I(A;B) = sum p(a,b) log2 [p(a,b) / (p(a) p(b))] from raw pairs."""
    pairs = list(pairs)
    joint = Counter(pairs)
    a_marg = Counter(a for a, _ in pairs)
    b_marg = Counter(b for _, b in pairs)
    n = len(pairs)
    i = 0.0
    for (a, b), c in joint.items():
        p_ab = c / n
        i += p_ab * math.log2(p_ab / ((a_marg[a] / n) * (b_marg[b] / n)))
    return i


# ---------------------------------------------------------------------------
# reports and witnesses

@dataclass(frozen=True)
class RelabelingWitness:
    """Injective partial map on observed score values realizing the
    invertible post-transformation g; achieved_error is the empirical risk
    of sign(g(f(x)))."""

    mapping: dict
    achieved_error: float

    def __post_init__(self):
        values = list(self.mapping.values())
        if len(set(values)) != len(values):
            raise ValueError("witness mapping must be injective")


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    details: tuple[dict, ...]

    def to_text(self) -> str:
        lines = [f"check: {self.name}", f"passed: {self.passed}", f"instances: {len(self.details)}"]
        for i, det in enumerate(self.details):
            if det.get("passed", True):
                continue
            lines.append(f"  FAIL [{i}] " + ", ".join(f"{k}={v!r}" for k, v in det.items()))
        if self.passed:
            lines.append("  all instances agree")
        return "\n".join(lines) + "\n"


def merge_reports(name: str, reports) -> CheckReport:
    """Fold per-instance reports into one suite report."""
    reports = list(reports)
    details = []
    for r in reports:
        if len(r.details) == 1:
            details.append({**r.details[0], "passed": r.passed})
        else:
            details.append({"passed": r.passed, "name": r.name, "sub": r.details})
    return CheckReport(name=name, passed=all(r.passed for r in reports), details=tuple(details))


# ---------------------------------------------------------------------------
# empirical risk minimization

def empirical_risk_minimizer(d: DiscretizedDataset) -> tuple[dict, float]:
    """Majority label per joint key (ties predict +1) and its empirical risk."""
    pos: Counter = Counter()
    tot: Counter = Counter()
    for key, y in zip(d.joint_keys, d.labels):
        tot[key] += 1
        if y == 1:
            pos[key] += 1
    label_map = {}
    errors = 0
    for key, t in tot.items():
        p = pos[key]
        label_map[key] = 1 if 2 * p >= t else -1
        errors += t - p if label_map[key] == 1 else p
    return label_map, errors / d.n


# ---------------------------------------------------------------------------
# lemma 1: noiselessness triple equivalence

def check_lemma1(instances) -> CheckReport:
    """Exact three-way agreement: conflict scan <-> H(Y|X)=0 <-> zero ERM risk."""
    details = []
    for d in instances:
        scan = is_noiseless(d)
        h_cond = brute_conditional_entropy(zip(d.labels.tolist(), d.joint_keys))
        zero_entropy = h_cond == 0.0
        _, risk = empirical_risk_minimizer(d)
        zero_risk = risk == 0.0
        ok = scan == zero_entropy == zero_risk
        details.append(
            {"passed": ok, "scan": scan, "h_y_given_x": h_cond, "erm_risk": risk}
        )
    return CheckReport("lemma1", all(det["passed"] for det in details), tuple(details))


# ---------------------------------------------------------------------------
# lemma 2: losslessness <-> zero-risk relabeling witness (noiseless data)

def _score_groups(scores, labels):
    groups: dict = {}
    for s, y in zip(scores, labels):
        groups.setdefault(s, []).append(int(y))
    return groups


def check_lemma2(scores, d: DiscretizedDataset) -> tuple[bool, RelabelingWitness | None]:
    """Losslessness via label-pure score preimages, cross-checked against the
    brute-force identity I(F;Y) = I(X;Y); when lossless, constructs the
    injective witness g(s) = (2 P(Y=1|F=s) - 1) (s+2)/3 with zero error."""
    if not is_noiseless(d):
        raise ValueError("lemma 2 applies to noiseless datasets only")
    scores = [float(s) for s in scores]
    labels = d.labels.tolist()
    groups = _score_groups(scores, labels)
    pure = all(len(set(ys)) == 1 for ys in groups.values())

    i_fy = brute_mutual_information(list(zip(scores, labels)))
    i_xy = brute_mutual_information(list(zip(d.joint_keys, labels)))
    mi_equal = abs(i_fy - i_xy) <= MI_EQUALITY_TOL
    if pure != mi_equal:
        raise AssertionError(
            f"internal disagreement: purity={pure} but I(F;Y)={i_fy}, I(X;Y)={i_xy}"
        )
    if not pure:
        return False, None

    mapping = {}
    for s, ys in groups.items():
        p_pos = 1.0 if ys[0] == 1 else 0.0
        mapping[s] = (2.0 * p_pos - 1.0) * ((s + 2.0) / 3.0)
    relabeled = [mapping[s] for s in scores]
    err = sum(1 for g, y in zip(relabeled, labels) if (1 if g >= 0 else -1) != y) / len(labels)
    return True, RelabelingWitness(mapping, err)


# ---------------------------------------------------------------------------
# lemma 3: losslessness <-> constancy of P(Y=1|X=x) on score preimages

def check_lemma3(scores, d: DiscretizedDataset) -> CheckReport:
    """Exact agreement between integer-arithmetic constancy of the
    conditional class probability on every score preimage and the
    brute-force equality I(F;Y) = I(X;Y); valid on noisy data too."""
    scores = [float(s) for s in scores]
    labels = d.labels.tolist()
    per_key: dict = {}
    for key, y in zip(d.joint_keys, labels):
        p, t = per_key.get(key, (0, 0))
        per_key[key] = (p + (1 if y == 1 else 0), t + 1)

    key_score = {}
    for key, s in zip(d.joint_keys, scores):
        if key_score.setdefault(key, s) != s:
            raise ValueError("model outputs must be constant per joint key")

    preimages: dict = {}
    for key, s in key_score.items():
        preimages.setdefault(s, []).append(key)

    constant = True
    for keys in preimages.values():
        p0, t0 = per_key[keys[0]]
        for k in keys[1:]:
            p, t = per_key[k]
            if p0 * t != p * t0:  # exact rational comparison p0/t0 == p/t
                constant = False
                break
        if not constant:
            break

    i_fy = brute_mutual_information(list(zip(scores, labels)))
    i_xy = brute_mutual_information(list(zip(d.joint_keys, labels)))
    mi_equal = abs(i_fy - i_xy) <= MI_EQUALITY_TOL
    ok = constant == mi_equal
    return CheckReport(
        "lemma3",
        ok,
        (
            {
                "passed": ok,
                "constant_conditional": constant,
                "i_fy": i_fy,
                "i_xy": i_xy,
            },
        ),
    )


# ---------------------------------------------------------------------------
# theorem 1: LMC <-> two-value margin-maximizer witness (noiseless data)

def check_theorem1(scores, d: DiscretizedDataset) -> CheckReport:
    """Exact agreement between lmc_gap = 0 and the existence of an injective
    relabeling collapsing all scores onto two label-pure values s+ != s-."""
    if not is_noiseless(d):
        raise ValueError("theorem 1 applies to noiseless datasets only")
    scores = [float(s) for s in scores]
    labels = d.labels.tolist()

    i_fy = brute_mutual_information(list(zip(scores, labels)))
    i_xy = brute_mutual_information(list(zip(d.joint_keys, labels)))
    i_fx = brute_mutual_information(list(zip(scores, d.joint_keys)))
    gap = max(abs(i_fy - i_xy), abs(i_fx - i_xy))
    is_lmc = gap <= MI_EQUALITY_TOL

    pos_scores = {s for s, y in zip(scores, labels) if y == 1}
    neg_scores = {s for s, y in zip(scores, labels) if y == -1}
    two_value = (
        len(pos_scores) <= 1
        and len(neg_scores) <= 1
        and (not pos_scores or not neg_scores or pos_scores != neg_scores)
    )

    witness = None
    if two_value:
        mapping = {}
        if pos_scores:
            mapping[next(iter(pos_scores))] = 1.0
        if neg_scores:
            mapping[next(iter(neg_scores))] = -1.0
        relabeled = [mapping[s] for s in scores]
        err = sum(1 for g, y in zip(relabeled, labels) if (1 if g >= 0 else -1) != y) / len(labels)
        margins = [g * y for g, y in zip(relabeled, labels)]
        witness = RelabelingWitness(mapping, err)
        if err != 0.0 or any(m != 1.0 for m in margins):
            raise AssertionError("two-value witness failed to maximize margins")

    ok = is_lmc == two_value
    return CheckReport(
        "theorem1",
        ok,
        (
            {
                "passed": ok,
                "lmc_gap": gap,
                "two_value_witness": two_value,
                "witness": witness,
            },
        ),
    )


# ---------------------------------------------------------------------------
# table 1: one concrete witness per scenario row

# rows are (pos_count, neg_count, score) per joint key
_TABLE1_WITNESSES = {
    ("noiseless", "lossy", "undercompressed"): [
        (1, 0, 0.9), (1, 0, 0.1), (0, 1, 0.1), (0, 1, -0.8),
    ],
    ("noiseless", "lossy", "maximally_compressed"): [
        (1, 0, 0.5), (1, 0, -0.5), (0, 1, 0.5), (0, 1, -0.5),
    ],
    ("noiseless", "lossless", "undercompressed"): [
        (1, 0, 0.9), (1, 0, 0.6), (0, 1, -0.6), (0, 1, -0.9),
    ],
    ("noiseless", "lossless", "maximally_compressed"): [
        (1, 0, 0.8), (1, 0, 0.8), (0, 1, -0.7), (0, 1, -0.7),
    ],
    ("noisy", "lossy", "undercompressed"): [
        (2, 0, 0.7), (1, 1, -0.2), (0, 2, 0.7),
    ],
    # the equality I(X;Y) = H(F) holds exactly here: with cell counts
    # {1,1,1,1,2,1}, key sizes {1,1,1,1,3} and group sizes {1,6},
    # 6 lg 6 + 2 lg 2 = 2 * (3 lg 3) + 4 lg 4 = 8 + 6 lg 3 on both sides
    ("noisy", "lossy", "maximally_compressed"): [
        (0, 1, 0.9), (0, 1, -0.4), (0, 1, -0.4), (1, 0, -0.4), (2, 1, -0.4),
    ],
    ("noisy", "lossless", "undercompressed"): [
        (2, 0, 1.0), (1, 1, 0.0), (0, 2, -1.0),
    ],
    ("noisy", "lossless", "maximally_compressed"): [
        (1, 1, 0.0), (2, 2, 0.0),
    ],
}

TABLE1_SCENARIOS = tuple(_TABLE1_WITNESSES)


def _expand_witness(rows):
    keys, labels, scores = [], [], []
    for key_id, (p, q, s) in enumerate(rows):
        for _ in range(p):
            keys.append(key_id)
            labels.append(1)
            scores.append(s)
        for _ in range(q):
            keys.append(key_id)
            labels.append(-1)
            scores.append(s)
    return keys, labels, scores


def _relation_holds(op: str, a: float, b: float) -> bool:
    if op == "=":
        return abs(a - b) <= MI_EQUALITY_TOL
    if op == "<":
        return b - a >= STRICT_GAP_TOL
    if op == "<=":
        return a <= b + MI_EQUALITY_TOL
    raise ValueError(op)


def check_table1(scenario) -> CheckReport:
    """Build the scenario's witness and assert the full chain of equalities
    and inequalities of its row, with strict gaps of at least 1e-9 bits."""
    scenario = tuple(scenario)
    if scenario not in _TABLE1_WITNESSES:
        raise ValueError(f"unknown scenario {scenario!r}; one of {TABLE1_SCENARIOS}")
    noise, losslessness, compression = scenario
    keys, labels, scores = _expand_witness(_TABLE1_WITNESSES[scenario])

    q = {
        "i_fy": brute_mutual_information(list(zip(scores, labels))),
        "i_xy": brute_mutual_information(list(zip(keys, labels))),
        "i_fx": brute_mutual_information(list(zip(scores, keys))),
        "h_y": brute_entropy(Counter(labels)),
        "h_f": brute_entropy(Counter(scores)),
        "h_x": brute_entropy(Counter(keys)),
    }

    lossless_rel = "=" if losslessness == "lossless" else "<"
    comp_rel = "=" if compression == "maximally_compressed" else "<"
    if noise == "noiseless":
        chain = [
            ("i_fy", lossless_rel, "i_xy"),
            ("i_xy", "=", "h_y"),
            ("h_y", comp_rel, "i_fx"),
            ("i_fx", "=", "h_f"),
            ("h_f", "<=", "h_x"),
        ]
    else:
        chain = [
            ("i_fy", lossless_rel, "i_xy"),
            ("i_xy", "<", "h_y"),
            ("i_xy", comp_rel, "i_fx"),
            ("i_fx", "=", "h_f"),
            ("h_f", "<=", "h_x"),
        ]

    details = []
    for lhs, op, rhs in chain:
        ok = _relation_holds(op, q[lhs], q[rhs])
        details.append({"passed": ok, "relation": f"{lhs} {op} {rhs}", lhs: q[lhs], rhs: q[rhs]})
    return CheckReport(
        f"table1[{noise}/{losslessness}/{compression}]",
        all(det["passed"] for det in details),
        tuple(details),
    )


# ---------------------------------------------------------------------------
# seeded random instance generators

def _make_discretized(bins: np.ndarray, labels: np.ndarray, b: int) -> DiscretizedDataset:
    bins = np.asarray(bins, dtype=np.int64)
    edges = np.tile(np.arange(b + 1, dtype=float), (bins.shape[1], 1))
    return DiscretizedDataset(bins, joint_keys_for_bins(bins, b), labels, b, edges)


def random_datasets(count: int, seed: int, max_n: int = 30, max_d: int = 3, max_b: int = 4):
    """Random small discretized datasets (noisy and noiseless alike)."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        d = int(rng.integers(1, max_d + 1))
        b = int(rng.integers(2, max_b + 1))
        bins = rng.integers(0, b, size=(n, d))
        labels = rng.choice([-1, 1], size=n)
        yield _make_discretized(bins, labels, b)


def _scores_for_keys(rng, keys, style: str, labels_by_key=None):
    distinct = sorted(set(keys), key=repr)
    if style == "perfect":
        return {k: 0.9 if labels_by_key[k] == 1 else -0.8 for k in distinct}
    if style == "injective":
        spread = np.linspace(-1.0, 1.0, num=len(distinct))
        order = rng.permutation(len(distinct))
        return {k: float(spread[order[i]]) for i, k in enumerate(distinct)}
    if style == "coarse":
        menu = (-1.0, -0.5, 0.0, 0.5, 1.0)
        return {k: float(rng.choice(menu)) for k in distinct}
    if style == "constant":
        return {k: 0.25 for k in distinct}
    raise ValueError(style)


def random_noisy_model_pairs(count: int, seed: int, max_n: int = 30, max_d: int = 3, max_b: int = 4):
    """(scores, dataset) pairs over possibly-noisy datasets, mixing lossless
    conditional-probability encoders with arbitrary coarse/constant models."""
    rng = np.random.default_rng(seed)
    for d in random_datasets(count, int(rng.integers(0, 2**31)), max_n, max_d, max_b):
        style = rng.choice(["coarse", "coarse", "constant", "injective", "qencode"])
        if style == "qencode":
            # score = empirical P(Y=1 | key); lossless by construction
            per_key: dict = {}
            for key, y in zip(d.joint_keys, d.labels.tolist()):
                p, t = per_key.get(key, (0, 0))
                per_key[key] = (p + (1 if y == 1 else 0), t + 1)
            score_map = {k: p / t for k, (p, t) in per_key.items()}
        else:
            score_map = _scores_for_keys(rng, d.joint_keys, str(style))
        yield [score_map[k] for k in d.joint_keys], d


def random_noiseless_model_pairs(count: int, seed: int, max_keys: int = 8, max_d: int = 3, max_b: int = 4):
    """(scores, dataset) pairs over noiseless datasets: labels are assigned
    per key, and models cycle through perfect two-value, injective
    (lossless-undercompressed) and lossy coarse/constant styles."""
    rng = np.random.default_rng(seed)
    styles = ["perfect", "injective", "coarse", "constant"]
    made = 0
    while made < count:
        k = int(rng.integers(2, max_keys + 1))
        d_cols = int(rng.integers(1, max_d + 1))
        b = int(rng.integers(2, max_b + 1))
        key_bins = rng.integers(0, b, size=(k, d_cols))
        key_labels = rng.choice([-1, 1], size=k)
        reps = rng.integers(1, 4, size=k)
        bins = np.repeat(key_bins, reps, axis=0)
        labels = np.repeat(key_labels, reps)
        d = _make_discretized(bins, labels, b)
        if not is_noiseless(d):  # distinct key rows may still collide; skip those
            continue
        labels_by_key = dict(zip(d.joint_keys, d.labels.tolist()))
        style = styles[made % len(styles)]
        score_map = _scores_for_keys(rng, d.joint_keys, style, labels_by_key)
        yield [score_map[key] for key in d.joint_keys], d
        made += 1


# ---------------------------------------------------------------------------
# suites

def lemma1_suite(count: int, seed: int) -> CheckReport:
    return check_lemma1(random_datasets(count, seed))


def lemma2_suite(count: int, seed: int) -> CheckReport:
    details = []
    for scores, d in random_noiseless_model_pairs(count, seed):
        lossless, witness = check_lemma2(scores, d)
        ok = (not lossless) or (witness is not None and witness.achieved_error == 0.0)
        details.append({"passed": ok, "lossless": lossless,
                        "witness_error": None if witness is None else witness.achieved_error})
    return CheckReport("lemma2", all(det["passed"] for det in details), tuple(details))


def lemma3_suite(count: int, seed: int) -> CheckReport:
    return merge_reports("lemma3", (check_lemma3(s, d) for s, d in random_noisy_model_pairs(count, seed)))


def theorem1_suite(count: int, seed: int) -> CheckReport:
    return merge_reports("theorem1", (check_theorem1(s, d) for s, d in random_noiseless_model_pairs(count, seed)))


def table1_suite() -> CheckReport:
    return merge_reports("table1", (check_table1(s) for s in TABLE1_SCENARIOS))


def run_all_checks(seed: int, instances: int) -> list[CheckReport]:
    """All lemma/theorem/table suites; instance counts follow the standard
    ratios (theorem 1 runs at 2/5 of the requested count)."""
    return [
        lemma1_suite(instances, seed),
        lemma2_suite(max(1, instances // 5), seed + 1),
        lemma3_suite(instances, seed + 2),
        theorem1_suite(max(1, (2 * instances) // 5), seed + 3),
        table1_suite(),
    ]
