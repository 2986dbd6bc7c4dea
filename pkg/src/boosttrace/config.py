"""Experiment configuration: headline-protocol defaults, flat key=value
config files, and command-line overrides."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

from .boosting import BoostConfig

__all__ = ["ExperimentConfig", "parse_config_text", "config_from_mapping"]


@dataclass(frozen=True)
class ExperimentConfig:
    """Defaults mirror the headline protocol: T=100 depth-6 trees,
    exponential loss, no shrinkage/subsampling, b=100 bins, 100 runs of
    50/50 splits."""

    dataset: str = "artificial"  # CSV path, or the literal "artificial"
    n: int = 2000
    d: int = 20
    informative: int = 2
    clusters: int = 2
    flip: float = 0.01
    rounds: int = 100
    depth: int = 6
    loss: str = "exponential"
    shrinkage: float = 1.0
    subsample: float = 1.0
    bins: int = 100
    runs: int = 100
    test_fraction: float = 0.5
    seed: int = 0
    lmc_tolerance: float = 0.01
    out: str = "results"
    plot: bool = False

    def boost_config(self) -> BoostConfig:
        return BoostConfig(
            rounds=self.rounds,
            max_depth=self.depth,
            loss=self.loss,
            shrinkage=self.shrinkage,
            subsample=self.subsample,
            seed=self.seed,
        )


_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _coerce(name: str, raw: str):
    kind = _FIELD_TYPES[name]
    if kind == "bool":
        low = raw.strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"{name}: cannot parse boolean from {raw!r}")
    if kind == "int":
        return int(raw)
    if kind == "float":
        return float(raw)
    return raw.strip()


def parse_config_text(text: str) -> dict:
    """Flat key=value lines; # starts a comment; keys match flag names."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _FIELD_TYPES:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        out[key] = _coerce(key, raw.strip())
    return out


def config_from_mapping(base: ExperimentConfig | None = None, **overrides) -> ExperimentConfig:
    """Apply non-None overrides on top of a base config."""
    cfg = base or ExperimentConfig()
    clean = {k: v for k, v in overrides.items() if v is not None}
    return replace(cfg, **clean)
