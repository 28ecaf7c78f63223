"""Runtime configuration with documented defaults.

Every tunable in the pipeline lives here: dedup threshold for compression,
lookup threshold for knowledgebase matching, heterogeneity threshold, BM25
parameters, and the candidate pool cut applied before boosting. Values load
from a JSON file given via --config or the VARMINE_CONFIG environment
variable; unknown keys are rejected to catch typos.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields

from .errors import ConfigurationError

CONFIG_ENV_VAR = "VARMINE_CONFIG"


@dataclass(frozen=True)
class Config:
    dedup_threshold: float = 1.0
    lookup_threshold: float = 0.8
    het_threshold: float = 0.8
    bm25_k1: float = 1.2
    bm25_b: float = 0.75
    candidate_pool: int = 100
    blend_lambda: float | None = None

    def __post_init__(self) -> None:
        for name in ("dedup_threshold", "lookup_threshold", "het_threshold"):
            value = getattr(self, name)
            if not 0 < value <= 1:
                raise ConfigurationError(
                    f"{name} must be in (0, 1], got {value}"
                )
        if self.bm25_k1 <= 0:
            raise ConfigurationError(f"bm25_k1 must be > 0, got {self.bm25_k1}")
        if not 0 <= self.bm25_b <= 1:
            raise ConfigurationError(
                f"bm25_b must be in [0, 1], got {self.bm25_b}"
            )
        if self.candidate_pool < 1:
            raise ConfigurationError(
                f"candidate_pool must be positive, got {self.candidate_pool}"
            )
        if self.blend_lambda is not None and not 0 <= self.blend_lambda <= 1:
            raise ConfigurationError(
                f"blend_lambda must be in [0, 1], got {self.blend_lambda}"
            )


def load_config(path: str | None = None) -> Config:
    """Defaults, overlaid with the JSON file at `path` or $VARMINE_CONFIG."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if path is None:
        return Config()
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: invalid JSON: {exc}") from exc
    return config_from_dict(data, source=path)


def config_from_dict(data: dict, source: str = "config") -> Config:
    if not isinstance(data, dict):
        raise ConfigurationError(f"{source}: expected a JSON object")
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise ConfigurationError(
            f"{source}: unknown config keys: {sorted(unknown)} "
            f"(expected a subset of {sorted(known)})"
        )
    return Config(**data)
