"""Python front end for the ARCO-BO core library.

Configs may be passed as dicts, JSON strings or paths to JSON files.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Mapping, Union

import numpy as np

from . import _core
from ._core import (
    ArcoError,
    ConfigError,
    GpModel,
    baseline_w,
    benchmarks,
    build_w,
    ei,
    evaluate,
    function_range,
    gamma_decay,
    lhs,
    num_agents,
    pearson_similarity,
    reference_optimum,
    set_range_cache_path,
    sinkhorn,
)

__version__ = _core.__version__

ConfigLike = Union[Mapping[str, Any], str, os.PathLike]


def _config_text(config: ConfigLike) -> str:
    if isinstance(config, Mapping):
        return json.dumps(config)
    if isinstance(config, os.PathLike) or (isinstance(config, str) and not config.lstrip().startswith("{")):
        return Path(config).read_text()
    return config


def normalize_config(config: ConfigLike) -> dict:
    """Config with every default filled in."""
    return json.loads(_core.normalize_config(_config_text(config)))


def config_hash(config: ConfigLike) -> str:
    return _core.config_hash(_config_text(config))


def run_replicate(config: ConfigLike, method: str, seed: int) -> dict:
    """One (method, seed) run. best_so_far[k][0] is the initial-design best."""
    out = _core.run_replicate(_config_text(config), method, seed)
    out["best_so_far"] = np.asarray(out["best_so_far"])
    return out


def run_suite(config: ConfigLike, out_dir: Union[str, os.PathLike, None] = None, threads: int = 1) -> list[dict]:
    """Runs every method and seed; writes the CSVs and manifest if out_dir is given."""
    return _core.run_suite(_config_text(config), None if out_dir is None else Path(out_dir), threads)


def recompute_metrics(run_dir: Union[str, os.PathLike]) -> list[dict]:
    return _core.recompute_metrics(Path(run_dir))


__all__ = [
    "ArcoError",
    "ConfigError",
    "GpModel",
    "baseline_w",
    "benchmarks",
    "build_w",
    "config_hash",
    "ei",
    "evaluate",
    "function_range",
    "gamma_decay",
    "lhs",
    "normalize_config",
    "num_agents",
    "pearson_similarity",
    "recompute_metrics",
    "reference_optimum",
    "run_replicate",
    "run_suite",
    "set_range_cache_path",
    "sinkhorn",
]
