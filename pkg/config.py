"""
Shared configuration loader for ramsey_lab.
All modules should import from here instead of reading config.json themselves.

Lookup order: DEFAULTS, then config.json (or the file named by
RAMSEY_LAB_CONFIG), then environment variables. A .env file is honoured.
"""
import json
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from errors import ConfigError

CONFIG_FILE = Path("config.json")

DEFAULTS = {
    "schema_version": 1,
    "seed": 0,
    "workers": 1,
    "node_budget": 2_000_000,
    "drc_trials": 400,
    "drc_constant": 3.0,
    "sampling_attempts": 50,
    "pipeline_size_factor": 2,
}


def _parse_workers(raw, source: str) -> int:
    try:
        workers = int(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{source} must be an integer, got {raw!r}")
    if workers < 1:
        raise ConfigError(f"{source} must be at least 1, got {workers}")
    return workers


def load_config() -> dict:
    """Load configuration, merging config.json and environment over DEFAULTS"""
    load_dotenv()
    config = dict(DEFAULTS)

    path = Path(os.getenv("RAMSEY_LAB_CONFIG", str(CONFIG_FILE)))
    if path.exists():
        try:
            with open(path, 'r', encoding='utf-8') as f:
                config.update(json.load(f))
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path} is not valid JSON: {e}")

    threads = os.getenv("RAMSEY_LAB_THREADS")
    if threads:
        config["workers"] = _parse_workers(threads, "RAMSEY_LAB_THREADS")
    else:
        config["workers"] = _parse_workers(config["workers"], "workers")
    return config


def get_worker_count(override: Optional[int] = None) -> int:
    """
    Resolve the worker count for a run.

    Args:
        override: Explicit --workers value; wins over config and environment

    Returns:
        Worker count, at least 1
    """
    if override is not None:
        return _parse_workers(override, "--workers")
    return load_config()["workers"]
