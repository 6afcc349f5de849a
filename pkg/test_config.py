#!/usr/bin/env python3
"""
Test configuration loading: defaults, config.json overrides and the
RAMSEY_LAB_THREADS environment override.
"""

import json
import os
import sys
import tempfile
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from config import DEFAULTS, get_worker_count, load_config
from errors import ConfigError


@contextmanager
def environment(**values):
    """Set (or, with None, unset) environment variables for the block."""
    saved = {key: os.environ.get(key) for key in values}
    try:
        for key, value in values.items():
            if value is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = value
        yield
    finally:
        for key, value in saved.items():
            if value is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = value


@contextmanager
def config_file(text):
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "config.json"
        path.write_text(text, encoding="utf-8")
        with environment(RAMSEY_LAB_CONFIG=str(path), RAMSEY_LAB_THREADS=None):
            yield


def test_defaults():
    with tempfile.TemporaryDirectory() as tmp:
        missing = str(Path(tmp) / "absent.json")
        with environment(RAMSEY_LAB_CONFIG=missing, RAMSEY_LAB_THREADS=None):
            config = load_config()
    assert config == DEFAULTS
    assert set(DEFAULTS) == {"schema_version", "seed", "workers", "node_budget", "drc_trials",
                             "drc_constant", "sampling_attempts", "pipeline_size_factor"}
    print("  ✅ Defaults load unchanged when no config file exists")


def test_config_file_overrides_defaults():
    with config_file(json.dumps({"node_budget": 5000, "workers": 3})):
        config = load_config()
        assert config["node_budget"] == 5000
        assert config["workers"] == 3
        assert config["drc_trials"] == DEFAULTS["drc_trials"]
        assert get_worker_count() == 3


def test_bad_config_file():
    with config_file("{not json"):
        with pytest.raises(ConfigError) as info:
            load_config()
    assert info.value.exit_code == 2
    with config_file(json.dumps({"workers": 0})):
        with pytest.raises(ConfigError):
            load_config()


def test_thread_override():
    with config_file(json.dumps({"workers": 3})):
        with environment(RAMSEY_LAB_THREADS="6"):
            assert load_config()["workers"] == 6
            assert get_worker_count() == 6
            assert get_worker_count(2) == 2
        for bad in ("0", "many"):
            with environment(RAMSEY_LAB_THREADS=bad):
                with pytest.raises(ConfigError):
                    load_config()
        with pytest.raises(ConfigError):
            get_worker_count(0)


def main():
    from suite_runner import run_suite

    return run_suite("CONFIG TEST SUMMARY", [
        test_defaults,
        test_config_file_overrides_defaults,
        test_bad_config_file,
        test_thread_override,
    ])


if __name__ == "__main__":
    sys.exit(main())
