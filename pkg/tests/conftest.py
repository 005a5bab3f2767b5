"""Pytest configuration and shared fixtures."""

import json
import tempfile
from pathlib import Path
from typing import Any, Dict

import pytest

from tropfan.config import ConfigManager
from tropfan.core.fanio import FanData
from tropfan.core.zoo import load_example


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def config_manager(temp_dir):
    """A ConfigManager reading a settings file that does not exist yet."""
    return ConfigManager(temp_dir / "config.json")


@pytest.fixture
def write_fan(temp_dir):
    """Write a fan description to a JSON file and return its path."""

    def _write(data: Dict[str, Any], name: str = "fan.json") -> Path:
        path = temp_dir / name
        path.write_text(json.dumps(data, indent=2))
        return path

    return _write


@pytest.fixture
def lambda2() -> FanData:
    """The complete fan of the plane carrying min(0, x) + min(0, y)."""
    return load_example("lambda2")


@pytest.fixture
def cross() -> FanData:
    return load_example("cross")


@pytest.fixture
def cube() -> FanData:
    """Cones over the edges of the cube."""
    return load_example("cube-skeleton")


@pytest.fixture
def tropline() -> FanData:
    return load_example("tropline3")


@pytest.fixture
def line1() -> FanData:
    return load_example("line1")


@pytest.fixture
def unbalanced_cross() -> Dict[str, Any]:
    """The cross with weight 2 on -e2."""
    return {
        "ambient_rank": 2,
        "rays": [[1, 0], [-1, 0], [0, 1], [0, -1]],
        "cones": [[0], [1], [2], [3]],
        "weights": {"0": 1, "1": 1, "2": 1, "3": 2},
    }
