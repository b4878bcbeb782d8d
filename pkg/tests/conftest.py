from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kfgmonoid.topology import from_base  # noqa: E402


@pytest.fixture
def sierpinski():
    return from_base([[0], [0, 1]], 2)


@pytest.fixture
def ge_space():
    # points w, x, y, z are 0..3
    return from_base([[0], [1, 2], [0, 1, 2, 3]], 4)


@pytest.fixture
def kd_space():
    return from_base([[0], [1], [0, 1, 2], [3, 4]], 5)
