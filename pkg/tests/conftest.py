"""
Pytest configuration and fixtures.
"""

import json

import pytest

from loop_factor.exactnum import gq
from loop_factor.loops import GroupContext
from loop_factor.sampler import LoopSampler


@pytest.fixture
def sampler():
    """A seeded sampler; identical seeds give identical loops."""
    return LoopSampler(seed=11)


@pytest.fixture
def alpha():
    return gq(1, 2)


@pytest.fixture
def beta():
    return gq(-2, 1)


@pytest.fixture
def so3():
    return GroupContext.so(3)


@pytest.fixture
def write_json(tmp_path):
    """Write a document to tmp_path and return its path as a string."""

    def _write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return _write
