from __future__ import annotations

import pathlib

import pytest

from oit import example_instance

REPO_ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURES = REPO_ROOT / "fixtures"


@pytest.fixture
def ex1():
    return example_instance()


@pytest.fixture
def fixtures_dir():
    return FIXTURES
