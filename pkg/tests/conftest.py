import pathlib

import pytest

PRESET_DIR = pathlib.Path(__file__).resolve().parents[1] / "src" / "qeraser" / "presets"
GOLDEN_DIR = pathlib.Path(__file__).resolve().parent / "golden"
FIXTURE_DIR = pathlib.Path(__file__).resolve().parent / "fixtures"


@pytest.fixture
def preset_dir() -> pathlib.Path:
    return PRESET_DIR


@pytest.fixture
def golden_dir() -> pathlib.Path:
    return GOLDEN_DIR


@pytest.fixture
def fixture_dir() -> pathlib.Path:
    return FIXTURE_DIR
