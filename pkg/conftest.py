from pathlib import Path

import pytest

from smemsynth.baplus import DEFAULT_TECH, MacroLibrary, default_library, generate_variant

ROOT = Path(__file__).resolve().parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def tech():
    return DEFAULT_TECH


@pytest.fixture(scope="session")
def lib():
    return default_library()


@pytest.fixture(scope="session")
def lib_32x8():
    return MacroLibrary([generate_variant(32, 8)])


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def out_dir(tmp_path) -> Path:
    path = tmp_path / "out"
    path.mkdir()
    return path
