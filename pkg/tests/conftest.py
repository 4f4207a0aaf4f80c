import numpy as np
import pytest

from nestlab.config.config import Config
from nestlab.core.algebra.field_spec import FieldSpec


@pytest.fixture
def f2() -> FieldSpec:
    return FieldSpec(2)


@pytest.fixture
def f3() -> FieldSpec:
    return FieldSpec(3)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Every test starts from an unconfigured singleton and a clean environment."""
    for key in ("LOG_LEVEL", "DEBUG", "LOG_TO_FILE", "BASE_DIR", "NESTLAB_SEED", "NESTLAB_OUTPUT"):
        monkeypatch.delenv(key, raising=False)
    Config.reset()
    yield
    Config.reset()


