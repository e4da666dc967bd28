import pytest

from src.analysis import InnerProduct
from src.cli.presets import PRESETS
from src.orthogonalize import BuildConfig, build_system
from src.parsers import ConfigParser


def preset_config(name: str, **build_overrides) -> BuildConfig:
    config = ConfigParser.parse_text(PRESETS[name], name)
    if build_overrides:
        config = config.model_copy(update={"build": config.build.model_copy(update=build_overrides)})
    return ConfigParser.to_build_config(config)


def legendre_polynomials(count: int, x):
    """P_0..P_{count-1} at x by the three-term recurrence"""
    values = [1.0, x]
    for n in range(1, count - 1):
        values.append(((2 * n + 1) * x * values[n] - n * values[n - 1]) / (n + 1))
    return values[:count]


@pytest.fixture
def unit_ip():
    return InnerProduct(a=-1.0, b=1.0)


@pytest.fixture(scope="session")
def legendre_system():
    return build_system(preset_config("legendre"))


@pytest.fixture(scope="session")
def legendre4_system():
    return build_system(preset_config("legendre", N=4))


@pytest.fixture(scope="session")
def exp_system():
    return build_system(preset_config("exp-seed"))


@pytest.fixture(scope="session")
def nonconstant_h_system():
    return build_system(preset_config("nonconstant-h"))
