import pytest

from locm.model import RulesetConfig


@pytest.fixture
def v10():
    return RulesetConfig.for_version("1.0")


@pytest.fixture
def v12():
    return RulesetConfig.for_version("1.2")


@pytest.fixture
def v15():
    return RulesetConfig.for_version("1.5")
