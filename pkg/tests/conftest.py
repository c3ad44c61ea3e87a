import numpy as np
import pytest

from translator_lab.rank1 import default_config
from translator_lab.spaces import RankOneSpace


@pytest.fixture(scope="session")
def cp2():
    return RankOneSpace.make("cp", 2)


@pytest.fixture(scope="session")
def s2():
    return RankOneSpace.make("sphere", 2)


@pytest.fixture(scope="session")
def s3():
    return RankOneSpace.make("sphere", 3)


@pytest.fixture(scope="session")
def hp1():
    return RankOneSpace.make("hp", 1)


@pytest.fixture(scope="session")
def cfg():
    return default_config()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
