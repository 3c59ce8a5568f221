import random

import pytest
from click.testing import CliRunner
from dotenv import load_dotenv

# Load environment variables from .env.test
load_dotenv(".env.test")

from gslice.core.config import get_settings
from gslice.models.kontsevich import kontsevich_slice
from gslice.ring.coeffs import CoeffRing
from gslice.ring.poly import PolyRing


@pytest.fixture(scope="session")
def zz():
    return CoeffRing.integers()


@pytest.fixture(scope="session")
def qq():
    return CoeffRing.rationals()


@pytest.fixture(scope="session")
def f2():
    return CoeffRing.prime_field(2)


@pytest.fixture
def xyz(qq):
    """Q[x, y, z]"""
    return PolyRing(qq, ("x", "y", "z"))


@pytest.fixture(scope="session")
def kontsevich_q(qq):
    return kontsevich_slice(qq)


@pytest.fixture(scope="session")
def kontsevich_f2(f2):
    return kontsevich_slice(f2)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture(autouse=True)
def fresh_settings():
    """Re-read settings for every test"""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
