import pytest

from normcat import NormCat


@pytest.fixture(scope="session")
def nc():
    # One set of instances for the whole run
    return NormCat()
