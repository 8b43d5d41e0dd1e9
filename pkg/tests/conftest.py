import pytest

from ampletwist import fixtures as fx
from ampletwist.ringkit import PrimeField, Rationals


@pytest.fixture(scope="session")
def F5():
    return PrimeField(5)


@pytest.fixture(scope="session")
def QQ():
    return Rationals()


@pytest.fixture(scope="session")
def corpus():
    return fx
