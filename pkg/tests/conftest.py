import pytest

from corpus import FIXTURES, GOLDEN


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def golden_dir():
    return GOLDEN
