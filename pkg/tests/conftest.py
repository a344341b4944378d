import pytest

from gaelsem import resources as R


@pytest.fixture(scope="session")
def en():
    return R.load_language("en")


@pytest.fixture(scope="session")
def ga():
    return R.load_language("ga")


@pytest.fixture(scope="session")
def concepts_en():
    return R.fixture_concepts("en")


@pytest.fixture(scope="session")
def concepts_ga():
    return R.fixture_concepts("ga")
