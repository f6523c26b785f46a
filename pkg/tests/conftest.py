import pytest

from fincat.enumerator import catalog


@pytest.fixture(scope="session")
def fixtures():
    return {f.name: f.category for f in catalog()}


def small_fixtures(max_mor):
    return [f for f in catalog() if len(f.category.arrows) <= max_mor]
