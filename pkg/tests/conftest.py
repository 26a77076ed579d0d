import pytest

from twogroups.catalog import shipped_catalog


@pytest.fixture(scope="session")
def cat():
    return shipped_catalog()
