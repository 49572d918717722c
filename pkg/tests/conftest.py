import pytest

from fano_wci.catalog import load_catalog


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()
