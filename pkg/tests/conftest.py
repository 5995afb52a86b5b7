"""Shared fixtures: the packaged catalog is loaded once per session."""

import pytest

from hyperpi.catalog import catalog_index, load_catalog


@pytest.fixture(scope="session")
def catalog_entries():
    return load_catalog()


@pytest.fixture(scope="session")
def catalog_by_id(catalog_entries):
    return catalog_index(catalog_entries)
